#pragma once

#include "lexflow/rational.hpp"
#include "lexflow/model.hpp"
#include "lexflow/maxflow.hpp"
#include "lexflow/gale_hoffman.hpp"
#include "lexflow/ratio_search.hpp"
#include "lexflow/balancer.hpp"
#include "lexflow/oracle/simplex.hpp"
#include "lexflow/oracle/lexmin.hpp"
#include "lexflow/oracle/cuts.hpp"
#include "lexflow/io/instance.hpp"
#include "lexflow/io/solution.hpp"
