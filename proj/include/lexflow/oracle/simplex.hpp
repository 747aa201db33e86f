#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "lexflow/error.hpp"
#include "lexflow/rational.hpp"

namespace lexflow::oracle {

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Variable {
  std::optional<Rational> lower = Rational(0);  // nullopt: unbounded below
  std::optional<Rational> upper;                // nullopt: unbounded above
};

struct Constraint {
  std::vector<std::pair<std::size_t, Rational>> terms;
  Sense sense = Sense::Equal;
  Rational rhs;
};

/// minimize objective . x subject to constraints and variable bounds.
struct LinearProgram {
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  std::vector<Rational> objective;

  std::size_t add_variable(Variable v = {}, Rational cost = Rational()) {
    variables.push_back(std::move(v));
    objective.push_back(std::move(cost));
    return variables.size() - 1;
  }
  void add_constraint(std::vector<std::pair<std::size_t, Rational>> terms, Sense sense, Rational rhs) {
    constraints.push_back({std::move(terms), sense, std::move(rhs)});
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> point;
};

namespace detail {

// Dense tableau for: min c.y, A y = b (b >= 0), y >= 0. Bland's rule.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs)
      : rows_(std::move(rows)), rhs_(std::move(rhs)) {
    columns_ = rows_.empty() ? 0 : rows_.front().size();
  }

  std::size_t columns() const { return columns_; }

  // Phase one on artificial columns appended after the structural ones.
  bool find_feasible_basis() {
    const std::size_t m = rows_.size();
    const std::size_t structural = columns_;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) rows_[i].push_back(Rational(i == j ? 1 : 0));
      basis_.push_back(structural + i);
    }
    columns_ = structural + m;
    blocked_.assign(columns_, false);
    std::vector<Rational> cost(columns_);
    for (std::size_t j = structural; j < columns_; ++j) cost[j] = 1;
    if (iterate(cost) != LpStatus::Optimal) ::lexflow::detail::fail(ErrorKind::Internal, "phase one unbounded");
    for (std::size_t i = 0; i < m; ++i)
      if (basis_[i] >= structural && !rhs_[i].is_zero()) return false;

    // Pivot remaining (zero-valued) artificials out, dropping redundant rows.
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < structural) {
        ++i;
        continue;
      }
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < structural && !entering; ++j)
        if (!rows_[i][j].is_zero()) entering = j;
      if (entering) {
        pivot(i, *entering);
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    for (std::size_t j = structural; j < columns_; ++j) blocked_[j] = true;
    return true;
  }

  LpStatus optimize(std::vector<Rational> cost) {
    cost.resize(columns_);
    return iterate(cost);
  }

  std::vector<Rational> solution(std::size_t count) const {
    std::vector<Rational> y(count);
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] < count) y[basis_[i]] = rhs_[i];
    return y;
  }

 private:
  LpStatus iterate(const std::vector<Rational>& cost) {
    while (true) {
      // Reduced costs c_j - c_B B^-1 A_j read off the current tableau.
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < columns_ && !entering; ++j) {
        if (blocked_[j]) continue;
        Rational reduced = cost[j];
        for (std::size_t i = 0; i < rows_.size(); ++i)
          if (!rows_[i][j].is_zero()) reduced -= cost[basis_[i]] * rows_[i][j];
        if (reduced.sign() < 0) entering = j;
      }
      if (!entering) return LpStatus::Optimal;

      std::optional<std::size_t> leaving;
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][*entering].sign() <= 0) continue;
        const Rational ratio = rhs_[i] / rows_[i][*entering];
        if (!leaving || ratio < best || (ratio == best && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best = ratio;
        }
      }
      if (!leaving) return LpStatus::Unbounded;
      pivot(*leaving, *entering);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = rows_[r][c].inverse();
    for (Rational& a : rows_[r]) a *= inv;
    rhs_[r] *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][c].is_zero()) continue;
      const Rational factor = rows_[i][c];
      for (std::size_t j = 0; j < columns_; ++j)
        if (!rows_[r][j].is_zero()) rows_[i][j] -= factor * rows_[r][j];
      rhs_[i] -= factor * rhs_[r];
    }
    basis_[r] = c;
  }

  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<bool> blocked_;
  std::size_t columns_ = 0;
};

}  // namespace detail

/// Exact two-phase simplex with Bland's least-index rule.
inline LpResult lp_solve(const LinearProgram& lp) {
  const std::size_t n = lp.variables.size();
  if (lp.objective.size() != n) ::lexflow::detail::fail(ErrorKind::LengthMismatch, "objective size mismatch");

  // Map each variable onto nonnegative columns: x = offset + sign * y_a (- y_b if free).
  struct Mapping {
    Rational offset;
    std::size_t column;
    Rational sign = Rational(1);
    std::optional<std::size_t> negative_column;
  };
  std::vector<Mapping> map(n);
  std::size_t columns = 0;
  std::vector<Constraint> rows = lp.constraints;
  for (std::size_t j = 0; j < n; ++j) {
    const Variable& v = lp.variables[j];
    map[j].column = columns++;
    if (v.lower) {
      map[j].offset = *v.lower;
      if (v.upper) rows.push_back({{{j, Rational(1)}}, Sense::LessEqual, *v.upper});
    } else if (v.upper) {
      map[j].offset = *v.upper;
      map[j].sign = Rational(-1);
    } else {
      map[j].negative_column = columns++;
    }
  }
  const std::size_t slack_begin = columns;
  for (const Constraint& c : rows)
    if (c.sense != Sense::Equal) ++columns;

  std::vector<std::vector<Rational>> a(rows.size(), std::vector<Rational>(columns));
  std::vector<Rational> b(rows.size());
  std::size_t slack = slack_begin;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    b[i] = rows[i].rhs;
    for (const auto& [j, coef] : rows[i].terms) {
      if (j >= n) ::lexflow::detail::fail(ErrorKind::LengthMismatch, "constraint references unknown variable");
      b[i] -= coef * map[j].offset;
      a[i][map[j].column] += coef * map[j].sign;
      if (map[j].negative_column) a[i][*map[j].negative_column] -= coef;
    }
    if (rows[i].sense == Sense::LessEqual) a[i][slack++] = 1;
    if (rows[i].sense == Sense::GreaterEqual) a[i][slack++] = -1;
    if (b[i].sign() < 0) {
      for (Rational& coef : a[i]) coef = -coef;
      b[i] = -b[i];
    }
  }

  std::vector<Rational> cost(columns);
  for (std::size_t j = 0; j < n; ++j) {
    cost[map[j].column] += lp.objective[j] * map[j].sign;
    if (map[j].negative_column) cost[*map[j].negative_column] -= lp.objective[j];
  }

  LpResult result;
  detail::Tableau tableau(std::move(a), std::move(b));
  if (rows.empty()) {
    // Bounds only: optimal at y = 0 unless some column can decrease the cost forever.
    for (const Rational& c : cost)
      if (c.sign() < 0) {
        result.status = LpStatus::Unbounded;
        return result;
      }
  } else {
    if (!tableau.find_feasible_basis()) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    if (tableau.optimize(cost) == LpStatus::Unbounded) {
      result.status = LpStatus::Unbounded;
      return result;
    }
  }
  const std::vector<Rational> y = rows.empty() ? std::vector<Rational>(columns) : tableau.solution(columns);
  result.status = LpStatus::Optimal;
  result.point.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational x = map[j].offset + map[j].sign * y[map[j].column];
    if (map[j].negative_column) x -= y[*map[j].negative_column];
    result.value += lp.objective[j] * x;
    result.point[j] = std::move(x);
  }
  return result;
}

}  // namespace lexflow::oracle
