#pragma once

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lexflow/balancer.hpp"
#include "lexflow/gale_hoffman.hpp"
#include "lexflow/io/instance.hpp"
#include "lexflow/io/solution.hpp"
#include "lexflow/oracle/lexmin.hpp"
#include "lexflow/ratio_search.hpp"

namespace lexflow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInfeasibleWeakly = 10;
inline constexpr int kExitWeaklyFeasibleOnly = 11;
inline constexpr int kExitRejected = 12;
inline constexpr int kExitOracleMismatch = 13;

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

namespace detail {

inline std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream file(path, std::ios::binary);
  if (!file) ::lexflow::detail::fail(ErrorKind::Parse, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

inline io::json witness_json(const Problem& p, const Cut& cut) {
  const CutStats stats = cut_stats(p, cut);
  return {{"cut", cut.source_ids(p)},
          {"deficiency", stats.deficiency.to_string()},
          {"capacity", stats.capacity.to_string()}};
}

inline void emit(std::ostream& out, const io::json& doc) { out << doc.dump(2) << '\n'; }

inline int report_fatal(const Problem& p, const Cut& witness, const Streams& s) {
  emit(s.out, {{"verdict", "INFEASIBLE_WEAKLY"}, {"witness", witness_json(p, witness)}});
  s.err << "no weakly feasible flow: fatal cut found\n";
  return kExitInfeasibleWeakly;
}

inline RatioMode parse_mode(const std::string& mode) {
  return mode == "dichotomy" ? RatioMode::Dichotomy : RatioMode::Dinkelbach;
}

}  // namespace detail

inline int cmd_check(const Problem& p, const Streams& s) {
  const FatalCutReport fatal = has_fatal_cut(p);
  if (fatal.fatal) return detail::report_fatal(p, *fatal.witness, s);
  const FeasibilityReport at_one = is_feasible(p, Rational(1));
  if (at_one.feasible()) {
    detail::emit(s.out, {{"verdict", "FEASIBLE"}});
    return kExitOk;
  }
  detail::emit(s.out, {{"verdict", "WEAKLY_FEASIBLE_ONLY"}, {"witness", detail::witness_json(p, *at_one.witness)}});
  return kExitWeaklyFeasibleOnly;
}

inline int cmd_solve(const Problem& p, RatioMode mode, std::optional<unsigned> decimals,
                     const std::optional<std::string>& certificate_path, const Streams& s) {
  const FatalCutReport fatal = has_fatal_cut(p);
  if (fatal.fatal) return detail::report_fatal(p, *fatal.witness, s);
  const BalancedSolution sol = balanced_flow(p, {mode, CutSide::Source});
  if (certificate_path) {
    std::ofstream file(*certificate_path, std::ios::binary);
    if (!file) ::lexflow::detail::fail(ErrorKind::Parse, "cannot write '" + *certificate_path + "'");
    detail::emit(file, io::certificate_to_json(p, sol.certificate));
  }
  detail::emit(s.out, io::solution_to_json(p, sol, decimals));
  return kExitOk;
}

inline int cmd_ratio(const Problem& p, RatioMode mode, const Streams& s) {
  const FatalCutReport fatal = has_fatal_cut(p);
  if (fatal.fatal) return detail::report_fatal(p, *fatal.witness, s);
  const RatioResult r = minmax_ratio(p, mode);
  io::json doc;
  doc["r0"] = r.r0.to_string();
  doc["critical_cut"] = r.critical_cut ? io::json(r.critical_cut->source_ids(p)) : io::json(nullptr);
  doc["iterations"] = r.iterations.size();
  detail::emit(s.out, doc);
  return kExitOk;
}

inline int cmd_verify(const Problem& p, std::string_view solution_text, const Streams& s) {
  const BalancedSolution sol = io::parse_solution(p, solution_text);
  const VerifyResult result = verify_certificate(p, sol);
  if (result.accepted()) {
    detail::emit(s.out, {{"verdict", "ACCEPT"}});
    return kExitOk;
  }
  detail::emit(s.out, {{"verdict", "REJECT"}, {"failed_check", to_string(result.failure)}, {"detail", result.detail}});
  return kExitRejected;
}

inline int cmd_oracle(const Problem& p, const Streams& s) {
  const FatalCutReport fatal = has_fatal_cut(p);
  if (fatal.fatal) return detail::report_fatal(p, *fatal.witness, s);
  if (p.arc_count() > oracle::kLexminSoftArcLimit)
    s.err << "warning: " << p.arc_count() << " arcs exceed the oracle's soft limit of " << oracle::kLexminSoftArcLimit
          << "\n";
  const Flow oracle_flow = oracle::oracle_lexmin(p);
  const BalancedSolution sol = balanced_flow(p);
  io::json flow = io::json::object();
  for (std::size_t e = 0; e < p.arc_count(); ++e) flow[p.arcs()[e].id] = oracle_flow.values[e].to_string();
  const bool matches = oracle_flow == sol.flow;
  detail::emit(s.out, {{"flow", std::move(flow)}, {"matches_solver", matches}});
  return matches ? kExitOk : kExitOracleMismatch;
}

/// Entry point shared by the executable and the tests.
inline int run(const std::vector<std::string>& args, const Streams& s) {
  CLI::App app{"Exact balanced (lexmin) flows for transshipment problems"};
  app.require_subcommand(1);

  std::string instance;
  std::string mode = "dinkelbach";
  std::optional<unsigned> decimals;
  std::optional<std::string> certificate;
  std::string solution;

  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("instance", instance, "Instance file (JSON or line format), '-' for stdin")->required();
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", mode, "Ratio search method")->check(CLI::IsMember({"dinkelbach", "dichotomy"}));
  };

  CLI::App* check = app.add_subcommand("check", "Decide weak solvability and solvability");
  add_instance(check);
  CLI::App* solve = app.add_subcommand("solve", "Compute the balanced flow and its certificate");
  add_instance(solve);
  add_mode(solve);
  solve->add_option("--certificate", certificate, "Also write the certificate to this path");
  solve->add_option("--decimals", decimals, "Append decimal renderings with N places (default 6)")
      ->expected(0, 1)
      ->default_str("6");
  CLI::App* ratio = app.add_subcommand("ratio", "Compute the minmax ratio and a critical cut");
  add_instance(ratio);
  add_mode(ratio);
  CLI::App* verify = app.add_subcommand("verify", "Check a solution document against an instance");
  add_instance(verify);
  verify->add_option("--solution", solution, "Solution document")->required();
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Cross-check with the sequential-LP oracle");
  add_instance(oracle_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, s.out, s.err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Problem p = io::load_problem(detail::read_source(instance, s.in));
    if (check->parsed()) return cmd_check(p, s);
    if (solve->parsed()) return cmd_solve(p, detail::parse_mode(mode), decimals, certificate, s);
    if (ratio->parsed()) return cmd_ratio(p, detail::parse_mode(mode), s);
    if (verify->parsed()) return cmd_verify(p, detail::read_source(solution, s.in), s);
    return cmd_oracle(p, s);
  } catch (const Error& e) {
    s.err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace lexflow::cli
