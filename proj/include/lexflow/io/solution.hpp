#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexflow/balancer.hpp"
#include "lexflow/io/instance.hpp"

namespace lexflow::io {

enum class SolutionStatus { Feasible, WeaklyFeasibleOnly };

inline std::string_view to_string(SolutionStatus s) {
  return s == SolutionStatus::Feasible ? "feasible" : "weakly_feasible_only";
}

/// Feasible iff the balanced flow respects every capacity.
inline SolutionStatus solution_status(const BalancedSolution& sol) {
  return sol.minmax_ratio() <= Rational(1) ? SolutionStatus::Feasible : SolutionStatus::WeaklyFeasibleOnly;
}

inline json cut_to_json(const Problem& p, const Cut& cut) { return cut.source_ids(p); }

inline json certificate_to_json(const Problem& p, const Certificate& cert) {
  json levels = json::array();
  for (const Level& level : cert.levels) {
    json fixed = json::array();
    for (const FixedArc& f : level.fixed_forward) fixed.push_back({{"arc", f.arc}, {"value", f.value.to_string()}});
    levels.push_back({{"ratio", level.ratio.to_string()},
                      {"cut", cut_to_json(p, level.cut)},
                      {"fixed_forward", std::move(fixed)},
                      {"zeroed_reverse", level.zeroed_reverse}});
  }
  return {{"levels", std::move(levels)}, {"zero_tail", cert.zero_tail}};
}

/// Solution document; arcs in input order, rationals as "p/q". With
/// `decimals`, a presentation-only block of rounded values is appended.
inline json solution_to_json(const Problem& p, const BalancedSolution& sol,
                             std::optional<unsigned> decimals = std::nullopt) {
  json doc;
  doc["status"] = to_string(solution_status(sol));
  doc["r0"] = sol.minmax_ratio().to_string();
  json flow = json::object();
  for (std::size_t e = 0; e < p.arc_count(); ++e) flow[p.arcs()[e].id] = sol.flow.values[e].to_string();
  doc["flow"] = std::move(flow);
  json sorted = json::array();
  for (const Rational& r : sol.sorted_ratio_vector) sorted.push_back(r.to_string());
  doc["sorted_ratios"] = std::move(sorted);
  doc["certificate"] = certificate_to_json(p, sol.certificate);
  if (decimals) {
    json dec;
    dec["places"] = *decimals;
    dec["r0"] = sol.minmax_ratio().to_decimal(*decimals);
    json dflow = json::object();
    for (std::size_t e = 0; e < p.arc_count(); ++e) dflow[p.arcs()[e].id] = sol.flow.values[e].to_decimal(*decimals);
    dec["flow"] = std::move(dflow);
    json dsorted = json::array();
    for (const Rational& r : sol.sorted_ratio_vector) dsorted.push_back(r.to_decimal(*decimals));
    dec["sorted_ratios"] = std::move(dsorted);
    doc["decimal"] = std::move(dec);
  }
  return doc;
}

namespace detail {

inline std::vector<std::string> id_list(const json& value, const std::string& where) {
  if (!value.is_array()) parse_error(where, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < value.size(); ++i) out.push_back(id_at(value[i], where + "/" + std::to_string(i)));
  return out;
}

}  // namespace detail

/// Reads a solution document back against its problem. Structural problems
/// (unknown ids, malformed numbers) raise; semantic ones are left for
/// verify_certificate.
inline BalancedSolution parse_solution(const Problem& p, std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    detail::parse_error("json", e.what());
  }
  BalancedSolution sol;
  const json& flow = detail::member(doc, "flow", "/");
  if (!flow.is_object()) detail::parse_error("/flow", "expected an object");
  std::vector<std::optional<Rational>> values(p.arc_count());
  for (const auto& [id, value] : flow.items()) {
    auto e = p.arc_index(id);
    if (!e) ::lexflow::detail::fail(ErrorKind::KeyMismatch, "/flow: unknown arc '" + id + "'");
    values[*e] = detail::number_at(value, "/flow/" + id);
  }
  for (std::size_t e = 0; e < p.arc_count(); ++e) {
    if (!values[e]) ::lexflow::detail::fail(ErrorKind::KeyMismatch, "/flow: missing arc '" + p.arcs()[e].id + "'");
    sol.flow.values.push_back(*values[e]);
  }

  const json& sorted = detail::member(doc, "sorted_ratios", "/");
  if (!sorted.is_array()) detail::parse_error("/sorted_ratios", "expected an array");
  for (std::size_t i = 0; i < sorted.size(); ++i)
    sol.sorted_ratio_vector.push_back(detail::number_at(sorted[i], "/sorted_ratios/" + std::to_string(i)));

  const json& cert = detail::member(doc, "certificate", "/");
  const json& levels = detail::member(cert, "levels", "/certificate");
  if (!levels.is_array()) detail::parse_error("/certificate/levels", "expected an array");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const std::string at = "/certificate/levels/" + std::to_string(k);
    const json& lv = levels[k];
    Level level;
    level.ratio = detail::number_at(detail::member(lv, "ratio", at), at + "/ratio");
    level.cut = Cut::from_ids(p, detail::id_list(detail::member(lv, "cut", at), at + "/cut"));
    const json& fixed = detail::member(lv, "fixed_forward", at);
    if (!fixed.is_array()) detail::parse_error(at + "/fixed_forward", "expected an array");
    for (std::size_t i = 0; i < fixed.size(); ++i) {
      const std::string fat = at + "/fixed_forward/" + std::to_string(i);
      level.fixed_forward.push_back({detail::id_at(detail::member(fixed[i], "arc", fat), fat + "/arc"),
                                     detail::number_at(detail::member(fixed[i], "value", fat), fat + "/value")});
    }
    level.zeroed_reverse = detail::id_list(detail::member(lv, "zeroed_reverse", at), at + "/zeroed_reverse");
    sol.certificate.levels.push_back(std::move(level));
  }
  sol.certificate.zero_tail = detail::id_list(detail::member(cert, "zero_tail", "/certificate"), "/certificate/zero_tail");
  return sol;
}

}  // namespace lexflow::io
