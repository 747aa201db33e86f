// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lexflow/lexflow.hpp"
#include "support/instances.hpp"

using namespace lexflow;
using lexflow::fixtures::q;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::size_t failures = 0;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
    ++failures;
  }
};

int failed = 0;

void report(int id, const char* title, const Outcome& o, const std::string& summary) {
  std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", id, title,
              o.pass ? summary.c_str() : (o.detail + " (" + std::to_string(o.failures) + " failures)").c_str());
  std::fflush(stdout);
  if (!o.pass) ++failed;
}

void guarded(Outcome& o, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
}

// Random instances until `solvable` of them have no fatal cut.
std::vector<Problem> corpus(std::uint64_t seed, std::size_t solvable) {
  std::mt19937_64 rng(seed);
  std::vector<Problem> out;
  std::size_t found = 0;
  while (found < solvable) {
    out.push_back(fixtures::random_problem(rng));
    found += !oracle::enumerate_cuts(out.back()).has_fatal();
  }
  return out;
}

std::string cut_text(const Problem& p, const Cut& c) {
  std::string s = "{";
  for (const std::string& id : c.source_ids(p)) s += (s.size() > 1 ? "," : "") + id;
  return s + "}";
}

}  // namespace

int main() {
  const std::vector<Problem> instances = corpus(20261015, 500);
  std::vector<oracle::CutEnumeration> brute;
  for (const Problem& p : instances) brute.push_back(oracle::enumerate_cuts(p));

  // Solutions of every weakly solvable corpus instance, shared by later criteria.
  std::vector<std::size_t> solvable;
  std::vector<BalancedSolution> solutions(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (brute[i].has_fatal()) continue;
    solvable.push_back(i);
    solutions[i] = balanced_flow(instances[i]);
  }

  {
    Outcome o;
    std::size_t feasible = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      guarded(o, [&] {
        const bool expected = brute[i].deficient.empty();
        const bool got = is_feasible(instances[i], Rational(1)).feasible();
        feasible += expected;
        if (got != expected) o.fail("instance " + std::to_string(i) + " disagrees");
      });
    }
    report(1, "Gale-Hoffman equivalence", o,
           std::to_string(instances.size()) + " instances, " + std::to_string(feasible) + " feasible, all agree");
  }

  {
    Outcome o;
    std::size_t fatal = 0, fallbacks = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      guarded(o, [&] {
        const Problem& p = instances[i];
        if (brute[i].has_fatal()) {
          ++fatal;
          try {
            minmax_ratio(p);
            o.fail("instance " + std::to_string(i) + ": fatal cut not reported");
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::FatalCutPresent) o.fail("instance " + std::to_string(i) + ": wrong error");
          }
          return;
        }
        for (RatioMode mode : {RatioMode::Dinkelbach, RatioMode::Dichotomy}) {
          const RatioResult r = minmax_ratio(p, mode);
          if (r.r0 != brute[i].max_ratio) o.fail("instance " + std::to_string(i) + ": r0 mismatch");
          fallbacks += r.used_fallback;
        }
        const Rational r0 = brute[i].max_ratio;
        const Rational delta = separation_delta(p);
        if (!is_feasible(p, r0 * (Rational(1) + delta)).feasible() || !is_feasible(p, r0).feasible())
          o.fail("instance " + std::to_string(i) + ": infeasible at or above r0");
        if (r0.sign() > 0 && is_feasible(p, r0 * (Rational(1) - delta)).feasible())
          o.fail("instance " + std::to_string(i) + ": feasible below r0");
      });
    }
    report(2, "Minmax ratio correctness", o,
           std::to_string(instances.size() - fatal) + " solvable instances match brute force in both modes; " +
               std::to_string(fatal) + " fatal instances rejected; threshold flips at r0(1 +- 1/(2 Lambda^2)); " +
               std::to_string(fallbacks) + " Dinkelbach fallbacks");
  }

  std::vector<Problem> lexmin_set;
  {
    Outcome o;
    std::mt19937_64 rng(3);
    fixtures::RandomSpec spec;
    spec.max_arcs = 12;
    while (lexmin_set.size() < 200) lexmin_set.push_back(fixtures::random_weakly_solvable(rng, spec));
    for (std::size_t i = 0; i < lexmin_set.size(); ++i) {
      guarded(o, [&] {
        if (balanced_flow(lexmin_set[i]).flow != oracle::oracle_lexmin(lexmin_set[i]))
          o.fail("instance " + std::to_string(i) + ": flows differ");
      });
    }
    report(3, "Lexmin agreement with sequential-LP oracle", o,
           std::to_string(lexmin_set.size()) + " weakly solvable instances (m <= 12), flows identical");
  }

  {
    Outcome o;
    std::size_t certificates = 0;
    auto check = [&](const Problem& p, const BalancedSolution& sol) {
      ++certificates;
      const auto& levels = sol.certificate.levels;
      for (std::size_t k = 1; k < levels.size(); ++k)
        if (levels[k].ratio > levels[k - 1].ratio) o.fail("ratio increases at level " + std::to_string(k));
      if (levels.size() > p.arc_count()) o.fail("more levels than arcs");
    };
    for (std::size_t i : solvable) check(instances[i], solutions[i]);
    for (const Problem& p : lexmin_set) guarded(o, [&] { check(p, balanced_flow(p, {RatioMode::Dichotomy, CutSide::Sink})); });
    report(4, "Monotonicity of level ratios", o, std::to_string(certificates) + " certificates, no violations");
  }

  {
    Outcome o;
    std::mt19937_64 rng(5);
    for (std::size_t i = 0; i < 100; ++i) {
      guarded(o, [&] {
        const std::size_t index = solvable[i];
        const Problem& p = instances[index];
        const Flow& base = solutions[index].flow;
        const Problem by_nodes = fixtures::permute_nodes(p, fixtures::random_permutation(rng, p.node_count()));
        if (balanced_flow(by_nodes).flow != base) o.fail("node permutation changes instance " + std::to_string(index));
        const Problem by_arcs = fixtures::permute_arcs(p, fixtures::random_permutation(rng, p.arc_count()));
        if (fixtures::rekey(by_arcs, balanced_flow(by_arcs).flow, p) != base)
          o.fail("arc permutation changes instance " + std::to_string(index));
        for (RatioMode mode : {RatioMode::Dinkelbach, RatioMode::Dichotomy})
          if (balanced_flow(p, {mode, CutSide::Sink}).flow != base)
            o.fail("sink-side cuts change instance " + std::to_string(index));
      });
    }
    report(5, "Determinism under symmetry", o, "100 instances, node/arc permutation and sink-side cuts bit-identical");
  }

  {
    Outcome o;
    std::size_t feasible = 0;
    for (std::size_t i : solvable) {
      guarded(o, [&] {
        const Problem& p = instances[i];
        if (!is_feasible(p, Rational(1)).feasible()) return;
        ++feasible;
        for (std::size_t e = 0; e < p.arc_count(); ++e)
          if (solutions[i].flow.values[e] > p.arcs()[e].capacity) o.fail("instance " + std::to_string(i) + " exceeds a capacity");
      });
    }
    if (feasible == 0) o.fail("no feasible instance in the corpus");
    report(6, "Feasible-case containment", o, std::to_string(feasible) + " feasible instances, x <= lambda everywhere");
  }

  {
    Outcome o;
    guarded(o, [&] {
      const Problem p = fixtures::diamond();
      const BalancedSolution sol = balanced_flow(p);
      const RatioResult r = minmax_ratio(p);
      if (sol.flow.values != std::vector<Rational>{q(4, 3), q(8, 3), q(4, 3), q(8, 3)}) o.fail("flow differs");
      if (r.r0 != q(4, 3) || sol.minmax_ratio() != q(4, 3)) o.fail("r0 differs");
      if (!r.critical_cut || *r.critical_cut != Cut::from_ids(p, {"s", "b"})) o.fail("critical cut differs");
      if (sol.sorted_ratio_vector != std::vector<Rational>{q(4, 3), q(4, 3), q(8, 9), q(2, 3)})
        o.fail("sorted ratios differ");
      if (oracle::oracle_lexmin(p) != sol.flow) o.fail("oracle disagrees");
    });
    report(7, "Worked diamond instance", o, "flow (4/3, 8/3, 4/3, 8/3), r0 4/3, cut {s,b}, ratios (4/3, 4/3, 8/9, 2/3)");
  }

  {
    Outcome o;
    std::mt19937_64 rng(8);
    double worst = 0;
    std::size_t most_levels = 0;
    for (int trial = 0; trial < 5; ++trial) {
      guarded(o, [&] {
        const Problem p = fixtures::random_connected(rng, 50, 200, 100);
        const auto start = std::chrono::steady_clock::now();
        const BalancedSolution sol = balanced_flow(p);
        const VerifyResult verdict = verify_certificate(p, sol);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        worst = std::max(worst, seconds);
        most_levels = std::max(most_levels, sol.certificate.levels.size());
        if (!verdict.accepted()) o.fail("verify rejected: " + verdict.detail);
        if (seconds >= 10.0) o.fail("took " + std::to_string(seconds) + " s");
        if (sol.certificate.levels.size() > p.arc_count()) o.fail("more levels than arcs");
      });
    }
    char summary[160];
    std::snprintf(summary, sizeof summary, "5 instances n=50 m=200, worst solve+verify %.2f s, at most %zu levels",
                  worst, most_levels);
    report(8, "Scale", o, summary);
  }

  {
    Outcome o;
    std::map<std::string, std::size_t> mutations;
    auto expect = [&](const Problem& p, const BalancedSolution& sol, std::initializer_list<CheckFailure> labels,
                      const std::string& what) {
      ++mutations[std::string(to_string(*labels.begin()))];
      const CheckFailure got = verify_certificate(p, sol).failure;
      for (CheckFailure label : labels)
        if (got == label) return;
      o.fail(what + " gave '" + std::string(to_string(got)) + "'");
    };

    std::mt19937_64 rng(9);
    std::size_t accepted = 0;
    for (std::size_t i : solvable) {
      guarded(o, [&] {
        const Problem& p = instances[i];
        const BalancedSolution& sol = solutions[i];
        if (!verify_certificate(p, sol).accepted()) o.fail("solver output rejected on instance " + std::to_string(i));
        ++accepted;

        BalancedSolution perturbed = sol;
        perturbed.flow.values[rng() % p.arc_count()] += Rational(1);
        expect(p, perturbed, {CheckFailure::Conservation}, "perturbed flow");

        const auto& levels = sol.certificate.levels;
        if (levels.size() >= 2 && levels.front().ratio != levels.back().ratio) {
          BalancedSolution swapped = sol;
          std::swap(swapped.certificate.levels.front(), swapped.certificate.levels.back());
          expect(p, swapped, {CheckFailure::Monotonicity}, "swapped levels");
        }

        if (!levels.empty()) {
          for (std::size_t c = 0; c < brute[i].cuts.size(); ++c) {
            const auto& [cut, stats] = brute[i].cuts[c];
            if (stats.deficiency.sign() <= 0 || stats.capacity.sign() <= 0) continue;
            if (stats.deficiency / stats.capacity == levels.front().ratio) continue;
            BalancedSolution substituted = sol;
            substituted.certificate.levels.front().cut = cut;
            expect(p, substituted, {CheckFailure::CutRatio, CheckFailure::Minimality},
                   "non-critical cut " + cut_text(p, cut));
            break;
          }
        }

        // Push one unit around a cycle through a zeroed reverse arc, using only
        // arcs fixed at the same or a later level.
        std::vector<std::size_t> level_of(p.arc_count(), levels.size());
        for (std::size_t k = 0; k < levels.size(); ++k) {
          for (const FixedArc& f : levels[k].fixed_forward) level_of[*p.arc_index(f.arc)] = k;
          for (const std::string& id : levels[k].zeroed_reverse) level_of[*p.arc_index(id)] = k;
        }
        for (std::size_t k = 0; k < levels.size(); ++k) {
          if (levels[k].zeroed_reverse.empty()) continue;
          const std::size_t e = *p.arc_index(levels[k].zeroed_reverse.front());
          const Arc& rev = p.arcs()[e];
          std::vector<std::optional<std::size_t>> via(p.node_count());
          std::vector<bool> seen(p.node_count());
          std::deque<std::size_t> queue{rev.head};
          seen[rev.head] = true;
          while (!queue.empty() && !seen[rev.tail]) {
            const std::size_t v = queue.front();
            queue.pop_front();
            for (std::size_t a = 0; a < p.arc_count(); ++a) {
              const Arc& arc = p.arcs()[a];
              if (a == e || arc.tail != v || seen[arc.head] || level_of[a] < k) continue;
              seen[arc.head] = true;
              via[arc.head] = a;
              queue.push_back(arc.head);
            }
          }
          if (!seen[rev.tail]) continue;
          BalancedSolution cycled = sol;
          cycled.flow.values[e] += Rational(1);
          for (std::size_t v = rev.tail; v != rev.head; v = p.arcs()[*via[v]].tail) cycled.flow.values[*via[v]] += Rational(1);
          expect(p, cycled, {CheckFailure::ReverseValue}, "positive reverse arc");
          break;
        }
      });
    }

    guarded(o, [&] {
      const Problem d4 = fixtures::diamond();
      const BalancedSolution sol = balanced_flow(d4);
      BalancedSolution perturbed = sol;
      perturbed.flow.values[0] = q(1);
      expect(d4, perturbed, {CheckFailure::Conservation}, "diamond perturbed flow");
      BalancedSolution swapped = sol;
      std::swap(swapped.certificate.levels[0], swapped.certificate.levels[2]);
      expect(d4, swapped, {CheckFailure::Monotonicity}, "diamond swapped levels");
      BalancedSolution substituted = sol;
      substituted.certificate.levels[0].cut = Cut::from_ids(d4, {"s"});
      expect(d4, substituted, {CheckFailure::CutRatio, CheckFailure::Minimality}, "diamond non-critical cut");

      const Problem pair = fixtures::make_problem({{"u", q(3)}, {"w", q(-3)}},
                                                 {{"uw", "u", "w", q(1)}, {"wu", "w", "u", q(1)}});
      BalancedSolution reverse = balanced_flow(pair);
      reverse.flow.values = {q(4), q(1)};
      expect(pair, reverse, {CheckFailure::ReverseValue}, "two-cycle reverse arc");
    });

    std::string tally;
    for (const auto& [label, count] : mutations) tally += (tally.empty() ? "" : ", ") + label + " " + std::to_string(count);
    report(9, "Certificate soundness", o,
           std::to_string(accepted) + " solver outputs accepted; mutations rejected as expected (" + tally + ")");
  }

  return failed == 0 ? 0 : 1;
}
