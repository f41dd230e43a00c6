// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "rpg/certificate.hpp"
#include "rpg/experiments.hpp"
#include "rpg/rainbow.hpp"
#include "rpg/rng.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace rpg;

namespace {

// Tolerances and budgets.
constexpr int oracle_cases = 1000;
constexpr double oracle_budget_s = 10;
constexpr double audit_budget_s = 1;
constexpr int good_set_sets = 2000;
constexpr double good_set_max_bad = 0.02;
constexpr double sampling_budget_s = 60;
constexpr int index_set_pairs = 200;
constexpr double index_set_min_fraction = 0.99;
constexpr int probe_trials = 200;
constexpr double probe_min_success = 0.95;
constexpr double probe_budget_s = 300;
constexpr int coupled_chains = 200;
constexpr int max_certificate_edges = 5;

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Certificates and sweep rows gathered from criteria 3-6 for criterion 7.
struct SoundnessLedger {
  std::int64_t certificates = 0;
  std::int64_t unsound = 0;
  std::int64_t too_long = 0;
  std::int64_t cells = 0;
  std::int64_t rate_violations = 0;

  void add_certificate(const Graph & g, const EdgeColoring & col, const CertifyResult & result) {
    ++certificates;
    if (!certificate_sound(g, col, result.certificate))
      ++unsound;
    if (result.stats.max_path_length > max_certificate_edges)
      ++too_long;
  }

  void add_sweep(const SweepOutcome & outcome) {
    for (const auto & cell : outcome.trials)
      for (const auto & trial : cell) {
        if (!trial.config.run_certificate)
          continue;
        ++certificates;
        if (!trial.certificate_sound)
          ++unsound;
        if (trial.max_witness_length > max_certificate_edges)
          ++too_long;
      }
    for (const auto & row : outcome.rows) {
      ++cells;
      if (row.cert_rate > row.p_hat)
        ++rate_violations;
    }
  }
};

SoundnessLedger ledger;

auto fmt(double x) -> std::string {
  std::ostringstream ss;
  ss.precision(4);
  ss << x;
  return ss.str();
}

auto dense_instance() -> Instance {
  PerturbConfig config;
  config.host = HostKind::two_cliques;
  config.n = 400;
  config.delta = Delta(1, 2);
  config.m = 80;
  config.r = 5;
  config.seed = 2024;
  return build_instance(config);
}

auto oracle_equivalence() -> Outcome {
  auto start = std::chrono::steady_clock::now();
  auto result = oracle_compare(oracle_cases, 8, 5, 1);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool pass = result.agree == oracle_cases && secs < oracle_budget_s;
  return {pass, std::to_string(result.agree) + "/" + std::to_string(oracle_cases) + " agree, " +
                    std::to_string(result.connected) + " connected, " + fmt(secs) + "s"};
}

auto bound_audit_check() -> Outcome {
  auto start = std::chrono::steady_clock::now();
  std::vector<Delta> deltas;
  for (int i = 1; i <= 9; ++i)
    deltas.emplace_back(i, 10);
  auto report = bound_audit(deltas);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int failed = 0;
  for (const auto & c : report.checks)
    failed += c.pass ? 0 : 1;
  return {report.all_pass() && secs < audit_budget_s,
          std::to_string(report.checks.size()) + " checks, " + std::to_string(failed) + " failed"};
}

auto good_set_empirical() -> Outcome {
  auto start = std::chrono::steady_clock::now();
  auto inst = dense_instance();
  const Delta delta(1, 2);
  int examined = 0;
  int bad = 0;
  int families = 0;
  double covered = 0;
  for (std::uint64_t seed = 0; examined < good_set_sets; ++seed) {
    auto family = sample_family(inst.graph, delta, derive_seed(77, {seed}));
    ++families;
    covered = static_cast<double>(family.covered.count()) / inst.graph.n();
    for (int i = 0; i < family.t && examined < good_set_sets; ++i, ++examined)
      bad += is_good(inst.graph, family, i).good ? 0 : 1;
    auto result = certify(inst.graph, inst.coloring, delta, derive_seed(78, {seed}));
    ledger.add_certificate(inst.graph, inst.coloring, result);
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double freq = static_cast<double>(bad) / examined;
  return {freq <= good_set_max_bad && secs < sampling_budget_s,
          "bad " + std::to_string(bad) + "/" + std::to_string(examined) + " = " + fmt(freq) + " (limit " +
              fmt(good_set_max_bad) + "), " + std::to_string(families) + " families, |S|/n = " + fmt(covered) + ", " +
              fmt(secs) + "s"};
}

auto index_set_empirical() -> Outcome {
  auto start = std::chrono::steady_clock::now();
  auto inst = dense_instance();
  auto family = sample_family(inst.graph, Delta(1, 2), 91);
  Rng rng(92);
  int large = 0;
  std::size_t smallest = static_cast<std::size_t>(family.t);
  const auto n = static_cast<std::uint64_t>(inst.graph.n());
  for (int i = 0; i < index_set_pairs; ++i) {
    auto u = static_cast<Vertex>(rng.below(n));
    auto v = static_cast<Vertex>(rng.below(n - 1));
    if (v >= u)
      ++v;
    auto size = index_set(inst.graph, family, u, v).size();
    smallest = std::min(smallest, size);
    if (10 * size >= static_cast<std::size_t>(6 * family.t))
      ++large;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double fraction = static_cast<double>(large) / index_set_pairs;
  return {fraction >= index_set_min_fraction && secs < sampling_budget_s,
          std::to_string(large) + "/" + std::to_string(index_set_pairs) + " pairs with |I| >= 0.6t (t=" +
              std::to_string(family.t) + ", min |I| = " + std::to_string(smallest) + "), " + fmt(secs) + "s"};
}

auto threshold_probe() -> Outcome {
  auto start = std::chrono::steady_clock::now();
  GridSpec grid;
  grid.hosts = {HostKind::two_cliques};
  grid.ns = {300};
  grid.deltas = {Delta(1, 2)};
  grid.ms = {0, 80};
  grid.rs = {5};
  auto outcome = run_sweep(grid, probe_trials, 5, 8);
  ledger.add_sweep(outcome);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto & none = outcome.rows[0];
  const auto & some = outcome.rows[1];
  bool pass = none.p_hat == 0.0 && some.p_hat >= probe_min_success && secs < probe_budget_s;
  return {pass, "m=0: " + fmt(none.p_hat) + ", m=80: " + fmt(some.p_hat) + " [" + fmt(some.ci_low) + ", " +
                    fmt(some.ci_high) + "], cert_rate(m=80) = " + fmt(some.cert_rate) + ", " + fmt(secs) + "s"};
}

auto coupled_monotonicity() -> Outcome {
  GridSpec grid;
  grid.hosts = {HostKind::two_cliques};
  grid.ns = {120};
  grid.deltas = {Delta(1, 2)};
  grid.ms = {0, 5, 10, 20, 40, 80, 160};
  grid.rs = {2, 3, 4, 5};
  grid.coupled = true;
  grid.sample = {40, std::nullopt};
  auto outcome = run_sweep(grid, coupled_chains, 6, 8);
  ledger.add_sweep(outcome);
  auto at = [&](std::size_t mi, std::size_t ri, int trial) {
    return outcome.trials[mi * grid.rs.size() + ri][static_cast<std::size_t>(trial)].rainbow_connected;
  };
  int in_m = 0, in_r = 0, flips = 0;
  for (int trial = 0; trial < coupled_chains; ++trial)
    for (std::size_t mi = 0; mi < grid.ms.size(); ++mi)
      for (std::size_t ri = 0; ri < grid.rs.size(); ++ri) {
        bool here = at(mi, ri, trial);
        if (mi + 1 < grid.ms.size()) {
          in_m += here && !at(mi + 1, ri, trial) ? 1 : 0;
          flips += !here && at(mi + 1, ri, trial) ? 1 : 0;
        }
        if (ri + 1 < grid.rs.size())
          in_r += here && !at(mi, ri + 1, trial) ? 1 : 0;
      }
  return {in_m == 0 && in_r == 0, std::to_string(coupled_chains) + " chains, violations in m = " +
                                      std::to_string(in_m) + ", in r = " + std::to_string(in_r) +
                                      ", false->true transitions in m = " + std::to_string(flips)};
}

auto certificate_soundness() -> Outcome {
  bool pass = ledger.unsound == 0 && ledger.too_long == 0 && ledger.rate_violations == 0 && ledger.certificates > 0;
  return {pass, std::to_string(ledger.certificates) + " certificates, unsound = " + std::to_string(ledger.unsound) +
                    ", over 5 edges = " + std::to_string(ledger.too_long) + ", cells with cert_rate > p_hat = " +
                    std::to_string(ledger.rate_violations) + "/" + std::to_string(ledger.cells)};
}

auto determinism() -> Outcome {
  GridSpec grid;
  grid.hosts = {HostKind::two_cliques, HostKind::random_mindeg};
  grid.ns = {80};
  grid.deltas = {Delta(1, 2), Delta(3, 10)};
  grid.ms = {0, 20, 60};
  grid.rs = {3, 5};
  grid.sample = {30, std::nullopt};
  auto render = [&](int threads) {
    std::ostringstream out;
    write_csv(out, sweep(grid, 10, 8, threads));
    return out.str();
  };
  auto one = render(1);
  auto eight = render(8);
  return {one == eight, std::to_string(grid.cell_count()) + " cells, " + std::to_string(one.size()) + " bytes, " +
                            (one == eight ? "identical" : "differ")};
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char * name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", oracle_equivalence},
      {2, "analytic bound audit", bound_audit_check},
      {3, "good-set frequency", good_set_empirical},
      {4, "index-set sizes", index_set_empirical},
      {5, "desk-scale threshold probe", threshold_probe},
      {6, "coupled monotonicity", coupled_monotonicity},
      {7, "certificate soundness", certificate_soundness},
      {8, "thread-count determinism", determinism},
  };
  int failed = 0;
  for (const auto & c : criteria) {
    auto start = std::chrono::steady_clock::now();
    auto outcome = c.run();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d %s: %s (%s) [%.2fs]\n", c.id, outcome.pass ? "PASS" : "FAIL", c.name,
                outcome.detail.c_str(), secs);
    std::fflush(stdout);
    failed += outcome.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
