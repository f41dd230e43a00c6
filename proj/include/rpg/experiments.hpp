#pragma once

#include "rpg/certificate.hpp"
#include "rpg/coloring.hpp"
#include "rpg/delta.hpp"
#include "rpg/graph.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rpg {

enum class ColoringScheme {
  uniform,          // color_uniform
  refinement_chain, // color_refinement_chain with the given r_top
};

/// Everything needed to reproduce one trial.
struct PerturbConfig {
  HostKind host = HostKind::complete;
  int n = 0;
  Delta delta{1, 2};
  std::int64_t m = 0;
  int r = 5;
  std::uint64_t seed = 0;
  ReplacementMode mode = ReplacementMode::weak;
  ColoringScheme coloring = ColoringScheme::uniform;
  int r_top = 0; // refinement_chain only
  SampleOverrides sample;
  bool run_certificate = true;
};

/// The colored instance a config describes; sub-seeds are derived from config.seed.
struct Instance {
  Graph host;
  Graph graph;
  EdgeColoring coloring;
};

auto build_instance(const PerturbConfig & config) -> Instance;

struct TrialResult {
  PerturbConfig config;
  bool rainbow_connected = false;
  bool certificate_succeeded = false;
  int max_witness_length = 0;      // longest certificate path emitted
  std::int64_t certificate_paths = 0;
  bool certificate_sound = true;   // every emitted path verified
  double wall_seconds = 0;
};

auto run_trial(const PerturbConfig & config) -> TrialResult;

struct Interval {
  double low = 0;
  double high = 1;
};

/// Wilson score interval at 95%.
auto wilson_interval(std::int64_t successes, std::int64_t trials) -> Interval;

/// Cartesian product host x n x delta x m x r, r varying fastest.
struct GridSpec {
  std::vector<HostKind> hosts{HostKind::two_cliques};
  std::vector<int> ns;
  std::vector<Delta> deltas;
  std::vector<std::int64_t> ms;
  std::vector<int> rs;
  ReplacementMode mode = ReplacementMode::weak;
  /// Trials with the same index share their seed across all m and r of a
  /// (host, n, delta) group: edge sets are nested in m and colorings are
  /// refinements in r (see color_refinement_chain).
  bool coupled = false;
  SampleOverrides sample;
  bool run_certificate = true;

  auto cell_count() const -> std::size_t;
};

struct SweepRow {
  HostKind host = HostKind::complete;
  int n = 0;
  Delta delta{1, 2};
  std::int64_t m = 0;
  int r = 0;
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double p_hat = 0;
  double ci_low = 0;
  double ci_high = 0;
  double cert_rate = 0;
  std::uint64_t master_seed = 0;

  friend auto operator==(const SweepRow &, const SweepRow &) -> bool = default;
};

struct SweepOutcome {
  std::vector<SweepRow> rows;
  std::vector<std::vector<TrialResult>> trials; // per cell, in trial order
};

/// Config of trial `trial` in grid cell `cell` (grid order).
auto trial_config(const GridSpec & grid, std::size_t cell, int trial, std::uint64_t master_seed) -> PerturbConfig;

/// Runs every cell; output is independent of `threads`.
auto run_sweep(const GridSpec & grid, int trials, std::uint64_t master_seed, int threads) -> SweepOutcome;

auto sweep(const GridSpec & grid, int trials, std::uint64_t master_seed, int threads) -> std::vector<SweepRow>;

inline constexpr const char * csv_header = "host,n,delta,m,r,trials,successes,p_hat,ci_low,ci_high,cert_rate,master_seed";

auto write_csv(std::ostream & out, const std::vector<SweepRow> & rows) -> void;
auto read_csv(std::istream & in) -> std::vector<SweepRow>;
auto emit_csv(const std::filesystem::path & path, const std::vector<SweepRow> & rows) -> void;

/// Standalone matplotlib script plotting p_hat against m, one curve per r.
auto write_plot_script(std::ostream & out, const std::vector<SweepRow> & rows, const std::string & image_name) -> void;
auto emit_plot_script(const std::filesystem::path & path, const std::vector<SweepRow> & rows) -> void;

struct BoundCheck {
  std::string name;
  std::optional<Delta> delta;
  std::string relation; // "<", "<=", ">"
  long double lhs = 0;
  long double rhs = 0;
  bool pass = false;
};

struct AuditReport {
  std::vector<BoundCheck> checks;
  auto all_pass() const -> bool;
};

/// m = ceil(20 / delta^2)
auto threshold_perturbation(Delta delta) -> std::int64_t;

/// Evaluates the closed-form inequalities behind the w.h.p. argument at
/// m = ceil(20/delta^2), k = ceil(6/delta) + 1, plus the delta-free
/// Chernoff and union-bound exponents.
auto bound_audit(const std::vector<Delta> & deltas) -> AuditReport;

auto write_audit(std::ostream & out, const AuditReport & report) -> void;

/// Random small colored graph: n uniform in 3..n_max, r uniform in 1..r_max,
/// edge density uniform in {0.1, ..., 0.9}.
auto random_small_instance(std::uint64_t seed, int n_max, int r_max) -> Instance;

struct OracleComparison {
  int cases = 0;
  int agree = 0;
  int connected = 0;
  std::optional<std::uint64_t> first_mismatch_seed;
};

/// Exact decider against exhaustive enumeration on random small instances.
auto oracle_compare(int cases, int n_max, int r_max, std::uint64_t seed) -> OracleComparison;

/// Declarative sweep description, key = value per line:
///   hosts, n, delta, m, r (comma lists; integer lists accept a..b ranges),
///   mode, coupled, certificate, t, k, trials, master_seed, threads, csv, plot
struct SweepConfig {
  GridSpec grid;
  int trials = 100;
  std::uint64_t master_seed = 1;
  int threads = 1;
  std::optional<std::filesystem::path> csv;
  std::optional<std::filesystem::path> plot;
};

auto parse_sweep_config(std::istream & in) -> SweepConfig;
auto load_sweep_config(const std::filesystem::path & path) -> SweepConfig;

} // namespace rpg
