#include "rpg/experiments.hpp"

#include "rpg/errors.hpp"
#include "rpg/rainbow.hpp"
#include "rpg/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace rpg {

auto build_instance(const PerturbConfig & config) -> Instance {
  auto host = build_host(config.host, config.n, config.delta, derive_seed(config.seed, {1}));
  auto graph = perturb(host, config.m, config.mode, derive_seed(config.seed, {2}));
  auto color_seed = derive_seed(config.seed, {3});
  auto coloring = config.coloring == ColoringScheme::uniform
                      ? color_uniform(graph, config.r, color_seed)
                      : color_refinement_chain(graph, config.r, config.r_top, color_seed);
  return {std::move(host), std::move(graph), std::move(coloring)};
}

auto run_trial(const PerturbConfig & config) -> TrialResult {
  auto start = std::chrono::steady_clock::now();
  auto instance = build_instance(config);

  TrialResult result;
  result.config = config;
  result.rainbow_connected = is_rainbow_connected(instance.graph, instance.coloring).connected;
  if (config.run_certificate) {
    auto cert = certify(instance.graph, instance.coloring, config.delta, derive_seed(config.seed, {4}), config.sample);
    result.certificate_succeeded = cert.success;
    result.max_witness_length = cert.stats.max_path_length;
    result.certificate_paths = static_cast<std::int64_t>(cert.certificate.paths.size());
    result.certificate_sound = certificate_sound(instance.graph, instance.coloring, cert.certificate);
  }
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

auto random_small_instance(std::uint64_t seed, int n_max, int r_max) -> Instance {
  if (n_max < 3 || n_max > oracle_max_vertices || r_max < 1)
    throw ParameterError("random_small_instance needs 3 <= n_max <= " + std::to_string(oracle_max_vertices));
  Rng rng(derive_seed(seed, {0x736d616c6c}));
  int n = 3 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_max - 2)));
  int r = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(r_max)));
  auto density = 1 + rng.below(9);
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.chance(density, 10))
        b.add_edge(u, v);
  auto g = std::move(b).build();
  auto col = color_uniform(g, r, derive_seed(seed, {3}));
  return {g, g, std::move(col)};
}

auto oracle_compare(int cases, int n_max, int r_max, std::uint64_t seed) -> OracleComparison {
  OracleComparison result;
  for (int i = 0; i < cases; ++i) {
    auto case_seed = derive_seed(seed, {0x6f7263, static_cast<std::uint64_t>(i)});
    auto instance = random_small_instance(case_seed, n_max, r_max);
    bool fast = is_rainbow_connected(instance.graph, instance.coloring).connected;
    bool truth = oracle_rainbow_connected(instance.graph, instance.coloring);
    ++result.cases;
    result.connected += truth ? 1 : 0;
    if (fast == truth)
      ++result.agree;
    else if (!result.first_mismatch_seed)
      result.first_mismatch_seed = case_seed;
  }
  return result;
}

auto wilson_interval(std::int64_t successes, std::int64_t trials) -> Interval {
  if (trials <= 0)
    return {0, 1};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (successes == 0)
    ci.low = 0;
  if (successes == trials)
    ci.high = 1;
  ci.low = std::min(ci.low, p);
  ci.high = std::max(ci.high, p);
  return ci;
}

auto GridSpec::cell_count() const -> std::size_t {
  return hosts.size() * ns.size() * deltas.size() * ms.size() * rs.size();
}

namespace {

struct CellCoords {
  std::size_t host, n, delta, m, r;
};

auto coords_of(const GridSpec & grid, std::size_t cell) -> CellCoords {
  CellCoords c{};
  c.r = cell % grid.rs.size();
  cell /= grid.rs.size();
  c.m = cell % grid.ms.size();
  cell /= grid.ms.size();
  c.delta = cell % grid.deltas.size();
  cell /= grid.deltas.size();
  c.n = cell % grid.ns.size();
  c.host = cell / grid.ns.size();
  return c;
}

} // namespace

auto trial_config(const GridSpec & grid, std::size_t cell, int trial, std::uint64_t master_seed) -> PerturbConfig {
  auto c = coords_of(grid, cell);
  PerturbConfig config;
  config.host = grid.hosts[c.host];
  config.n = grid.ns[c.n];
  config.delta = grid.deltas[c.delta];
  config.m = grid.ms[c.m];
  config.r = grid.rs[c.r];
  config.mode = grid.mode;
  config.sample = grid.sample;
  config.run_certificate = grid.run_certificate;
  auto t = static_cast<std::uint64_t>(trial);
  if (grid.coupled) {
    auto group = (c.host * grid.ns.size() + c.n) * grid.deltas.size() + c.delta;
    config.seed = derive_seed(master_seed, {0xc0, group, t});
    config.coloring = ColoringScheme::refinement_chain;
    config.r_top = *std::max_element(grid.rs.begin(), grid.rs.end());
  } else {
    config.seed = derive_seed(master_seed, {cell, t});
  }
  return config;
}

auto run_sweep(const GridSpec & grid, int trials, std::uint64_t master_seed, int threads) -> SweepOutcome {
  const std::size_t cells = grid.cell_count();
  if (cells == 0)
    throw ParameterError("sweep grid is empty");
  if (trials < 1)
    throw ParameterError("need at least one trial per cell");

  SweepOutcome outcome;
  outcome.trials.assign(cells, std::vector<TrialResult>(static_cast<std::size_t>(trials)));
  const std::size_t tasks = cells * static_cast<std::size_t>(trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t task = next++; task < tasks; task = next++) {
      std::size_t cell = task / static_cast<std::size_t>(trials);
      int trial = static_cast<int>(task % static_cast<std::size_t>(trials));
      try {
        outcome.trials[cell][static_cast<std::size_t>(trial)] = run_trial(trial_config(grid, cell, trial, master_seed));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
        next = tasks;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int i = 1; i < std::max(1, threads); ++i)
      pool.emplace_back(worker);
    worker();
  }
  if (failure)
    std::rethrow_exception(failure);

  for (std::size_t cell = 0; cell < cells; ++cell) {
    auto config = trial_config(grid, cell, 0, master_seed);
    SweepRow row;
    row.host = config.host;
    row.n = config.n;
    row.delta = config.delta;
    row.m = config.m;
    row.r = config.r;
    row.trials = trials;
    std::int64_t certified = 0;
    for (const auto & t : outcome.trials[cell]) {
      row.successes += t.rainbow_connected ? 1 : 0;
      certified += t.certificate_succeeded ? 1 : 0;
    }
    row.p_hat = static_cast<double>(row.successes) / static_cast<double>(trials);
    row.cert_rate = static_cast<double>(certified) / static_cast<double>(trials);
    auto ci = wilson_interval(row.successes, trials);
    row.ci_low = ci.low;
    row.ci_high = ci.high;
    row.master_seed = master_seed;
    outcome.rows.push_back(row);
  }
  return outcome;
}

auto sweep(const GridSpec & grid, int trials, std::uint64_t master_seed, int threads) -> std::vector<SweepRow> {
  return run_sweep(grid, trials, master_seed, threads).rows;
}

namespace {

auto format_double(double x) -> std::string {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

auto split(const std::string & text, char sep) -> std::vector<std::string> {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream ss(text);
  while (std::getline(ss, part, sep))
    parts.push_back(part);
  if (!text.empty() && text.back() == sep)
    parts.emplace_back();
  return parts;
}

auto trim(std::string s) -> std::string {
  auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

template <typename T>
auto parse_number(const std::string & token, int line) -> T {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
    throw FormatError(line, "bad number '" + token + "'");
  return value;
}

} // namespace

auto write_csv(std::ostream & out, const std::vector<SweepRow> & rows) -> void {
  out << csv_header << '\n';
  for (const auto & row : rows) {
    out << host_kind_name(row.host) << ',' << row.n << ',' << row.delta.to_string() << ',' << row.m << ',' << row.r
        << ',' << row.trials << ',' << row.successes << ',' << format_double(row.p_hat) << ','
        << format_double(row.ci_low) << ',' << format_double(row.ci_high) << ',' << format_double(row.cert_rate)
        << ',' << row.master_seed << '\n';
  }
}

auto read_csv(std::istream & in) -> std::vector<SweepRow> {
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line) || trim(line) != csv_header)
    throw FormatError(lineno, "missing CSV header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty())
      continue;
    auto f = split(trim(line), ',');
    if (f.size() != 12)
      throw FormatError(lineno, "expected 12 fields");
    SweepRow row;
    try {
      row.host = parse_host_kind(f[0]);
      row.delta = Delta::parse(f[2]);
    } catch (const ParameterError & e) {
      throw FormatError(lineno, e.what());
    }
    row.n = parse_number<int>(f[1], lineno);
    row.m = parse_number<std::int64_t>(f[3], lineno);
    row.r = parse_number<int>(f[4], lineno);
    row.trials = parse_number<std::int64_t>(f[5], lineno);
    row.successes = parse_number<std::int64_t>(f[6], lineno);
    row.p_hat = parse_number<double>(f[7], lineno);
    row.ci_low = parse_number<double>(f[8], lineno);
    row.ci_high = parse_number<double>(f[9], lineno);
    row.cert_rate = parse_number<double>(f[10], lineno);
    row.master_seed = parse_number<std::uint64_t>(f[11], lineno);
    rows.push_back(row);
  }
  return rows;
}

namespace {

auto open_for_write(const std::filesystem::path & path) -> std::ofstream {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

auto finish_write(std::ofstream & out, const std::filesystem::path & path) -> void {
  out.flush();
  if (!out)
    throw std::runtime_error("write to " + path.string() + " failed");
}

} // namespace

auto emit_csv(const std::filesystem::path & path, const std::vector<SweepRow> & rows) -> void {
  if (rows.empty())
    throw ParameterError("no rows to write");
  auto out = open_for_write(path);
  write_csv(out, rows);
  finish_write(out, path);
}

auto write_plot_script(std::ostream & out, const std::vector<SweepRow> & rows, const std::string & image_name)
    -> void {
  out << "#!/usr/bin/env python3\n"
         "# Success probability of rainbow connectivity against the number of added edges.\n"
         "import matplotlib\n"
         "matplotlib.use(\"Agg\")\n"
         "import matplotlib.pyplot as plt\n\n"
         "# host, n, delta, m, r, p_hat, ci_low, ci_high, cert_rate\n"
         "ROWS = [\n";
  for (const auto & row : rows)
    out << "    (\"" << host_kind_name(row.host) << "\", " << row.n << ", \"" << row.delta.to_string() << "\", "
        << row.m << ", " << row.r << ", " << format_double(row.p_hat) << ", " << format_double(row.ci_low) << ", "
        << format_double(row.ci_high) << ", " << format_double(row.cert_rate) << "),\n";
  out << "]\n\n"
         "curves = {}\n"
         "for host, n, delta, m, r, p, lo, hi, cert in ROWS:\n"
         "    curves.setdefault((host, n, delta, r), []).append((m, p, lo, hi))\n\n"
         "fig, ax = plt.subplots(figsize=(7, 4.5))\n"
         "for (host, n, delta, r), pts in sorted(curves.items()):\n"
         "    pts.sort()\n"
         "    ms = [p[0] for p in pts]\n"
         "    ax.errorbar(ms, [p[1] for p in pts],\n"
         "                yerr=[[p[1] - p[2] for p in pts], [p[3] - p[1] for p in pts]],\n"
         "                marker=\"o\", capsize=3, label=f\"{host} n={n} delta={delta} r={r}\")\n"
         "ax.set_xlabel(\"m (random edges added)\")\n"
         "ax.set_ylabel(\"P(rainbow connected)\")\n"
         "ax.set_ylim(-0.02, 1.02)\n"
         "ax.legend(fontsize=\"small\")\n"
         "fig.tight_layout()\n"
         "fig.savefig(\""
      << image_name << "\", dpi=150)\n";
}

auto emit_plot_script(const std::filesystem::path & path, const std::vector<SweepRow> & rows) -> void {
  if (rows.empty())
    throw ParameterError("no rows to plot");
  auto out = open_for_write(path);
  auto image = path;
  image.replace_extension(".png");
  write_plot_script(out, rows, image.filename().string());
  finish_write(out, path);
}

auto threshold_perturbation(Delta delta) -> std::int64_t {
  return ceil_div(20 * delta.den() * delta.den(), delta.num() * delta.num());
}

auto AuditReport::all_pass() const -> bool {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck & c) { return c.pass; });
}

namespace {

// Exact fraction for the delta-free constants.
struct Fraction {
  std::int64_t num;
  std::int64_t den;

  auto operator*(Fraction o) const -> Fraction { return reduce(num * o.num, den * o.den); }
  auto operator>(Fraction o) const -> bool { return num * o.den > o.num * den; }
  auto operator<=(Fraction o) const -> bool { return num * o.den <= o.num * den; }
  auto value() const -> long double { return static_cast<long double>(num) / static_cast<long double>(den); }

  static auto reduce(std::int64_t n, std::int64_t d) -> Fraction {
    auto g = std::gcd(n, d);
    return {n / g, d / g};
  }
};

auto check(std::string name, std::optional<Delta> delta, long double lhs, std::string relation, long double rhs,
           bool pass) -> BoundCheck {
  return {std::move(name), delta, std::move(relation), lhs, rhs, pass};
}

} // namespace

auto bound_audit(const std::vector<Delta> & deltas) -> AuditReport {
  AuditReport report;
  for (const auto & delta : deltas) {
    const long double d = static_cast<long double>(delta.num()) / static_cast<long double>(delta.den());
    const std::int64_t m = threshold_perturbation(delta);
    const std::int64_t k = default_set_size(delta);

    // Goodness of one sampled set.
    const long double power1 = std::pow(1.0L - d * d / 4, static_cast<long double>(m));
    const long double exp1 = std::exp(-d * d * static_cast<long double>(m) / 4);
    report.checks.push_back(check("good_set_power_below_exp", delta, power1, "<", exp1, power1 < exp1));
    // delta^2 m / 4 >= 5 exactly, and e^-5 < 0.01.
    bool exponent_ok = delta.num() * delta.num() * m >= 20 * delta.den() * delta.den();
    report.checks.push_back(
        check("good_set_exp_below_0.01", delta, exp1, "<", 0.01L, exponent_ok && exp1 < 0.01L && std::exp(-5.0L) < 0.01L));

    // Both endpoints of a pair see the set.
    const long double power2 = 2 * std::pow(1.0L - d, static_cast<long double>(k));
    const long double exp2 = 2 * std::exp(-d * static_cast<long double>(k));
    report.checks.push_back(check("index_set_power_le_exp", delta, power2, "<=", exp2, power2 <= exp2));
    report.checks.push_back(check("index_set_exp_below_0.01", delta, exp2, "<", 0.01L, exp2 < 0.01L));
  }

  // P(X <= 0.6t) <= P(X <= 0.61 * 0.99 t)
  Fraction shrunk = Fraction{61, 100} * Fraction{99, 100};
  report.checks.push_back(
      check("chernoff_threshold", std::nullopt, 0.6L, "<=", shrunk.value(), Fraction{6, 10} <= shrunk));
  // 1/2 * 0.39^2 * 0.99 * 100 > 7, giving n^-7.
  Fraction chernoff = Fraction{1, 2} * Fraction{39, 100} * Fraction{39, 100} * Fraction{99, 100} * Fraction{100, 1};
  report.checks.push_back(
      check("chernoff_exponent", std::nullopt, chernoff.value(), ">", 7.0L, chernoff > Fraction{7, 1}));
  // Five distinct colors on a five-edge path: 5!/5^5 = 4!/5^4.
  Fraction path_prob = Fraction{24, 625};
  report.checks.push_back(check("five_path_rainbow_probability", std::nullopt, Fraction{120, 3125}.value(), "=",
                                path_prob.value(),
                                Fraction{120, 3125} <= path_prob && path_prob <= Fraction{120, 3125}));
  // Success probability per index: 0.99 * 4!/5^4 = 0.038016.
  Fraction per_index = Fraction{99, 100} * path_prob;
  report.checks.push_back(
      check("per_index_success", std::nullopt, per_index.value(), ">", 0.035L, per_index > Fraction{35, 1000}));
  // 0.99 * 4!/5^4 * 0.6 * 100 > 2.25, giving n^-2.25 per pair.
  Fraction final_exponent = per_index * Fraction{6, 10} * Fraction{100, 1};
  report.checks.push_back(check("union_bound_exponent", std::nullopt, final_exponent.value(), ">", 2.25L,
                                final_exponent > Fraction{225, 100}));
  return report;
}

auto write_audit(std::ostream & out, const AuditReport & report) -> void {
  for (const auto & c : report.checks) {
    out << "bound " << c.name;
    if (c.delta)
      out << " delta=" << c.delta->to_string();
    std::ostringstream lhs, rhs;
    lhs.precision(10);
    rhs.precision(10);
    lhs << c.lhs;
    rhs << c.rhs;
    out << ' ' << lhs.str() << ' ' << c.relation << ' ' << rhs.str() << ' ' << (c.pass ? "pass" : "FAIL") << '\n';
  }
  out << (report.all_pass() ? "audit pass" : "audit FAIL") << '\n';
}

namespace {

template <typename T>
auto parse_int_list(const std::string & value, int line) -> std::vector<T> {
  std::vector<T> out;
  for (auto item : split(value, ',')) {
    item = trim(item);
    if (auto dots = item.find(".."); dots != std::string::npos) {
      auto lo = parse_number<T>(trim(item.substr(0, dots)), line);
      auto hi = parse_number<T>(trim(item.substr(dots + 2)), line);
      if (hi < lo)
        throw FormatError(line, "empty range '" + item + "'");
      for (T x = lo; x <= hi; ++x)
        out.push_back(x);
    } else {
      out.push_back(parse_number<T>(item, line));
    }
  }
  return out;
}

auto parse_bool(const std::string & value, int line) -> bool {
  if (value == "true" || value == "1" || value == "yes")
    return true;
  if (value == "false" || value == "0" || value == "no")
    return false;
  throw FormatError(line, "expected true/false, got '" + value + "'");
}

} // namespace

auto parse_sweep_config(std::istream & in) -> SweepConfig {
  SweepConfig config;
  config.grid.hosts.clear();
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw FormatError(lineno, "expected key = value");
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    try {
      if (key == "hosts" || key == "host") {
        for (const auto & h : split(value, ','))
          config.grid.hosts.push_back(parse_host_kind(trim(h)));
      } else if (key == "n") {
        config.grid.ns = parse_int_list<int>(value, lineno);
      } else if (key == "delta") {
        for (const auto & d : split(value, ','))
          config.grid.deltas.push_back(Delta::parse(trim(d)));
      } else if (key == "m") {
        config.grid.ms = parse_int_list<std::int64_t>(value, lineno);
      } else if (key == "r") {
        config.grid.rs = parse_int_list<int>(value, lineno);
      } else if (key == "mode") {
        config.grid.mode = parse_replacement_mode(value);
      } else if (key == "coupled") {
        config.grid.coupled = parse_bool(value, lineno);
      } else if (key == "certificate") {
        config.grid.run_certificate = parse_bool(value, lineno);
      } else if (key == "t") {
        config.grid.sample.t = parse_number<int>(value, lineno);
      } else if (key == "k") {
        config.grid.sample.k = parse_number<int>(value, lineno);
      } else if (key == "trials") {
        config.trials = parse_number<int>(value, lineno);
      } else if (key == "master_seed" || key == "seed") {
        config.master_seed = parse_number<std::uint64_t>(value, lineno);
      } else if (key == "threads") {
        config.threads = parse_number<int>(value, lineno);
      } else if (key == "csv") {
        config.csv = value;
      } else if (key == "plot") {
        config.plot = value;
      } else {
        throw FormatError(lineno, "unknown key '" + key + "'");
      }
    } catch (const ParameterError & e) {
      throw FormatError(lineno, e.what());
    }
  }
  if (config.grid.hosts.empty())
    config.grid.hosts.push_back(HostKind::two_cliques);
  if (config.grid.ns.empty() || config.grid.deltas.empty() || config.grid.ms.empty() || config.grid.rs.empty())
    throw FormatError(lineno, "config must set n, delta, m and r");
  if (config.trials < 1)
    throw FormatError(lineno, "trials must be positive");
  return config;
}

auto load_sweep_config(const std::filesystem::path & path) -> SweepConfig {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  return parse_sweep_config(in);
}

} // namespace rpg
