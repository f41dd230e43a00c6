#include "rpg/cli.hpp"

#include "rpg/certificate.hpp"
#include "rpg/errors.hpp"
#include "rpg/experiments.hpp"
#include "rpg/graph_io.hpp"
#include "rpg/rainbow.hpp"
#include "rpg/rng.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace rpg {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_fails = 1;
constexpr int exit_usage = 2;

/// Parameter problem attributed to a specific flag.
struct FlagError {
  std::string flag;
  std::string message;
};

template <typename F>
auto for_flag(const std::string & flag, F && f) {
  try {
    return f();
  } catch (const ParameterError & e) {
    throw FlagError{flag, e.what()};
  }
}

auto write_file(const std::string & path, const std::string & contents) -> void {
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw std::runtime_error("cannot open " + path + " for writing");
  file << contents;
  if (!file.flush())
    throw std::runtime_error("write to " + path + " failed");
}

struct GlobalFlags {
  std::uint64_t seed = 1;
  int threads = 1;
  std::string output;
};

struct GenerateFlags {
  std::string host = "two_cliques";
  int n = 0;
  std::string delta;
  std::int64_t m = 0;
  int r = 5;
  std::string mode = "weak";
};

auto run_generate(const GenerateFlags & f, const GlobalFlags & global, std::ostream & out, std::ostream & err)
    -> int {
  auto kind = for_flag("--host", [&] { return parse_host_kind(f.host); });
  auto mode = for_flag("--mode", [&] { return parse_replacement_mode(f.mode); });
  auto delta = for_flag("--delta", [&] { return Delta::parse(f.delta); });
  if (f.n < 3)
    throw FlagError{"--n", "n must be at least 3"};
  if (f.m < 0)
    throw FlagError{"--m", "m must be non-negative"};
  if (f.r < 0 || f.r > max_colors)
    throw FlagError{"--r", "r must lie in 0.." + std::to_string(max_colors) + " (0 = uncolored)"};

  PerturbConfig config;
  config.host = kind;
  config.n = f.n;
  config.delta = delta;
  config.m = f.m;
  config.r = std::max(f.r, 1);
  config.seed = global.seed;
  config.mode = mode;
  auto host = for_flag("--delta", [&] { return build_host(kind, f.n, delta, derive_seed(config.seed, {1})); });
  auto graph = for_flag("--m", [&] { return perturb(host, f.m, mode, derive_seed(config.seed, {2})); });
  std::optional<EdgeColoring> coloring;
  if (f.r > 0)
    coloring = color_uniform(graph, f.r, derive_seed(config.seed, {3}));

  std::ostringstream file;
  file << "# rcg host=" << f.host << " n=" << f.n << " delta=" << delta.to_string() << " m=" << f.m << " r=" << f.r
       << " mode=" << f.mode << " seed=" << global.seed << '\n';
  write_colored_graph(file, graph, coloring ? &*coloring : nullptr);

  std::ostringstream summary;
  summary << "generated n=" << graph.n() << " host_edges=" << host.edge_count() << " edges=" << graph.edge_count()
          << " min_degree=" << min_degree(graph) << " seed=" << global.seed;
  if (global.output.empty()) {
    out << file.str();
    err << summary.str() << '\n';
  } else {
    write_file(global.output, file.str());
    out << summary.str() << " output=" << global.output << '\n';
  }
  return exit_ok;
}

auto load_colored(const std::string & path) -> ColoredGraph {
  auto loaded = load_colored_graph(path);
  if (!loaded.coloring)
    throw FormatError(1, "graph in " + path + " is uncolored (r = 0)");
  return loaded;
}

auto run_check(const std::string & path, bool witnesses, std::ostream & out) -> int {
  auto loaded = load_colored(path);
  auto report = is_rainbow_connected(loaded.graph, *loaded.coloring, witnesses);
  if (report.connected)
    out << "RAINBOW-CONNECTED\n";
  else
    out << "NOT-CONNECTED " << report.failing_pair->first << ' ' << report.failing_pair->second << '\n';
  if (report.witness_paths) {
    for (const auto & [pair, path] : *report.witness_paths) {
      out << "w " << pair.first << ' ' << pair.second << " :";
      for (Vertex v : path)
        out << ' ' << v;
      out << '\n';
    }
  }
  return report.connected ? exit_ok : exit_fails;
}

struct CertifyFlags {
  std::string file;
  std::string delta;
  std::optional<int> t;
  std::optional<int> k;
};

auto run_certify(const CertifyFlags & f, const GlobalFlags & global, std::ostream & out, std::ostream & err) -> int {
  auto delta = for_flag("--delta", [&] { return Delta::parse(f.delta); });
  auto loaded = load_colored(f.file);
  auto result = for_flag("--t/--k", [&] {
    return certify(loaded.graph, *loaded.coloring, delta, global.seed, SampleOverrides{f.t, f.k});
  });
  if (f.k.value_or(default_set_size(delta)) >= loaded.graph.n())
    err << "warning: k >= n; the sampled sets may cover every vertex\n";

  std::ostringstream cert;
  write_certificate(cert, result);
  std::ostringstream summary;
  summary << (result.success ? "CERTIFIED" : "NOT-CERTIFIED") << " pairs=" << result.stats.pairs
          << " failed=" << result.failures.size() << " t=" << result.stats.t << " k=" << result.stats.k
          << " seed=" << global.seed;
  if (global.output.empty()) {
    out << cert.str();
    err << summary.str() << '\n';
  } else {
    write_file(global.output, cert.str());
    out << summary.str() << " output=" << global.output << '\n';
  }
  return result.success ? exit_ok : exit_fails;
}

auto run_sweep_command(const std::string & config_path, const std::string & plot_flag, const GlobalFlags & global,
                       bool seed_given, bool threads_given, std::ostream & out) -> int {
  auto config = load_sweep_config(config_path);
  if (seed_given)
    config.master_seed = global.seed;
  if (threads_given)
    config.threads = global.threads;
  if (!global.output.empty())
    config.csv = global.output;
  if (!plot_flag.empty())
    config.plot = plot_flag;

  auto rows = sweep(config.grid, config.trials, config.master_seed, config.threads);
  if (!config.csv) {
    write_csv(out, rows);
  } else {
    emit_csv(*config.csv, rows);
    out << "sweep cells=" << rows.size() << " trials=" << config.trials << " master_seed=" << config.master_seed
        << " csv=" << config.csv->string() << '\n';
  }
  if (config.plot) {
    emit_plot_script(*config.plot, rows);
    if (config.csv)
      out << "plot " << config.plot->string() << '\n';
  }
  return exit_ok;
}

auto run_audit(const std::string & deltas_text, std::ostream & out) -> int {
  std::vector<Delta> deltas;
  std::istringstream ss(deltas_text);
  for (std::string item; std::getline(ss, item, ',');)
    deltas.push_back(for_flag("--deltas", [&] { return Delta::parse(item); }));
  auto report = bound_audit(deltas);
  write_audit(out, report);
  return report.all_pass() ? exit_ok : exit_fails;
}

auto run_oracle_compare(int n_max, int r_max, int cases, const GlobalFlags & global, std::ostream & out) -> int {
  if (cases < 1)
    throw FlagError{"--cases", "need at least one case"};
  if (r_max < 1 || r_max > max_colors)
    throw FlagError{"--r-max", "r-max must lie in 1.." + std::to_string(max_colors)};
  auto result = for_flag("--n-max", [&] { return oracle_compare(cases, n_max, r_max, global.seed); });
  out << "oracle-compare cases=" << result.cases << " n_max=" << n_max << " r_max=" << r_max
      << " seed=" << global.seed << " connected=" << result.connected << '\n';
  if (result.first_mismatch_seed)
    out << "mismatch case_seed=" << *result.first_mismatch_seed << '\n';
  out << result.agree << '/' << result.cases << " agree\n";
  return result.agree == result.cases ? exit_ok : exit_fails;
}

} // namespace

int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err) {
  CLI::App app{"Randomly perturbed, randomly colored graphs: generation, rainbow connectivity, certificates, sweeps"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags global;
  auto seed_opt = app.add_option("--seed", global.seed, "Seed for every randomized step (echoed in outputs)");
  auto threads_opt = app.add_option("--threads", global.threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--output", global.output, "Output file (stdout when omitted)");

  GenerateFlags gen;
  auto generate = app.add_subcommand("generate", "Build a host, perturb it and color it");
  generate->add_option("--host", gen.host, "complete | two_cliques | blowup | random_mindeg");
  generate->add_option("--n", gen.n, "Vertex count")->required();
  generate->add_option("--delta", gen.delta, "Minimum-degree density, e.g. 0.5")->required();
  generate->add_option("--m", gen.m, "Random edges to add");
  generate->add_option("--r", gen.r, "Number of colors (0 = uncolored)");
  generate->add_option("--mode", gen.mode, "weak | strict");

  std::string check_file;
  bool witnesses = false;
  auto check = app.add_subcommand("check", "Decide rainbow connectivity of a colored graph file");
  check->add_option("file", check_file, "Colored graph file")->required();
  check->add_flag("--witnesses", witnesses, "Print one rainbow path per pair");

  CertifyFlags cert;
  auto certify_cmd = app.add_subcommand("certify", "Run the sampled-set certificate procedure");
  certify_cmd->add_option("file", cert.file, "Colored graph file")->required();
  certify_cmd->add_option("--delta", cert.delta, "Minimum-degree density of the host")->required();
  certify_cmd->add_option("--t", cert.t, "Number of sampled sets (default ceil(100 ln n))");
  certify_cmd->add_option("--k", cert.k, "Set size (default ceil(6/delta) + 1)");

  std::string sweep_config;
  std::string plot_path;
  auto sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep described by a config file");
  sweep_cmd->add_option("config", sweep_config, "key = value sweep description")->required();
  sweep_cmd->add_option("--plot", plot_path, "Write a plotting script here");

  std::string deltas = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
  auto audit = app.add_subcommand("audit", "Evaluate the closed-form probability bounds");
  audit->add_option("--deltas", deltas, "Comma-separated delta values");

  int n_max = 8;
  int r_max = 5;
  int cases = 1000;
  auto oracle = app.add_subcommand("oracle-compare", "Exact decider vs exhaustive path enumeration");
  oracle->add_option("--n-max", n_max, "Largest vertex count (<= 12)");
  oracle->add_option("--r-max", r_max, "Largest color count");
  oracle->add_option("--cases", cases, "Number of random instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    app.exit(e, out, err);
    return exit_ok;
  } catch (const CLI::CallForAllHelp & e) {
    app.exit(e, out, err);
    return exit_ok;
  } catch (const CLI::ParseError & e) {
    app.exit(e, out, err);
    return exit_usage;
  }

  try {
    if (*generate)
      return run_generate(gen, global, out, err);
    if (*check)
      return run_check(check_file, witnesses, out);
    if (*certify_cmd)
      return run_certify(cert, global, out, err);
    if (*sweep_cmd)
      return run_sweep_command(sweep_config, plot_path, global, seed_opt->count() > 0, threads_opt->count() > 0, out);
    if (*audit)
      return run_audit(deltas, out);
    if (*oracle)
      return run_oracle_compare(n_max, r_max, cases, global, out);
  } catch (const FlagError & e) {
    err << "error: " << e.flag << ": " << e.message << '\n';
    return exit_usage;
  } catch (const FormatError & e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception & e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

} // namespace rpg
