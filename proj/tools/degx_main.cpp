#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "degx/tables.hpp"

namespace {

using degx::Json;

std::string join_ranks(const std::vector<std::int64_t>& ranks) {
  std::string s;
  for (size_t i = 0; i < ranks.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(ranks[i]);
  }
  return s;
}

void emit(const std::string& out_path,
          const std::function<void(std::ostream&)>& writer) {
  if (out_path.empty() || out_path == "-") {
    writer(std::cout);
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::invalid_argument("cannot open --out path: " + out_path);
  writer(f);
}

degx::Side parse_side(const std::string& s) {
  if (s == "max") return degx::Side::MaxSide;
  if (s == "min") return degx::Side::MinSide;
  throw std::invalid_argument("--side: expected max|min, got '" + s + "'");
}

degx::SequenceSource parse_source(const std::string& s) {
  if (s == "graph") return degx::SequenceSource::GraphDegrees;
  if (s == "weights") return degx::SequenceSource::WeightsOnly;
  throw std::invalid_argument("--source: expected graph|weights, got '" + s + "'");
}

degx::LoopsPolicy parse_loops(const std::string& s) {
  if (s == "include") return degx::LoopsPolicy::IncludeLoops;
  if (s == "exclude") return degx::LoopsPolicy::ExcludeLoops;
  throw std::invalid_argument("--loops: expected include|exclude, got '" + s + "'");
}

void check_format(const std::string& f) {
  if (f != "csv" && f != "json")
    throw std::invalid_argument("--format: expected csv|json, got '" + f + "'");
}

// flags > config file > built-in defaults
struct ConfigFile {
  Json data = Json::object();

  void load(const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open --config file: " + path);
    in >> data;
    if (!data.is_object())
      throw std::invalid_argument("--config: top-level JSON object required");
  }
  template <typename T>
  void fallback(const CLI::Option* opt, const char* key, T& var) const {
    if (opt != nullptr && opt->count() > 0) return;
    if (data.contains(key)) {
      try {
        var = data.at(key).get<T>();
      } catch (const std::exception&) {
        throw std::invalid_argument(std::string("--config: bad value for '") + key + "'");
      }
    }
  }
};

struct TheoryArgs {
  double a = 1.0, b = 1.0;
  std::int64_t n = 1000;
  std::string side = "max", ranks, format = "csv", out, config;
  CLI::Option *oa{}, *ob{}, *on{}, *oside{}, *oranks{}, *oformat{}, *oout{};
};

struct SimArgs {
  double a = 1.0, b = 1.0;
  std::int64_t n = 1000, trials = 100;
  std::uint64_t seed = 42;
  std::string side = "max", source = "graph", loops = "include";
  std::string ranks, format = "csv", out, config, hist_out, edges_out;
  int threads = 1;
  CLI::Option *oa{}, *ob{}, *on{}, *otrials{}, *oseed{}, *oside{}, *osource{},
      *oloops{}, *oranks{}, *oformat{}, *oout{}, *othreads{}, *ohist{}, *oedges{};
};

struct CompareArgs {
  std::string in, format = "csv", out, config;
  double a = 0.0, b = 0.0;  // 0 = take from the summary file
  std::int64_t n = 0;
  CLI::Option *oa{}, *ob{}, *on{}, *oformat{}, *oout{};
};

struct OracleArgs {
  double a = 1.0, b = 1.0;
  std::int64_t n = 100, j = 1, m = 1;
  std::string format = "csv", out, config;
  CLI::Option *oa{}, *ob{}, *on{}, *oj{}, *om{}, *oformat{}, *oout{};
};

struct FitArgs {
  std::string in, format = "json", out, config;
  double s_max = -1.0;
  bool allow_degenerate = false;
  CLI::Option *osmax{}, *oformat{}, *oout{};
};

int run_theory(const TheoryArgs& args) {
  ConfigFile cfg;
  cfg.load(args.config);
  TheoryArgs a = args;
  cfg.fallback(a.oa, "a", a.a);
  cfg.fallback(a.ob, "b", a.b);
  cfg.fallback(a.on, "n", a.n);
  cfg.fallback(a.oside, "side", a.side);
  cfg.fallback(a.oranks, "ranks", a.ranks);
  cfg.fallback(a.oformat, "format", a.format);
  cfg.fallback(a.oout, "out", a.out);
  check_format(a.format);
  const degx::Side side = parse_side(a.side);
  std::vector<std::int64_t> ranks;
  if (a.ranks.empty()) {
    for (std::int64_t r : degx::default_ranks(a.n))
      if (r <= a.n / 2) ranks.push_back(r);
  } else {
    ranks = degx::parse_ranks(a.ranks, a.n);
  }
  const degx::BetaParams params{a.a, a.b};
  std::vector<degx::TheoryRow> rows;
  for (std::int64_t r : ranks) {
    degx::TheoryRow row;
    row.rank = r;
    row.pred = degx::predict_extreme({r, side}, a.n, params);
    row.beta_decay = (side == degx::Side::MaxSide)
                         ? degx::beta_decay_curve(double(r), a.n, params)
                         : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
  }
  Json config;
  config["command"] = "theory";
  config["a"] = a.a;
  config["b"] = a.b;
  config["n"] = a.n;
  config["side"] = a.side;
  config["ranks"] = join_ranks(ranks);
  config["format"] = a.format;
  config["out"] = a.out.empty() ? "-" : a.out;
  emit(a.out, [&](std::ostream& os) {
    if (a.format == "csv")
      degx::write_theory_csv(os, rows, config);
    else
      os << degx::theory_to_json(rows, config).dump(2) << "\n";
  });
  return 0;
}

int run_simulate(const SimArgs& args) {
  ConfigFile cfg;
  cfg.load(args.config);
  SimArgs a = args;
  cfg.fallback(a.oa, "a", a.a);
  cfg.fallback(a.ob, "b", a.b);
  cfg.fallback(a.on, "n", a.n);
  cfg.fallback(a.otrials, "trials", a.trials);
  cfg.fallback(a.oseed, "seed", a.seed);
  cfg.fallback(a.oside, "side", a.side);
  cfg.fallback(a.osource, "source", a.source);
  cfg.fallback(a.oloops, "loops", a.loops);
  cfg.fallback(a.oranks, "ranks", a.ranks);
  cfg.fallback(a.oformat, "format", a.format);
  cfg.fallback(a.oout, "out", a.out);
  cfg.fallback(a.othreads, "threads", a.threads);
  cfg.fallback(a.ohist, "hist_out", a.hist_out);
  cfg.fallback(a.oedges, "edges_out", a.edges_out);
  check_format(a.format);
  const degx::Side side = parse_side(a.side);
  const degx::SequenceSource source = parse_source(a.source);
  const std::vector<std::int64_t> ranks =
      a.ranks.empty() ? degx::default_ranks(a.n) : degx::parse_ranks(a.ranks, a.n);
  if (a.threads < 1) throw std::invalid_argument("--threads: must be >= 1");
  if (!a.edges_out.empty() && source != degx::SequenceSource::GraphDegrees)
    throw std::invalid_argument("--edges-out requires --source graph");

  degx::GraphConfig gc;
  gc.n = a.n;
  gc.params = {a.a, a.b};
  gc.seed = {a.seed, 0};
  gc.loops_policy = parse_loops(a.loops);

  degx::Histogram hist;
  degx::Histogram* hist_ptr = a.hist_out.empty() ? nullptr : &hist;
  const degx::MCSummary summary =
      degx::run_monte_carlo(gc, a.trials, ranks, side, source, a.threads, hist_ptr);

  Json config;
  config["command"] = "simulate";
  config["a"] = a.a;
  config["b"] = a.b;
  config["n"] = a.n;
  config["trials"] = a.trials;
  config["seed"] = a.seed;
  config["side"] = a.side;
  config["source"] = a.source;
  config["loops"] = a.loops;
  config["ranks"] = join_ranks(ranks);
  config["threads"] = a.threads;
  config["format"] = a.format;
  config["out"] = a.out.empty() ? "-" : a.out;

  emit(a.out, [&](std::ostream& os) {
    if (a.format == "csv")
      degx::write_summary_csv(os, summary, config);
    else
      os << degx::summary_to_json(summary, config).dump(2) << "\n";
  });
  if (hist_ptr)
    emit(a.hist_out, [&](std::ostream& os) { degx::write_histogram_csv(os, hist, config); });
  if (!a.edges_out.empty()) {
    // trial 0 regenerated with edge capture; same stream, same graph
    degx::GraphConfig ec = gc;
    ec.output_mode = degx::OutputMode::EdgeList;
    degx::RandomStream stream = degx::derive_stream({a.seed, 0});
    const degx::GraphSample sample = degx::sample_graph_degrees(ec, stream);
    emit(a.edges_out, [&](std::ostream& os) { degx::write_edge_list(os, sample, ec); });
  }
  return 0;
}

int run_compare(const CompareArgs& args) {
  ConfigFile cfg;
  cfg.load(args.config);
  CompareArgs a = args;
  cfg.fallback(a.oa, "a", a.a);
  cfg.fallback(a.ob, "b", a.b);
  cfg.fallback(a.on, "n", a.n);
  cfg.fallback(a.oformat, "format", a.format);
  cfg.fallback(a.oout, "out", a.out);
  check_format(a.format);
  if (a.in.empty()) throw std::invalid_argument("--in: summary file required");

  auto [summary, file_config] = degx::read_summary_file(a.in);
  (void)file_config;
  if (a.a != 0.0) summary.params.a = a.a;
  if (a.b != 0.0) summary.params.b = a.b;
  if (a.n != 0) summary.n = a.n;

  // predictions stop at n/2; deeper ranks are display-only
  degx::MCSummary head = summary;
  head.ranks.clear();
  std::vector<Eigen::Index> keep;
  for (size_t r = 0; r < summary.ranks.size(); ++r) {
    if (summary.ranks[r] <= summary.n / 2) {
      head.ranks.push_back(summary.ranks[r]);
      keep.push_back(Eigen::Index(r));
    }
  }
  if (head.ranks.size() != summary.ranks.size()) {
    std::cerr << "note: skipped " << summary.ranks.size() - head.ranks.size()
              << " rank(s) beyond n/2 (no asymptotic prediction there)\n";
    const auto K = Eigen::Index(keep.size());
    head.empirical_mean.resize(K);
    head.empirical_var.resize(K);
    head.empirical_stderr.resize(K);
    for (Eigen::Index i = 0; i < K; ++i) {
      head.empirical_mean[i] = summary.empirical_mean[keep[size_t(i)]];
      head.empirical_var[i] = summary.empirical_var[keep[size_t(i)]];
      head.empirical_stderr[i] = summary.empirical_stderr[keep[size_t(i)]];
    }
  }
  const std::vector<degx::ComparisonRow> rows = degx::compare_theory(head);

  Json config;
  config["command"] = "compare";
  config["in"] = a.in;
  config["a"] = head.params.a;
  config["b"] = head.params.b;
  config["n"] = head.n;
  config["trials"] = head.trials;
  config["side"] = degx::to_string(head.side);
  config["source"] = degx::to_string(head.source);
  config["ranks"] = join_ranks(head.ranks);
  config["format"] = a.format;
  config["out"] = a.out.empty() ? "-" : a.out;
  emit(a.out, [&](std::ostream& os) {
    if (a.format == "csv")
      degx::write_comparison_csv(os, rows, config);
    else
      os << degx::comparison_to_json(rows, config).dump(2) << "\n";
  });
  return 0;
}

int run_oracle(const OracleArgs& args) {
  ConfigFile cfg;
  cfg.load(args.config);
  OracleArgs a = args;
  cfg.fallback(a.oa, "a", a.a);
  cfg.fallback(a.ob, "b", a.b);
  cfg.fallback(a.on, "n", a.n);
  cfg.fallback(a.oj, "j", a.j);
  cfg.fallback(a.om, "m", a.m);
  cfg.fallback(a.oformat, "format", a.format);
  cfg.fallback(a.oout, "out", a.out);
  check_format(a.format);
  const double value =
      degx::oracle_order_stat_moment(a.j, a.n, {a.a, a.b}, a.m);
  Json config;
  config["command"] = "oracle";
  config["a"] = a.a;
  config["b"] = a.b;
  config["n"] = a.n;
  config["j"] = a.j;
  config["m"] = a.m;
  config["format"] = a.format;
  config["out"] = a.out.empty() ? "-" : a.out;
  emit(a.out, [&](std::ostream& os) {
    if (a.format == "csv")
      degx::write_scalar_csv(os, "value", value, config);
    else
      os << degx::scalar_to_json("value", value, config).dump(2) << "\n";
  });
  return 0;
}

int run_fit(const FitArgs& args) {
  ConfigFile cfg;
  cfg.load(args.config);
  FitArgs a = args;
  cfg.fallback(a.osmax, "s_max", a.s_max);
  cfg.fallback(a.oformat, "format", a.format);
  cfg.fallback(a.oout, "out", a.out);
  check_format(a.format);
  if (a.in.empty()) throw std::invalid_argument("--in: rank/mean CSV required");
  std::vector<std::int64_t> ranks;
  std::vector<double> means;
  degx::read_rank_mean_csv(a.in, ranks, means);
  const degx::PowerLawFit fit = degx::fit_shifted_power_law(ranks, means, a.s_max);
  if (fit.degenerate && !a.allow_degenerate)
    throw degx::NumericalError(
        "fit: constant data, exponent unidentifiable (pass --allow-degenerate to emit anyway)");
  Json config;
  config["command"] = "fit";
  config["in"] = a.in;
  config["s_max"] = a.s_max;
  config["allow_degenerate"] = a.allow_degenerate;
  config["format"] = a.format;
  config["out"] = a.out.empty() ? "-" : a.out;
  emit(a.out, [&](std::ostream& os) {
    if (a.format == "csv")
      degx::write_fit_csv(os, fit, config);
    else
      os << degx::fit_to_json(fit, config).dump(2) << "\n";
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extreme normalized degrees: order-statistic laws, expected-degree "
               "graph simulation, and shifted power-law fits"};
  app.require_subcommand(1);

  TheoryArgs th;
  auto* theory = app.add_subcommand("theory", "closed-form mean/variance per rank");
  th.oa = theory->add_option("--a", th.a, "Beta shape a");
  th.ob = theory->add_option("--b", th.b, "Beta shape b");
  th.on = theory->add_option("--n", th.n, "node count");
  th.oside = theory->add_option("--side", th.side, "max|min");
  th.oranks = theory->add_option("--ranks", th.ranks, "e.g. 1..100,128,256");
  th.oformat = theory->add_option("--format", th.format, "csv|json");
  th.oout = theory->add_option("--out", th.out, "output path (default stdout)");
  theory->add_option("--config", th.config, "JSON config file (flags win)");

  SimArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo over graphs or weights");
  sim.oa = simulate->add_option("--a", sim.a, "Beta shape a");
  sim.ob = simulate->add_option("--b", sim.b, "Beta shape b");
  sim.on = simulate->add_option("--n", sim.n, "node count");
  sim.otrials = simulate->add_option("--trials", sim.trials, "Monte Carlo trials");
  sim.oseed = simulate->add_option("--seed", sim.seed, "base seed");
  sim.oside = simulate->add_option("--side", sim.side, "max|min");
  sim.osource = simulate->add_option("--source", sim.source, "graph|weights");
  sim.oloops = simulate->add_option("--loops", sim.loops, "include|exclude");
  sim.oranks = simulate->add_option("--ranks", sim.ranks, "e.g. 1..100,128,256");
  sim.oformat = simulate->add_option("--format", sim.format, "csv|json");
  sim.oout = simulate->add_option("--out", sim.out, "output path (default stdout)");
  sim.othreads = simulate->add_option("--threads", sim.threads, "trial-level threads")
                     ->envname("DEGX_THREADS");
  sim.ohist = simulate->add_option("--hist-out", sim.hist_out,
                                   "write a pooled 50-bin histogram CSV here");
  sim.oedges = simulate->add_option("--edges-out", sim.edges_out,
                                    "write trial 0's edge list here (graph source)");
  simulate->add_option("--config", sim.config, "JSON config file (flags win)");

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "join a summary with theory predictions");
  compare->add_option("--in", cmp.in, "summary file from simulate (csv or json)")
      ->required();
  cmp.oa = compare->add_option("--a", cmp.a, "override Beta shape a");
  cmp.ob = compare->add_option("--b", cmp.b, "override Beta shape b");
  cmp.on = compare->add_option("--n", cmp.n, "override node count");
  cmp.oformat = compare->add_option("--format", cmp.format, "csv|json");
  cmp.oout = compare->add_option("--out", cmp.out, "output path (default stdout)");
  compare->add_option("--config", cmp.config, "JSON config file (flags win)");

  OracleArgs ora;
  auto* oracle = app.add_subcommand("oracle", "quadrature moment of the j-th smallest");
  ora.oa = oracle->add_option("--a", ora.a, "Beta shape a");
  ora.ob = oracle->add_option("--b", ora.b, "Beta shape b");
  ora.on = oracle->add_option("--n", ora.n, "sample size (<= 1e5)");
  ora.oj = oracle->add_option("--j", ora.j, "order statistic index, 1 = smallest");
  ora.om = oracle->add_option("--m", ora.m, "moment order");
  ora.oformat = oracle->add_option("--format", ora.format, "csv|json");
  ora.oout = oracle->add_option("--out", ora.out, "output path (default stdout)");
  oracle->add_option("--config", ora.config, "JSON config file (flags win)");

  FitArgs fit;
  auto* fitc = app.add_subcommand("fit", "shifted power law c/(s+k)^gamma, log-space LS");
  fitc->add_option("--in", fit.in, "CSV with rank and mean/empirical_mean columns")
      ->required();
  fit.osmax = fitc->add_option("--s-max", fit.s_max, "shift search bound (default 10*max rank)");
  fitc->add_flag("--allow-degenerate", fit.allow_degenerate,
                 "emit constant-data fits instead of failing");
  fit.oformat = fitc->add_option("--format", fit.format, "csv|json");
  fit.oout = fitc->add_option("--out", fit.out, "output path (default stdout)");
  fitc->add_option("--config", fit.config, "JSON config file (flags win)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(theory)) return run_theory(th);
    if (app.got_subcommand(simulate)) return run_simulate(sim);
    if (app.got_subcommand(compare)) return run_compare(cmp);
    if (app.got_subcommand(oracle)) return run_oracle(ora);
    if (app.got_subcommand(fitc)) return run_fit(fit);
  } catch (const degx::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const degx::RegimeError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
