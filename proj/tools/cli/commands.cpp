#include "cli/commands.hpp"

#include "cli/csv_input.hpp"
#include "cli/json_output.hpp"
#include "cli/study_file.hpp"

#include "projcov/diagnostics.hpp"
#include "projcov/harness.hpp"
#include "projcov/onesample.hpp"
#include "projcov/special.hpp"
#include "projcov/twosample.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <optional>

namespace projcov::cli {

namespace {

// Flags are checked before any file is read so a bad flag is always exit 2.
class UsageError : public Error {
public:
  using Error::Error;
};

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("DomainError: alpha must lie in (0,1), got " + json(alpha).dump());
}

void check_m(unsigned m) {
  if (m == 0) throw UsageError("DomainError: m must be >= 1");
}

Sidedness sidedness_flag(const std::string& text) {
  try {
    return parse_sidedness(text);
  } catch (const DomainError& e) {
    throw UsageError(std::string("DomainError: ") + e.what());
  }
}

struct TestFlags {
  unsigned m = 100;
  double alpha = 0.05;
  std::string sided;
  std::uint64_t seed = 0;
};

void add_test_flags(CLI::App* cmd, TestFlags& f) {
  cmd->add_option("--m", f.m, "number of random projections")->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "significance level")->capture_default_str();
  cmd->add_option("--sided", f.sided, "upper, lower or two")->capture_default_str();
  cmd->add_option("--seed", f.seed, "projection seed")->capture_default_str();
}

struct CutoffArgs {
  std::vector<unsigned> m;
  std::vector<double> alpha{0.05};
  std::string sided = "upper";
};

int cmd_cutoff(const CutoffArgs& a, std::ostream& out) {
  const Sidedness sided = sidedness_flag(a.sided);
  for (const unsigned m : a.m) check_m(m);
  for (const double alpha : a.alpha) check_alpha(alpha);

  json rows = json::array();
  for (const unsigned m : a.m) {
    for (const double alpha : a.alpha) rows.push_back(cutoff_json(special::max_gauss_cutoff(m, alpha, sided), sided));
  }
  out << (rows.size() == 1 ? rows[0] : rows).dump(2) << '\n';
  return kOk;
}

struct OneSampleArgs {
  TestFlags flags{100, 0.05, "two", 0};
  std::string data;
  std::string sigma0;
  bool center = false;
};

int cmd_one_sample(const OneSampleArgs& a, std::ostream& out) {
  OneSampleConfig cfg;
  cfg.m = a.flags.m;
  cfg.alpha = a.flags.alpha;
  cfg.sided = sidedness_flag(a.flags.sided);
  check_m(cfg.m);
  check_alpha(cfg.alpha);
  cfg.key = {a.flags.seed, {}};
  cfg.center = a.center;

  const DataMatrix data = read_observations(a.data);
  if (!a.sigma0.empty()) {
    linalg::SymMatrix s0 = read_sym_matrix(a.sigma0);
    if (static_cast<Eigen::Index>(s0.dim()) != data.cols()) {
      throw DataError(a.sigma0 + ": sigma0 is " + std::to_string(s0.dim()) + "x" + std::to_string(s0.dim()) +
                      " but the data have " + std::to_string(data.cols()) + " columns");
    }
    cfg.sigma0 = std::move(s0);
  }
  out << one_sample_json(one_sample_test(data, cfg), cfg.center).dump(2) << '\n';
  return kOk;
}

struct TwoSampleArgs {
  TestFlags flags{100, 0.05, "upper", 0};
  std::string x;
  std::string y;
};

int cmd_two_sample(const TwoSampleArgs& a, std::ostream& out) {
  TwoSampleConfig cfg;
  cfg.m = a.flags.m;
  cfg.alpha = a.flags.alpha;
  cfg.sided = sidedness_flag(a.flags.sided);
  check_m(cfg.m);
  check_alpha(cfg.alpha);
  cfg.key = {a.flags.seed, {}};

  const DataMatrix x = read_observations(a.x);
  const DataMatrix y = read_observations(a.y);
  if (x.cols() != y.cols()) {
    throw DataError("column counts differ: " + a.x + " has " + std::to_string(x.cols()) + ", " + a.y + " has " +
                    std::to_string(y.cols()));
  }
  out << two_sample_json(two_sample_test(x, y, cfg)).dump(2) << '\n';
  return kOk;
}

struct SimulateArgs {
  std::string config;
  std::optional<std::size_t> replicates;
  std::string out_prefix;
  std::optional<unsigned> threads;
  bool timing = false;
  bool decisions = false;
  bool json_stdout = false;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw UsageError(path + ": cannot write output");
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  if (a.replicates && *a.replicates == 0) throw UsageError("--replicates must be >= 1");
  if (a.threads && *a.threads == 0) throw UsageError("--threads must be >= 1");
  std::vector<harness::StudySpec> specs;
  try {
    specs = load_study_file(a.config);
  } catch (const ConfigError& e) {
    throw UsageError(a.config + ": " + e.what());
  }
  if (a.replicates) {
    for (auto& s : specs) s.replicates = *a.replicates;
  }

  harness::RunOptions run;
  run.threads = a.threads.value_or(harness::default_threads());
  run.keep_decisions = a.decisions;
  const std::vector<harness::GridRow> rows = harness::run_grid(specs, run);

  const ReportOptions report{a.timing, a.decisions};
  const std::string json_text = simulation_json(rows, specs, report).dump(2) + "\n";
  const std::string table = harness::render_table(rows);
  if (!a.out_prefix.empty()) {
    write_file(a.out_prefix + ".json", json_text);
    write_file(a.out_prefix + ".csv", simulation_csv(rows, specs));
    write_file(a.out_prefix + ".txt", table);
  }
  out << (a.json_stdout ? json_text : table);

  for (const auto& row : rows) {
    if (!row.report) return kStudyError;
  }
  return kOk;
}

struct DiagnoseArgs {
  std::size_t p = 0;
  std::size_t n = 100;
  std::size_t pairs = 100000;
  std::uint64_t seed = 0;
  std::size_t draws = 20000;
};

int cmd_diagnose(const DiagnoseArgs& a, std::ostream& out) {
  if (a.p == 0 || a.n == 0) throw UsageError("--p and --n must be >= 1");
  if (a.pairs < 2 || a.draws < 2) throw UsageError("--pairs and --draws must be >= 2");

  const rng::StreamKey root{a.seed, {}};
  const auto quad = diagnostics::quadratic_form_covariance(a.p, a.pairs, root.child(0));
  const auto stats = diagnostics::statistic_covariances(a.p, a.n, a.pairs, root.child(1));
  const auto patnaik = diagnostics::patnaik_diagnostic(a.p, a.n, a.draws, root.child(2));

  const json j = {{"p", a.p},
                  {"n", a.n},
                  {"pairs", a.pairs},
                  {"seed", a.seed},
                  {"quadratic_form_covariance", covariance_json(quad)},
                  {"standardized_covariance", covariance_json(stats.standardized)},
                  {"transformed_covariance", covariance_json(stats.transformed)},
                  {"patnaik", patnaik_json(patnaik)}};
  out << j.dump(2) << '\n';
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random-projection tests for high-dimensional covariance matrices", "projcov"};
  app.require_subcommand(1);

  CutoffArgs cutoff;
  auto* c = app.add_subcommand("cutoff", "critical values for the max of m standard normals");
  c->add_option("--m", cutoff.m, "projection counts, comma separated")->required()->delimiter(',');
  c->add_option("--alpha", cutoff.alpha, "levels, comma separated")->delimiter(',')->capture_default_str();
  c->add_option("--sided", cutoff.sided, "upper, lower or two")->capture_default_str();

  OneSampleArgs one;
  auto* o = app.add_subcommand("one-sample", "test Sigma = I (or Sigma = sigma0) on a CSV sample");
  o->add_option("data", one.data, "CSV file, one observation per row")->required();
  add_test_flags(o, one.flags);
  o->add_option("--sigma0", one.sigma0, "CSV file holding the null covariance");
  o->add_flag("--center", one.center, "subtract column means (n - 1 degrees of freedom)");

  TwoSampleArgs two;
  auto* t = app.add_subcommand("two-sample", "test Sigma_1 = Sigma_2 on two CSV samples");
  t->add_option("x", two.x, "first sample (numerator)")->required();
  t->add_option("y", two.y, "second sample")->required();
  add_test_flags(t, two.flags);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "run the Monte Carlo studies of a .study file");
  s->add_option("config", sim.config, "study file")->required();
  s->add_option("--replicates", sim.replicates, "override the replicate count of every study");
  s->add_option("--out", sim.out_prefix, "write PREFIX.json, PREFIX.csv and PREFIX.txt");
  s->add_option("--threads", sim.threads, "worker threads (default PROJCOV_THREADS or all cores)");
  s->add_flag("--timing", sim.timing, "add wall-clock seconds to the JSON report");
  s->add_flag("--decisions", sim.decisions, "add per-replicate decisions to the JSON report");
  s->add_flag("--json", sim.json_stdout, "print the JSON report instead of the table");

  DiagnoseArgs diag;
  auto* d = app.add_subcommand("diagnose", "Monte Carlo checks of projection covariances");
  d->add_option("--p", diag.p, "dimension")->required();
  d->add_option("--n", diag.n, "sample size")->capture_default_str();
  d->add_option("--pairs", diag.pairs, "projection pairs")->capture_default_str();
  d->add_option("--seed", diag.seed, "master seed")->capture_default_str();
  d->add_option("--draws", diag.draws, "draws for the half-moment check")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (c->parsed()) return cmd_cutoff(cutoff, out);
    if (o->parsed()) return cmd_one_sample(one, out);
    if (t->parsed()) return cmd_two_sample(two, out);
    if (s->parsed()) return cmd_simulate(sim, out);
    return cmd_diagnose(diag, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return s->parsed() || d->parsed() ? kStudyError : kDataError;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"projcov"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace projcov::cli
