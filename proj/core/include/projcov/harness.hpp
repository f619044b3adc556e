#pragma once

#include "projcov/datagen.hpp"
#include "projcov/onesample.hpp"
#include "projcov/twosample.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace projcov::harness {

struct OneSampleStudy {
  OneSampleConfig config;  // config.key is replaced per replicate
  datagen::ScenarioSpec scenario;
};

struct TwoSampleStudy {
  TwoSampleConfig config;  // config.key is replaced per replicate
  datagen::ScenarioSpec scenario1;
  datagen::ScenarioSpec scenario2;
};

/// Replicate r draws sample 1 from master_key/[r,0], sample 2 from
/// master_key/[r,1] and its projections from master_key/[r,2].
struct StudySpec {
  std::string name;
  std::variant<OneSampleStudy, TwoSampleStudy> test;
  std::size_t replicates = 1000;
  rng::StreamKey master_key;
};

struct SimulationReport {
  StudySpec spec;
  std::size_t replicates = 0;
  std::size_t rejections = 0;
  double rate = 0.0;
  double mc_standard_error = 0.0;  // sqrt(rate (1 - rate) / replicates)
  std::vector<bool> decisions;     // per replicate, empty unless requested
  double elapsed_seconds = 0.0;    // wall clock; not part of the reproducible payload
};

struct RunOptions {
  unsigned threads = 1;
  bool keep_decisions = false;
};

/// Worker count from PROJCOV_THREADS, else the hardware concurrency (>= 1).
unsigned default_threads();

/// Runs every replicate (concurrently when threads > 1). The report does not
/// depend on the thread count. The first failing replicate (lowest index)
/// aborts the study with a StudyError.
SimulationReport run_study(const StudySpec& spec, const RunOptions& options = {});

struct GridRow {
  std::optional<SimulationReport> report;
  std::string error;  // set when the study failed
};

/// One run_study per spec; a failing row records its error and the rest still run.
std::vector<GridRow> run_grid(std::span<const StudySpec> specs, const RunOptions& options = {});

/// Fixed-width text table, one line per row.
std::string render_table(std::span<const GridRow> rows);

/// Helpers shared by renderers: "one-sample"/"two-sample", scenario text,
/// and the (n, n2, p, m, alpha, sided) echo of a study.
struct StudySummary {
  std::string test;
  std::string scenario1;
  std::string scenario2;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t p = 0;
  unsigned m = 0;
  double alpha = 0.0;
  Sidedness sided = Sidedness::TwoSided;
};
StudySummary summarize(const StudySpec& spec);

}  // namespace projcov::harness
