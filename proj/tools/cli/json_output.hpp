#pragma once

#include "projcov/diagnostics.hpp"
#include "projcov/harness.hpp"
#include "projcov/twosample.hpp"

#include "json.hpp"

#include <span>
#include <string>

namespace projcov::cli {

using nlohmann::json;

json cutoff_json(const CutoffPair& cutoffs, Sidedness sided);

json one_sample_json(const TestOutcome& outcome, bool center);

json two_sample_json(const TwoSampleOutcome& result);

struct ReportOptions {
  bool timing = false;     // include elapsed_seconds (breaks byte-identity)
  bool decisions = false;  // include per-replicate decisions
};

/// {"studies": [...]}; failed rows carry {"name", "error"}.
json simulation_json(std::span<const harness::GridRow> rows, std::span<const harness::StudySpec> specs,
                     const ReportOptions& options);

/// One header line then one line per study; failed rows have an empty rate.
std::string simulation_csv(std::span<const harness::GridRow> rows, std::span<const harness::StudySpec> specs);

json covariance_json(const diagnostics::CovarianceEstimate& est);

json patnaik_json(const diagnostics::PatnaikDiagnostic& d);

}  // namespace projcov::cli
