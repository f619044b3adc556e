#include "cli/json_output.hpp"

#include <sstream>

namespace projcov::cli {

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json study_echo(const harness::StudySpec& spec) {
  const harness::StudySummary s = harness::summarize(spec);
  json j = {{"name", spec.name},
            {"test", s.test},
            {"scenario1", s.scenario1},
            {"n1", s.n1},
            {"p", s.p},
            {"m", s.m},
            {"alpha", s.alpha},
            {"sided", std::string(to_string(s.sided))},
            {"seed", spec.master_key.seed}};
  if (s.test == "two-sample") {
    j["scenario2"] = s.scenario2;
    j["n2"] = s.n2;
  }
  return j;
}

std::string csv_cell(const std::string& text) {
  if (text.find_first_of(",\"") == std::string::npos) return text;
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

json cutoff_json(const CutoffPair& cutoffs, Sidedness sided) {
  return {{"m", cutoffs.m},
          {"alpha", cutoffs.alpha},
          {"sided", std::string(to_string(sided))},
          {"c_max", optional_number(cutoffs.c_max)},
          {"c_min", optional_number(cutoffs.c_min)}};
}

json one_sample_json(const TestOutcome& o, bool center) {
  return {{"test", "one-sample"},
          {"n", o.n},
          {"p", o.p},
          {"m", o.m},
          {"alpha", o.alpha},
          {"sided", std::string(to_string(o.sided))},
          {"seed", o.key.seed},
          {"center", center},
          {"stat_max", o.stat_max},
          {"stat_min", o.stat_min},
          {"cutoff_max", optional_number(o.cutoffs.c_max)},
          {"cutoff_min", optional_number(o.cutoffs.c_min)},
          {"p_value", o.p_value},
          {"reject", o.reject},
          {"per_projection", o.per_projection}};
}

json two_sample_json(const TwoSampleOutcome& result) {
  const TestOutcome& o = result.outcome;
  json projections = json::array();
  for (const FProjection& f : result.projections) {
    projections.push_back({{"s1", f.s1}, {"s2", f.s2}, {"f", f.f}, {"f_star", f.f_star}});
  }
  return {{"test", "two-sample"},
          {"n1", o.n},
          {"n2", o.n2},
          {"p", o.p},
          {"m", o.m},
          {"alpha", o.alpha},
          {"sided", std::string(to_string(o.sided))},
          {"seed", o.key.seed},
          {"stat_max", o.stat_max},
          {"stat_min", o.stat_min},
          {"cutoff_max", optional_number(o.cutoffs.c_max)},
          {"cutoff_min", optional_number(o.cutoffs.c_min)},
          {"p_value", o.p_value},
          {"reject", o.reject},
          {"per_projection", o.per_projection},
          {"projections", projections}};
}

json simulation_json(std::span<const harness::GridRow> rows, std::span<const harness::StudySpec> specs,
                     const ReportOptions& options) {
  json studies = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const harness::GridRow& row = rows[i];
    json j = study_echo(specs[i]);
    if (!row.report) {
      j["error"] = row.error;
      studies.push_back(std::move(j));
      continue;
    }
    const harness::SimulationReport& r = *row.report;
    j["replicates"] = r.replicates;
    j["rejections"] = r.rejections;
    j["rate"] = r.rate;
    j["mc_standard_error"] = r.mc_standard_error;
    if (options.decisions) {
      std::string bits;
      bits.reserve(r.decisions.size());
      for (const bool d : r.decisions) bits += d ? '1' : '0';
      j["decisions"] = bits;
    }
    if (options.timing) j["elapsed_seconds"] = r.elapsed_seconds;
    studies.push_back(std::move(j));
  }
  return {{"studies", studies}};
}

std::string simulation_csv(std::span<const harness::GridRow> rows, std::span<const harness::StudySpec> specs) {
  std::ostringstream os;
  os << "name,test,scenario1,scenario2,n1,n2,p,m,alpha,sided,seed,replicates,rejections,rate,mc_standard_error\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const harness::StudySummary s = harness::summarize(specs[i]);
    os << csv_cell(specs[i].name) << ',' << s.test << ',' << csv_cell(s.scenario1) << ',' << csv_cell(s.scenario2)
       << ',' << s.n1 << ',';
    if (s.n2) os << s.n2;
    // alpha through json so the text matches the JSON report exactly.
    os << ',' << s.p << ',' << s.m << ',' << json(s.alpha).dump() << ',' << to_string(s.sided) << ','
       << specs[i].master_key.seed << ',';
    if (const auto& r = rows[i].report) {
      os << r->replicates << ',' << r->rejections << ',' << json(r->rate).dump() << ','
         << json(r->mc_standard_error).dump();
    } else {
      os << ",,,";
    }
    os << '\n';
  }
  return os.str();
}

json covariance_json(const diagnostics::CovarianceEstimate& est) {
  return {{"estimate", est.estimate},
          {"standard_error", est.standard_error},
          {"target", optional_number(est.target)},
          {"z_score", est.target ? json(est.z_score()) : json(nullptr)},
          {"pairs", est.pairs}};
}

json patnaik_json(const diagnostics::PatnaikDiagnostic& d) {
  return {{"k1", d.k1},
          {"k2", d.k2},
          {"shape", d.shape},
          {"half_moment", d.half_moment},
          {"expansion", d.expansion},
          {"relative_gap", d.relative_gap},
          {"monte_carlo", d.monte_carlo},
          {"monte_carlo_se", d.monte_carlo_se},
          {"draws", d.draws}};
}

}  // namespace projcov::cli
