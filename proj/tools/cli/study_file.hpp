#pragma once

#include "projcov/errors.hpp"
#include "projcov/harness.hpp"

#include <istream>
#include <string>
#include <vector>

namespace projcov::cli {

/// Malformed study file: unknown key, bad value, missing n or p.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Parses a scenario token: null, ma(t1,t2), toeplitz(d,rho) or file:PATH.
/// Relative file paths resolve against base_dir.
datagen::ScenarioKind parse_scenario(const std::string& text, const std::string& base_dir);

/// Study file format. Stanzas are separated by blank lines; each line is
/// `key = value` and `#` starts a comment. Keys:
///
///   name        label for the report (default studyK, K = stanza number)
///   test        one-sample | two-sample (default one-sample)
///   scenario1   null | ma(t1,t2) | toeplitz(d,rho) | file:PATH (default null)
///   scenario2   second population, two-sample only (default null)
///   n           sets n1 and n2
///   n1, n2      per-sample sizes
///   p           dimension
///   m           projections (default 100)
///   alpha       level (default 0.05)
///   sided       upper | lower | two (default two for one-sample, upper for two-sample)
///   replicates  Monte Carlo replicates (default 1000)
///   seed        master seed (default 0)
///
/// n, n1, n2, p, m and alpha accept comma-separated lists; a stanza then
/// expands to the grid of all combinations, in the order n, p, m, alpha.
/// Every expanded study uses master key {seed}, so a grid cell gives the same
/// result as a one-cell stanza with the same values.
std::vector<harness::StudySpec> parse_study_file(std::istream& in, const std::string& base_dir = ".");

/// Opens path and parses it with base_dir set to its directory.
std::vector<harness::StudySpec> load_study_file(const std::string& path);

}  // namespace projcov::cli
