#pragma once

#include "cli/study_file.hpp"
#include "projcov/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <stdexcept>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace projcov::acceptance {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  std::function<Verdict()> run;
};

/// Runs the selected criteria (all when ids is empty), one PASS/FAIL line each.
/// Returns the process exit status.
inline int run_all(const std::vector<Criterion>& criteria, const std::vector<int>& ids, const char* tag) {
  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) ++failures;
    std::printf("%s %s%-2d %s (%.1fs)\n%s", v.pass ? "PASS" : "FAIL", tag, c.id, c.title.c_str(), secs,
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

inline std::vector<int> parse_ids(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  return ids;
}

inline std::vector<harness::StudySpec> bundled(const std::string& file) {
  return cli::load_study_file((std::filesystem::path(PROJCOV_STUDIES_DIR) / file).string());
}

/// The cell of a bundled grid with the given n (both samples), p and m.
inline harness::StudySpec cell(const std::vector<harness::StudySpec>& grid, std::size_t n, std::size_t p, unsigned m) {
  for (const auto& spec : grid) {
    const auto s = harness::summarize(spec);
    if (s.n1 == n && (s.n2 == 0 || s.n2 == n) && s.p == p && s.m == m) return spec;
  }
  throw std::runtime_error("no grid cell n=" + std::to_string(n) + " p=" + std::to_string(p) + " m=" +
                           std::to_string(m));
}

inline std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

}  // namespace projcov::acceptance
