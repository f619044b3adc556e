#pragma once

#include "cli/commands.hpp"
#include "projcov/datagen.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace projcov::testing_cli {

namespace fs = std::filesystem;

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;

  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

inline CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliResult r;
  r.code = cli::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

/// Per-test scratch directory, removed afterwards.
class ScratchDir : public ::testing::Test {
protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("projcov_cli_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write_text(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
    return path(name);
  }

  std::string write_matrix(const std::string& name, const DataMatrix& m, bool header = false) const {
    std::ofstream f(path(name), std::ios::binary);
    f.precision(17);
    if (header) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) f << (j ? "," : "") << "x" << j;
      f << '\n';
    }
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) f << (j ? "," : "") << m(i, j);
      f << '\n';
    }
    return path(name);
  }

  std::string write_sample(const std::string& name, const datagen::ScenarioKind& kind, std::size_t n, std::size_t p,
                           std::uint64_t seed) const {
    return write_matrix(name, datagen::gen({kind, n, p}, {seed, {}}));
  }

  fs::path dir_;
};

}  // namespace projcov::testing_cli
