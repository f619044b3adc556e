#include "projcov/harness.hpp"

#include "projcov/errors.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

namespace projcov::harness {

namespace {

constexpr std::uint64_t kRoleSample1 = 0;
constexpr std::uint64_t kRoleSample2 = 1;
constexpr std::uint64_t kRoleProjections = 2;

// Everything a worker needs, built once per study.
class ReplicateRunner {
public:
  explicit ReplicateRunner(const StudySpec& spec) : spec_(spec) {
    if (const auto* one = std::get_if<OneSampleStudy>(&spec.test)) {
      scenario1_.emplace(one->scenario);
    } else {
      const auto& two = std::get<TwoSampleStudy>(spec.test);
      if (two.scenario1.p != two.scenario2.p) {
        throw DimensionMismatch("two-sample study scenarios have p=" + std::to_string(two.scenario1.p) + " and p=" +
                                std::to_string(two.scenario2.p));
      }
      scenario1_.emplace(two.scenario1);
      scenario2_.emplace(two.scenario2);
    }
  }

  bool operator()(std::uint64_t r) const {
    const rng::StreamKey& master = spec_.master_key;
    if (const auto* one = std::get_if<OneSampleStudy>(&spec_.test)) {
      OneSampleConfig cfg = one->config;
      cfg.key = master.child({r, kRoleProjections});
      const DataMatrix x = scenario1_->sample(master.child({r, kRoleSample1}));
      return one_sample_test(x, cfg).reject;
    }
    const auto& two = std::get<TwoSampleStudy>(spec_.test);
    TwoSampleConfig cfg = two.config;
    cfg.key = master.child({r, kRoleProjections});
    const DataMatrix x = scenario1_->sample(master.child({r, kRoleSample1}));
    const DataMatrix y = scenario2_->sample(master.child({r, kRoleSample2}));
    return two_sample_test(x, y, cfg).outcome.reject;
  }

private:
  const StudySpec& spec_;
  std::optional<datagen::Scenario> scenario1_;
  std::optional<datagen::Scenario> scenario2_;
};

std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string format_general(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

unsigned default_threads() {
  if (const char* env = std::getenv("PROJCOV_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SimulationReport run_study(const StudySpec& spec, const RunOptions& options) {
  if (spec.replicates == 0) throw DomainError("run_study: replicates must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const ReplicateRunner runner(spec);

  const std::size_t total = spec.replicates;
  std::vector<unsigned char> decisions(total, 0);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::optional<std::size_t> error_index;
  std::string error_message;

  auto worker = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t r = next.fetch_add(1, std::memory_order_relaxed);
      if (r >= total) return;
      try {
        decisions[r] = runner(r) ? 1 : 0;
      } catch (const std::exception& e) {
        // Indices are claimed in increasing order, so every index below the
        // first recorded failure has already been claimed and will finish;
        // keeping the minimum makes the reported replicate deterministic.
        std::lock_guard lock(error_mutex);
        if (!error_index || r < *error_index) {
          error_index = r;
          error_message = e.what();
        }
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(total)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error_index) throw StudyError(*error_index, error_message);

  SimulationReport report;
  report.spec = spec;
  report.replicates = total;
  for (const unsigned char d : decisions) report.rejections += d;
  report.rate = static_cast<double>(report.rejections) / static_cast<double>(total);
  report.mc_standard_error = std::sqrt(report.rate * (1.0 - report.rate) / static_cast<double>(total));
  if (options.keep_decisions) report.decisions.assign(decisions.begin(), decisions.end());
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<GridRow> run_grid(std::span<const StudySpec> specs, const RunOptions& options) {
  if (specs.empty()) throw DomainError("run_grid: no studies given");
  std::vector<GridRow> rows;
  rows.reserve(specs.size());
  for (const StudySpec& spec : specs) {
    GridRow row;
    try {
      row.report = run_study(spec, options);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

StudySummary summarize(const StudySpec& spec) {
  StudySummary s;
  if (const auto* one = std::get_if<OneSampleStudy>(&spec.test)) {
    s.test = "one-sample";
    s.scenario1 = datagen::describe(one->scenario.kind);
    s.n1 = one->scenario.n;
    s.p = one->scenario.p;
    s.m = one->config.m;
    s.alpha = one->config.alpha;
    s.sided = one->config.sided;
  } else {
    const auto& two = std::get<TwoSampleStudy>(spec.test);
    s.test = "two-sample";
    s.scenario1 = datagen::describe(two.scenario1.kind);
    s.scenario2 = datagen::describe(two.scenario2.kind);
    s.n1 = two.scenario1.n;
    s.n2 = two.scenario2.n;
    s.p = two.scenario1.p;
    s.m = two.config.m;
    s.alpha = two.config.alpha;
    s.sided = two.config.sided;
  }
  return s;
}

std::string render_table(std::span<const GridRow> rows) {
  const std::vector<std::string> header = {"name", "test", "scenario1", "scenario2", "n1", "n2", "p",
                                           "m",    "alpha", "sided",    "reps",      "rate", "mc_se"};
  std::vector<std::vector<std::string>> cells;
  for (const GridRow& row : rows) {
    if (!row.report) {
      cells.push_back({"", "error", row.error});
      continue;
    }
    const SimulationReport& r = *row.report;
    const StudySummary s = summarize(r.spec);
    cells.push_back({r.spec.name, s.test, s.scenario1, s.scenario2.empty() ? "-" : s.scenario2,
                     std::to_string(s.n1), s.n2 ? std::to_string(s.n2) : "-", std::to_string(s.p),
                     std::to_string(s.m), format_general(s.alpha), std::string(to_string(s.sided)),
                     std::to_string(r.replicates), format_fixed(r.rate, 4), format_fixed(r.mc_standard_error, 4)});
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& line : cells) {
    if (line.size() != header.size()) continue;
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }

  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) os << "  ";
      os << line[c];
      if (c + 1 < line.size()) os << std::string(width[c] - std::min(width[c], line[c].size()), ' ');
    }
    os << '\n';
  };
  emit(header);
  for (const auto& line : cells) {
    if (line.size() == header.size()) {
      emit(line);
    } else {
      os << "error: " << line[2] << '\n';
    }
  }
  return os.str();
}

}  // namespace projcov::harness
