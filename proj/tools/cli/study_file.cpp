#include "cli/study_file.hpp"

#include "cli/csv_input.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace projcov::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = value.find(',', start);
    out.push_back(trim(value.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

double to_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(what + ": not a number: '" + text + "'");
  }
  return v;
}

std::uint64_t to_count(const std::string& text, const std::string& what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(what + ": not a non-negative integer: '" + text + "'");
  }
  return v;
}

// Splits "name(a,b)" into its two numeric arguments.
std::pair<double, double> two_args(const std::string& text, const std::string& name) {
  const std::string inner = text.substr(name.size() + 1, text.size() - name.size() - 2);
  const auto args = split_list(inner);
  if (args.size() != 2) throw ConfigError("scenario '" + text + "': expected two arguments");
  return {to_double(args[0], text), to_double(args[1], text)};
}

struct Stanza {
  std::map<std::string, std::string> values;
  std::size_t first_line = 0;
};

const char* const kKeys[] = {"name", "test", "scenario1", "scenario2", "n",    "n1",         "n2",
                             "p",    "m",    "alpha",     "sided",     "seed", "replicates"};

bool known_key(const std::string& key) {
  for (const char* k : kKeys) {
    if (key == k) return true;
  }
  return false;
}

std::vector<Stanza> read_stanzas(std::istream& in) {
  std::vector<Stanza> stanzas;
  std::optional<Stanza> current;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) {
      if (current) stanzas.push_back(std::move(*current));
      current.reset();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_key(key)) throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (value.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty value for '" + key + "'");
    if (!current) current = Stanza{{}, line_no};
    if (!current->values.emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  if (current) stanzas.push_back(std::move(*current));
  return stanzas;
}

std::vector<std::uint64_t> counts(const Stanza& s, const std::string& key, std::optional<std::uint64_t> fallback) {
  const auto it = s.values.find(key);
  if (it == s.values.end()) {
    if (!fallback) throw ConfigError("stanza at line " + std::to_string(s.first_line) + ": missing '" + key + "'");
    return {*fallback};
  }
  std::vector<std::uint64_t> out;
  for (const auto& item : split_list(it->second)) {
    const std::uint64_t v = to_count(item, key);
    if (v == 0) throw ConfigError(key + " must be >= 1");
    out.push_back(v);
  }
  return out;
}

std::vector<double> reals(const Stanza& s, const std::string& key, double fallback) {
  const auto it = s.values.find(key);
  if (it == s.values.end()) return {fallback};
  std::vector<double> out;
  for (const auto& item : split_list(it->second)) out.push_back(to_double(item, key));
  return out;
}

std::string text(const Stanza& s, const std::string& key, const std::string& fallback) {
  const auto it = s.values.find(key);
  return it == s.values.end() ? fallback : it->second;
}

std::string cell_label(bool list_n, bool list_p, bool list_m, bool list_alpha, std::uint64_t n1, std::uint64_t n2,
                       std::uint64_t p, std::uint64_t m, double alpha) {
  std::ostringstream os;
  const char* sep = "";
  auto add = [&](const std::string& part) {
    os << sep << part;
    sep = ",";
  };
  if (list_n) add(n2 == 0 || n1 == n2 ? "n=" + std::to_string(n1) : "n1=" + std::to_string(n1) + ",n2=" + std::to_string(n2));
  if (list_p) add("p=" + std::to_string(p));
  if (list_m) add("m=" + std::to_string(m));
  if (list_alpha) {
    std::ostringstream a;
    a << "alpha=" << alpha;
    add(a.str());
  }
  return os.str();
}

}  // namespace

datagen::ScenarioKind parse_scenario(const std::string& raw, const std::string& base_dir) {
  const std::string t = trim(raw);
  if (t == "null") return datagen::NullIdentity{};
  const bool call = !t.empty() && t.back() == ')';
  if (call && t.rfind("ma(", 0) == 0) {
    const auto [a, b] = two_args(t, "ma");
    return datagen::MovingAverage{a, b};
  }
  if (call && t.rfind("toeplitz(", 0) == 0) {
    const auto [d, rho] = two_args(t, "toeplitz");
    return datagen::ToeplitzPower{d, rho};
  }
  if (t.rfind("file:", 0) == 0) {
    std::filesystem::path path(t.substr(5));
    if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
    try {
      return datagen::ExplicitCov{read_sym_matrix(path.string())};
    } catch (const Error& e) {
      throw ConfigError("scenario '" + t + "': " + e.what());
    }
  }
  throw ConfigError("unknown scenario '" + t + "' (expected null, ma(a,b), toeplitz(d,rho) or file:PATH)");
}

std::vector<harness::StudySpec> parse_study_file(std::istream& in, const std::string& base_dir) {
  const std::vector<Stanza> stanzas = read_stanzas(in);
  if (stanzas.empty()) throw ConfigError("study file has no studies");

  std::vector<harness::StudySpec> specs;
  for (std::size_t k = 0; k < stanzas.size(); ++k) {
    const Stanza& s = stanzas[k];
    const std::string test = text(s, "test", "one-sample");
    const bool two = test == "two-sample";
    if (!two && test != "one-sample") throw ConfigError("test must be one-sample or two-sample, got '" + test + "'");
    if (!two && (s.values.count("scenario2") || s.values.count("n2"))) {
      throw ConfigError("stanza at line " + std::to_string(s.first_line) + ": scenario2/n2 need test = two-sample");
    }
    if (s.values.count("n") && (s.values.count("n1") || s.values.count("n2"))) {
      throw ConfigError("stanza at line " + std::to_string(s.first_line) + ": give n or n1/n2, not both");
    }

    Sidedness sided;
    try {
      sided = parse_sidedness(text(s, "sided", two ? "upper" : "two"));
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    const auto kind1 = parse_scenario(text(s, "scenario1", "null"), base_dir);
    const auto kind2 = parse_scenario(text(s, "scenario2", "null"), base_dir);
    const std::string name = text(s, "name", "study" + std::to_string(k + 1));
    const std::uint64_t replicates = counts(s, "replicates", 1000).at(0);
    const std::uint64_t seed = s.values.count("seed") ? to_count(s.values.at("seed"), "seed") : 0;

    const bool has_n = s.values.count("n") > 0;
    const auto n1s = counts(s, has_n ? "n" : "n1", std::nullopt);
    const auto n2s = two ? (has_n ? n1s : counts(s, "n2", std::nullopt)) : std::vector<std::uint64_t>{0};
    const auto ps = counts(s, "p", std::nullopt);
    const auto ms = counts(s, "m", 100);
    const auto alphas = reals(s, "alpha", 0.05);
    for (const double a : alphas) {
      if (!(a > 0.0 && a < 1.0)) throw ConfigError("alpha must lie in (0,1)");
    }
    const bool list_n = n1s.size() > 1 || n2s.size() > 1;

    // With a single n key both samples move together; with n1/n2 lists they cross.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> sizes;
    if (has_n) {
      for (const auto n : n1s) sizes.emplace_back(n, two ? n : 0);
    } else {
      for (const auto a : n1s) {
        for (const auto b : n2s) sizes.emplace_back(a, b);
      }
    }

    for (const auto& [n1, n2] : sizes) {
      for (const auto p : ps) {
        for (const auto m : ms) {
          for (const double alpha : alphas) {
            harness::StudySpec spec;
            const std::string label =
                cell_label(list_n, ps.size() > 1, ms.size() > 1, alphas.size() > 1, n1, n2, p, m, alpha);
            spec.name = label.empty() ? name : name + "[" + label + "]";
            spec.replicates = replicates;
            spec.master_key = {seed, {}};
            if (two) {
              TwoSampleConfig cfg;
              cfg.m = static_cast<unsigned>(m);
              cfg.alpha = alpha;
              cfg.sided = sided;
              spec.test = harness::TwoSampleStudy{cfg, {kind1, n1, p}, {kind2, n2, p}};
            } else {
              OneSampleConfig cfg;
              cfg.m = static_cast<unsigned>(m);
              cfg.alpha = alpha;
              cfg.sided = sided;
              spec.test = harness::OneSampleStudy{cfg, {kind1, n1, p}};
            }
            specs.push_back(std::move(spec));
          }
        }
      }
    }
  }
  return specs;
}

std::vector<harness::StudySpec> load_study_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open study file");
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_study_file(in, dir.empty() ? "." : dir.string());
}

}  // namespace projcov::cli
