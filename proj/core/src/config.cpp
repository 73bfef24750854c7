#include "codemix/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "codemix/error.hpp"
#include "codemix/format.hpp"

namespace codemix {

std::string_view to_string(FriedmanOrientation o) {
  return o == FriedmanOrientation::ClassifiersAsTreatments ? "classifiers" : "vectorizers";
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (true) {
    const auto comma = value.find(',', start);
    items.push_back(trim(value.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (items.size() == 1 && items.front().empty()) items.clear();
  return items;
}

struct LineError {
  std::string message;
};

std::uint64_t parse_u64(const std::string& v) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw LineError{"expected a non-negative integer, got '" + v + "'"};
  }
  return out;
}

double parse_real(const std::string& v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw LineError{"expected a number, got '" + v + "'"};
  }
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw LineError{"expected true or false, got '" + v + "'"};
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& v, Parse parse_one, std::string_view what) {
  std::vector<T> out;
  for (const auto& item : split_list(v)) {
    const auto parsed = parse_one(item);
    if (!parsed) {
      throw LineError{"unknown " + std::string(what) + " '" + item + "'"};
    }
    if (std::find(out.begin(), out.end(), *parsed) != out.end()) {
      throw LineError{"duplicate " + std::string(what) + " '" + item + "'"};
    }
    out.push_back(*parsed);
  }
  if (out.empty()) {
    throw LineError{"empty " + std::string(what) + " list"};
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& v) {
  std::filesystem::path p(v);
  if (p.is_relative() && !base.empty()) return base / p;
  return p;
}

template <typename T>
std::string join(const std::vector<T>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ',';
    if constexpr (std::is_arithmetic_v<T>) {
      out += std::to_string(item);
    } else {
      out += to_string(item);
    }
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (vectorizers.empty()) throw ConfigError("config: no vectorizers selected");
  if (classifiers.empty()) throw ConfigError("config: no classifiers selected");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("config: test_fraction must lie strictly between 0 and 1");
  }
  if (workers == 0) throw ConfigError("config: workers must be at least 1");
  if (rf_sizes.empty()) throw ConfigError("config: rf.n_estimators is empty");
  if (svm_kernels.empty()) throw ConfigError("config: svm.kernels is empty");
  const auto n = hashing.n_buckets;
  if (n < 2 || (n & (n - 1)) != 0 || n > (std::size_t{1} << 31)) {
    throw ConfigError("config: hashing.n_buckets must be a power of two in [2, 2^31]");
  }
  ClassifierSpec probe;
  probe.alpha = nb_alpha;
  probe.k = knn_k;
  probe.C = svm_C;
  probe.gamma = svm_gamma;
  probe.tolerance = svm_tolerance;
  probe.max_features = rf_max_features;
  try {
    probe.validate();
    for (const auto size : rf_sizes) {
      probe.n_estimators = size;
      probe.validate();
    }
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (rf_max_features && *rf_max_features == 0) {
    throw ConfigError("config: rf.max_features must be positive");
  }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const {
  return {
      {"data", data.string()},
      {"text_column", columns.text},
      {"label_column", columns.label},
      {"test_fraction", format_number(test_fraction)},
      {"seed", std::to_string(seed)},
      {"vectorizers", join(vectorizers)},
      {"classifiers", join(classifiers)},
      {"nb.alpha", format_number(nb_alpha)},
      {"knn.k", std::to_string(knn_k)},
      {"rf.n_estimators", join(rf_sizes)},
      {"rf.max_features", rf_max_features ? std::to_string(*rf_max_features) : "sqrt"},
      {"svm.kernels", join(svm_kernels)},
      {"svm.C", format_number(svm_C)},
      {"svm.gamma", svm_gamma ? format_number(*svm_gamma) : "scale"},
      {"svm.tolerance", format_number(svm_tolerance)},
      {"hashing.n_buckets", std::to_string(hashing.n_buckets)},
      {"hashing.alternate_sign", hashing.alternate_sign ? "true" : "false"},
      {"output", output.string()},
      {"friedman.orientation", std::string(to_string(friedman_orientation))},
      {"friedman.tie_correction", friedman_tie_correction ? "true" : "false"},
      {"workers", std::to_string(workers)},
      {"timings", timings ? "true" : "false"},
  };
}

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter, std::less<>> setters{
      {"data", [&](const std::string& v) { cfg.data = resolve(base_dir, v); }},
      {"text_column", [&](const std::string& v) { cfg.columns.text = v; }},
      {"label_column", [&](const std::string& v) { cfg.columns.label = v; }},
      {"test_fraction", [&](const std::string& v) { cfg.test_fraction = parse_real(v); }},
      {"seed", [&](const std::string& v) { cfg.seed = parse_u64(v); }},
      {"vectorizers",
       [&](const std::string& v) {
         cfg.vectorizers = parse_list<VectorizerKind>(v, parse_vectorizer_kind, "vectorizer");
       }},
      {"classifiers",
       [&](const std::string& v) {
         cfg.classifiers = parse_list<ClassifierKind>(v, parse_classifier_kind, "classifier");
       }},
      {"nb.alpha", [&](const std::string& v) { cfg.nb_alpha = parse_real(v); }},
      {"knn.k", [&](const std::string& v) { cfg.knn_k = parse_u64(v); }},
      {"rf.n_estimators",
       [&](const std::string& v) {
         cfg.rf_sizes = parse_list<std::size_t>(
             v, [](const std::string& s) { return std::optional<std::size_t>(parse_u64(s)); },
             "forest size");
       }},
      {"rf.max_features",
       [&](const std::string& v) {
         if (v == "sqrt") cfg.rf_max_features.reset(); else cfg.rf_max_features = parse_u64(v);
       }},
      {"svm.kernels",
       [&](const std::string& v) {
         cfg.svm_kernels = parse_list<KernelKind>(v, parse_kernel_kind, "kernel");
       }},
      {"svm.C", [&](const std::string& v) { cfg.svm_C = parse_real(v); }},
      {"svm.gamma",
       [&](const std::string& v) {
         if (v == "scale") cfg.svm_gamma.reset(); else cfg.svm_gamma = parse_real(v);
       }},
      {"svm.tolerance", [&](const std::string& v) { cfg.svm_tolerance = parse_real(v); }},
      {"hashing.n_buckets", [&](const std::string& v) { cfg.hashing.n_buckets = parse_u64(v); }},
      {"hashing.alternate_sign",
       [&](const std::string& v) { cfg.hashing.alternate_sign = parse_bool(v); }},
      {"output", [&](const std::string& v) { cfg.output = resolve(base_dir, v); }},
      {"friedman.orientation",
       [&](const std::string& v) {
         if (v == "classifiers") {
           cfg.friedman_orientation = FriedmanOrientation::ClassifiersAsTreatments;
         } else if (v == "vectorizers") {
           cfg.friedman_orientation = FriedmanOrientation::VectorizersAsTreatments;
         } else {
           throw LineError{"friedman.orientation must be classifiers or vectorizers"};
         }
       }},
      {"friedman.tie_correction",
       [&](const std::string& v) { cfg.friedman_tie_correction = parse_bool(v); }},
      {"workers", [&](const std::string& v) { cfg.workers = parse_u64(v); }},
      {"timings", [&](const std::string& v) { cfg.timings = parse_bool(v); }},
  };

  std::set<std::string, std::less<>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#' || body.front() == ';') continue;
    const auto where = "config line " + std::to_string(line_no) + ": ";
    if (body.front() == '[') {
      throw ConfigError(where + "sections are not supported");
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where + "expected key = value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError(where + "unknown key '" + key + "'");
    }
    if (!seen.insert(key).second) {
      throw ConfigError(where + "duplicate key '" + key + "'");
    }
    try {
      it->second(value);
    } catch (const LineError& e) {
      throw ConfigError(where + key + ": " + e.message);
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  return parse_config(in, path.parent_path());
}

void apply_environment(ExperimentConfig& config) {
  const char* env = std::getenv("CODEMIX_WORKERS");
  if (env == nullptr || *env == '\0') return;
  try {
    config.workers = parse_u64(env);
  } catch (const LineError& e) {
    throw ConfigError("CODEMIX_WORKERS: " + e.message);
  }
  if (config.workers == 0) {
    throw ConfigError("CODEMIX_WORKERS must be at least 1");
  }
}

}  // namespace codemix
