#include "lmrank/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lmrank/errors.hpp"

namespace lmrank {

namespace {

const std::vector<std::string> kMainEight = {
    "u-in", "w-in", "r-u-in", "r-w-in",
    "u-in+lm", "w-in+lm", "r-u-in+lm", "r-w-in+lm"};

const std::vector<std::string> kAll = {
    "u-in", "w-in", "r-u-in", "r-w-in",
    "u-in+lm", "w-in+lm", "r-u-in+lm", "r-w-in+lm",
    "hits-auth", "hits-hub", "hits-auth+lm", "hits-hub+lm",
    "prior-uniform+lm", "prior-tokens+lm", "prior-log-tokens+lm",
    "prior-types+lm", "prior-log-types+lm", "prior-entropy+lm"};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse number '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse integer '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

}  // namespace

const std::vector<std::string>& known_algorithms() { return kAll; }

std::optional<AlgorithmSpec> parse_algorithm(const std::string& name) {
  AlgorithmSpec spec;
  spec.name = name;

  std::string base = name;
  if (base.size() > 3 && base.ends_with("+lm")) {
    spec.combine_lm = true;
    base = base.substr(0, base.size() - 3);
  }

  if (base == "u-in" || base == "w-in") {
    spec.family = AlgorithmSpec::Family::graph_influx;
    spec.graph_kind = (base == "u-in") ? GraphKind::uniform : GraphKind::weighted;
    return spec;
  }
  if (base == "r-u-in" || base == "r-w-in") {
    spec.family = AlgorithmSpec::Family::graph_recursive;
    spec.graph_kind = (base == "r-u-in") ? GraphKind::uniform : GraphKind::weighted;
    return spec;
  }
  if (base == "hits-auth" || base == "hits-hub") {
    spec.family = AlgorithmSpec::Family::hits;
    spec.hits_authority = (base == "hits-auth");
    return spec;
  }
  if (base.starts_with("prior-")) {
    if (!spec.combine_lm) return std::nullopt;  // priors only substitute for centrality in the combined score
    auto kind = parse_prior_kind(base.substr(6));
    if (!kind) return std::nullopt;
    spec.family = AlgorithmSpec::Family::prior;
    spec.prior = *kind;
    return spec;
  }
  return std::nullopt;
}

std::vector<AlgorithmSpec> ExperimentConfig::algorithm_specs() const {
  std::vector<std::string> names = algorithms;
  if (names.empty()) names = kMainEight;
  if (names.size() == 1 && names[0] == "all") names = kAll;

  std::vector<AlgorithmSpec> specs;
  for (const std::string& n : names) {
    if (n == "initial") continue;  // the reference rows are always emitted
    auto spec = parse_algorithm(n);
    if (!spec) throw ConfigError("unknown algorithm '" + n + "'");
    specs.push_back(std::move(*spec));
  }
  return specs;
}

void ExperimentConfig::validate() {
  if (corpus_path.empty()) throw ConfigError("corpus path is required");
  if (queries_path.empty()) throw ConfigError("queries path is required");
  if (qrels_path.empty()) throw ConfigError("qrels path is required");
  if (out_dir.empty()) throw ConfigError("output directory is required");
  if (dinit < 2) throw ConfigError("dinit must be >= 2");
  if (full_corpus_cap < 2) throw ConfigError("full_corpus_cap must be >= 2");
  if (mu_grid.empty() || alpha_grid.empty() || lambda_grid.empty())
    throw ConfigError("parameter grids must be nonempty");

  auto sort_unique = [](auto& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  sort_unique(mu_grid);
  sort_unique(alpha_grid);
  sort_unique(lambda_grid);

  for (double mu : mu_grid)
    if (!(mu > 0.0)) throw ConfigError("mu grid values must be > 0");
  for (int a : alpha_grid)
    if (a < 1) throw ConfigError("alpha grid values must be >= 1");
  for (double l : lambda_grid)
    if (!(l >= 0.0 && l < 1.0)) throw ConfigError("lambda grid values must lie in [0, 1)");
  if (hits_graph != "uniform" && hits_graph != "weighted")
    throw ConfigError("hits_graph must be 'uniform' or 'weighted'");

  algorithm_specs();  // validates names
}

void apply_config_entry(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "corpus") cfg.corpus_path = value;
  else if (key == "format") {
    auto f = parse_corpus_format(value);
    if (!f) throw ConfigError("unknown corpus format '" + value + "'");
    cfg.format = *f;
  } else if (key == "queries") cfg.queries_path = value;
  else if (key == "qrels") cfg.qrels_path = value;
  else if (key == "out") cfg.out_dir = value;
  else if (key == "dinit") cfg.dinit = parse_int(key, value);
  else if (key == "mode") {
    if (value == "rerank") cfg.mode = ExperimentConfig::Mode::rerank;
    else if (value == "full-corpus") cfg.mode = ExperimentConfig::Mode::full_corpus;
    else throw ConfigError("mode must be 'rerank' or 'full-corpus'");
  } else if (key == "algorithms") cfg.algorithms = split_list(value);
  else if (key == "link_mode") {
    auto m = parse_link_mode(value);
    if (!m) throw ConfigError("unknown link_mode '" + value + "'");
    cfg.link_mode = *m;
  } else if (key == "mu_grid") {
    cfg.mu_grid.clear();
    for (const std::string& v : split_list(value)) cfg.mu_grid.push_back(parse_double(key, v));
  } else if (key == "alpha_grid") {
    cfg.alpha_grid.clear();
    for (const std::string& v : split_list(value)) cfg.alpha_grid.push_back(parse_int(key, v));
  } else if (key == "lambda_grid") {
    cfg.lambda_grid.clear();
    for (const std::string& v : split_list(value)) cfg.lambda_grid.push_back(parse_double(key, v));
  } else if (key == "sweep_metric") {
    if (value == "prec5" || value == "prec@5") cfg.sweep_metric = Metric::prec5;
    else if (value == "prec10" || value == "prec@10") cfg.sweep_metric = Metric::prec10;
    else if (value == "mrr" || value == "MRR") cfg.sweep_metric = Metric::mrr;
    else throw ConfigError("unknown sweep_metric '" + value + "'");
  } else if (key == "full_corpus_cap") cfg.full_corpus_cap = parse_int(key, value);
  else if (key == "hits_graph") cfg.hits_graph = value;
  else if (key == "hits_smoothed") cfg.hits_smoothed = parse_bool(key, value);
  else if (key == "dump_graphs") cfg.dump_graphs = parse_bool(key, value);
  else if (key == "threads") cfg.threads = parse_int(key, value);
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
  else throw ConfigError("unknown config key '" + key + "'");
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    try {
      apply_config_entry(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(e.what()) + " (config line " + std::to_string(lineno) + ")");
    }
  }
  return cfg;
}

}  // namespace lmrank
