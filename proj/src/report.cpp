#include "qrand/report.hpp"

#include <chrono>
#include <stdexcept>

#include "qrand/bitfile.hpp"

namespace qrand::cli {

using nlohmann::json;

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(json& timings, std::string key)
      : timings_(timings), key_(std::move(key)), start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    timings_[key_] = elapsed.count();
  }
  Stopwatch(const Stopwatch&) = delete;
  Stopwatch& operator=(const Stopwatch&) = delete;

 private:
  json& timings_;
  std::string key_;
  std::chrono::steady_clock::time_point start_;
};

json source_to_json(const SourceSpec& s) {
  json j;
  j["kind"] = std::string(to_string(s.kind));
  j["seed"] = s.seed ? json(*s.seed) : json(nullptr);
  j["path"] = s.path ? json(s.path->string()) : json(nullptr);
  return j;
}

SourceSpec source_from_json(const json& j) {
  const auto kind = parse_source_kind(j.at("kind").get<std::string>());
  if (!kind) throw std::invalid_argument("config: unknown source kind");
  SourceSpec s{*kind, std::nullopt, std::nullopt};
  if (!j.at("seed").is_null()) s.seed = j.at("seed").get<std::uint64_t>();
  if (!j.at("path").is_null()) s.path = j.at("path").get<std::string>();
  s.validate();
  return s;
}

json input_summary(const RunConfig& config, const BitString& x) {
  return {{"source", config.source ? source_to_json(*config.source) : json(nullptr)}, {"bits", x.size()}};
}

std::vector<predict::Predictor> selected_predictors(const RunConfig& config) {
  if (config.predictors.empty()) return predict::builtin_predictors();
  std::vector<predict::Predictor> out;
  for (const auto& name : config.predictors) out.push_back(predict::Predictor::parse(name));
  return out;
}

json prediction_entry(const predict::Predictor& p, const predict::PredictionReport& r) {
  json j = to_json(r);
  j["predictor"] = p.name();
  return j;
}

json run_tests_json(const RunConfig& config, const BitString& x, bool& pass) {
  json verdicts = json::array();
  pass = true;
  auto add = [&](const stats::TestVerdict& v) {
    verdicts.push_back(to_json(v));
    pass = pass && v.pass;
  };
  for (const auto& t : config.tests) {
    if (t == "freq") {
      add(stats::frequency_check(x));
    } else if (t == "borel") {
      for (const auto& v : stats::borel_normality_check(x, config.m_max)) add(v);
    } else if (t == "autocorr") {
      for (std::size_t lag = 1; lag <= config.lag; ++lag) add(stats::autocorrelation_check(x, lag));
    } else if (t == "aligned") {
      add(stats::aligned_pattern_check(x));
    } else {
      throw std::invalid_argument("unknown test '" + t + "' (expected freq, borel, autocorr, aligned)");
    }
  }
  return {{"verdicts", verdicts}, {"pass", pass}};
}

json scan_json(const RunConfig& config, const BitString& x) {
  const auto e = predict::PairEnumerator::parse(config.enumerator, config.scan_budget, config.v_length);
  const predict::ScanResult scan = predict::correlation_scan(x, e);
  json confirmed = json::array();
  for (const auto& pair : scan.confirmed) confirmed.push_back({{"u", pair.u.to_string()}, {"v", pair.v.to_string()}});
  return {{"enumerator", e.name()},
          {"budget", e.budget},
          {"emitted", scan.emitted},
          {"confirmed_count", scan.confirmed.size()},
          {"phi_positions", predict::pairs_to_phi(scan.confirmed).size()},
          {"confirmed", confirmed}};
}

json halting_json(std::size_t length, std::uint64_t budget) {
  json entries = json::array();
  std::string h;
  for (const auto& e : ait::halting_sequence(length, budget)) {
    json j = to_json(e.status);
    j["index"] = e.program.index;
    j["codeword"] = e.program.to_string();
    entries.push_back(j);
    const auto bit = ait::h_bit(e.status);
    h += bit ? (*bit ? '1' : '0') : '?';
  }
  return {{"budget", budget}, {"h", h}, {"entries", entries}};
}

json omega_json(const RunConfig& config) {
  json j;
  j["bracket"] = to_json(ait::omega_bracket(config.max_len, config.budget));
  j["lower_bound"] = j["bracket"]["lower"];
  if (config.omega_bits > 0) j["certified_prefix"] = to_json(ait::certify_omega_prefix(config.omega_bits, config.budget));
  return j;
}

}  // namespace

json to_json(const RunConfig& c) {
  json j;
  j["subcommand"] = c.subcommand;
  j["action"] = c.action;
  j["source"] = c.source ? source_to_json(*c.source) : json(nullptr);
  j["n"] = c.n ? json(*c.n) : json(nullptr);
  j["tests"] = c.tests;
  j["m_max"] = c.m_max;
  j["lag"] = c.lag;
  j["predictors"] = c.predictors;
  j["log"] = c.log;
  j["enumerator"] = c.enumerator;
  j["v_length"] = c.v_length;
  j["scan_budget"] = c.scan_budget;
  j["budget"] = c.budget;
  j["max_len"] = c.max_len;
  j["omega_bits"] = c.omega_bits;
  j["h_length"] = c.h_length;
  j["out"] = c.out_path ? json(*c.out_path) : json(nullptr);
  j["schema_version"] = c.schema_version;
  return j;
}

RunConfig config_from_json(const json& j) {
  try {
    RunConfig c;
    c.subcommand = j.at("subcommand").get<std::string>();
    c.action = j.at("action").get<std::string>();
    if (!j.at("source").is_null()) c.source = source_from_json(j.at("source"));
    if (!j.at("n").is_null()) c.n = j.at("n").get<std::uint64_t>();
    c.tests = j.at("tests").get<std::vector<std::string>>();
    c.m_max = j.at("m_max").get<unsigned>();
    c.lag = j.at("lag").get<std::size_t>();
    c.predictors = j.at("predictors").get<std::vector<std::string>>();
    c.log = j.at("log").get<bool>();
    c.enumerator = j.at("enumerator").get<std::string>();
    c.v_length = j.at("v_length").get<std::size_t>();
    c.scan_budget = j.at("scan_budget").get<std::size_t>();
    c.budget = j.at("budget").get<std::uint64_t>();
    c.max_len = j.at("max_len").get<std::size_t>();
    c.omega_bits = j.at("omega_bits").get<std::size_t>();
    c.h_length = j.at("h_length").get<std::size_t>();
    if (!j.at("out").is_null()) c.out_path = j.at("out").get<std::string>();
    c.schema_version = j.at("schema_version").get<int>();
    if (c.schema_version != kSchemaVersion) {
      throw std::invalid_argument("config: unsupported schema_version " + std::to_string(c.schema_version));
    }
    return c;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
}

json to_json(const Rational& r) { return {{"exact", r.to_string()}, {"value", r.to_double()}}; }

json to_json(const ait::DyadicRational& d) {
  return {{"binary", d.to_binary()},
          {"fraction", d.to_fraction()},
          {"numerator", d.numerator().get_str()},
          {"exponent", d.exponent()}};
}

json to_json(const stats::TestVerdict& v) {
  return {{"name", v.name},
          {"statistic", to_json(v.statistic)},
          {"threshold", to_json(v.threshold)},
          {"pass", v.pass},
          {"detail", v.detail}};
}

json to_json(const predict::PredictionReport& r) {
  json j{{"attempts", r.attempts}, {"hits", r.hits}, {"abstentions", r.abstentions}};
  const auto rate = r.hit_rate();
  j["hit_rate"] = rate ? to_json(*rate) : json(nullptr);
  if (!r.log.empty()) {
    json log = json::array();
    for (const auto& e : r.log) log.push_back({e.position, e.predicted ? 1 : 0, e.actual ? 1 : 0});
    j["log"] = log;
  }
  return j;
}

json to_json(const ait::MachineStatus& s) {
  return {{"outcome", ait::to_string(s.outcome)},
          {"steps", s.steps},
          {"reason", ait::to_string(s.reason)},
          {"budget", s.budget}};
}

json to_json(const ait::OmegaBracket& b) {
  return {{"max_len", b.max_len},     {"budget", b.budget},       {"lower", to_json(b.lower)},
          {"upper", to_json(b.upper())}, {"unresolved", to_json(b.unresolved)}, {"tail", to_json(b.tail)},
          {"halted", b.halted},       {"diverging", b.diverging}, {"unknown", b.unknown}};
}

json to_json(const ait::OmegaPrefix& p) {
  json j{{"n", p.n}, {"certified", p.certified}, {"bits", p.bits.to_string()}, {"budget", p.budget}};
  if (p.certified) {
    j["cut_length"] = p.cut_length;
    j["lower"] = to_json(p.lower);
    j["upper"] = to_json(p.upper);
  }
  return j;
}

json Report::to_json() const {
  return {{"schema_version", kSchemaVersion},
          {"config", cli::to_json(config)},
          {"results", results},
          {"timings", timings},
          {"version", kToolVersion}};
}

std::string deterministic_dump(const json& report) {
  json copy = report;
  copy.erase("timings");
  return copy.dump(2);
}

std::vector<std::string> validate_report(const json& report) {
  std::vector<std::string> problems;
  if (!report.is_object()) return {"report is not a JSON object"};
  auto require = [&](const char* key, bool (json::*is_type)() const noexcept, const char* type) {
    if (!report.contains(key)) {
      problems.push_back(std::string("missing field '") + key + "'");
    } else if (!(report.at(key).*is_type)()) {
      problems.push_back(std::string("field '") + key + "' must be " + type);
    }
  };
  require("schema_version", &json::is_number_integer, "an integer");
  require("config", &json::is_object, "an object");
  require("results", &json::is_object, "an object");
  require("timings", &json::is_object, "an object");
  require("version", &json::is_string, "a string");
  for (const auto& [key, _] : report.items()) {
    if (key != "schema_version" && key != "config" && key != "results" && key != "timings" && key != "version") {
      problems.push_back("unexpected top-level field '" + key + "'");
    }
  }
  if (!problems.empty()) return problems;
  if (report.at("schema_version") != kSchemaVersion) problems.push_back("unsupported schema_version");
  for (const auto& [key, value] : report.at("timings").items()) {
    if (!value.is_number()) problems.push_back("timing '" + key + "' is not a number");
  }
  try {
    config_from_json(report.at("config"));
  } catch (const std::exception& e) {
    problems.emplace_back(e.what());
  }
  return problems;
}

BitString load_input(const RunConfig& config) {
  if (!config.source) throw std::invalid_argument("no input: pass --in or --source");
  if (config.n) return generate(*config.source, *config.n);
  if (config.source->kind != SourceKind::file) throw std::invalid_argument("--n is required for generated sources");
  config.source->validate();
  return read_bits(*config.source->path);
}

Report run_generate(const RunConfig& config) {
  Report r{config};
  if (!config.out_path) throw std::invalid_argument("generate: --out is required");
  BitString x;
  {
    Stopwatch w(r.timings, "generate");
    x = load_input(config);
  }
  write_bits(x, *config.out_path);
  r.results = {{"bits", x.size()}, {"ones", x.count_ones()}, {"out", *config.out_path}};
  return r;
}

Report run_transform(const RunConfig& config) {
  Report r{config};
  if (config.action != "expand-001-100") throw std::invalid_argument("transform: unknown op '" + config.action + "'");
  if (!config.out_path) throw std::invalid_argument("transform: --out is required");
  const BitString x = load_input(config);
  const BitString y = expand_001_100(x);
  write_bits(y, *config.out_path);
  r.results = {{"op", config.action}, {"input_bits", x.size()}, {"bits", y.size()}, {"out", *config.out_path}};
  return r;
}

Report run_test(const RunConfig& config) {
  Report r{config};
  const BitString x = load_input(config);
  Stopwatch w(r.timings, "test");
  bool pass = true;
  r.results = run_tests_json(config, x, pass);
  r.results["input"] = input_summary(config, x);
  r.all_pass = pass;
  return r;
}

Report run_predict(const RunConfig& config) {
  Report r{config};
  const BitString x = load_input(config);
  Stopwatch w(r.timings, "predict");
  json runs = json::array();
  for (const auto& p : selected_predictors(config)) runs.push_back(prediction_entry(p, predict::predict_run(x, p, config.log)));
  r.results = {{"input", input_summary(config, x)}, {"predictions", runs}};
  return r;
}

Report run_scan(const RunConfig& config) {
  Report r{config};
  const BitString x = load_input(config);
  Stopwatch w(r.timings, "scan");
  r.results = {{"input", input_summary(config, x)}, {"scan", scan_json(config, x)}};
  return r;
}

Report run_ait(const RunConfig& config) {
  Report r{config};
  Stopwatch w(r.timings, "ait");
  if (config.action == "enumerate") {
    json programs = json::array();
    for (const auto& p : ait::enumerate_programs(config.max_len)) {
      programs.push_back({{"index", p.index}, {"codeword", p.to_string()}});
    }
    r.results = {{"max_len", config.max_len}, {"programs", programs}, {"kraft_sum", to_json(ait::kraft_sum(config.max_len))}};
  } else if (config.action == "omega") {
    r.results = {{"omega", omega_json(config)}};
  } else if (config.action == "halting") {
    r.results = {{"halting", halting_json(config.h_length, config.budget)}};
  } else {
    throw std::invalid_argument("ait: expected enumerate, omega or halting");
  }
  return r;
}

Report run_suite(const RunConfig& config) {
  Report r{config};
  BitString x;
  {
    Stopwatch w(r.timings, "input");
    x = load_input(config);
  }
  r.results["input"] = input_summary(config, x);
  {
    Stopwatch w(r.timings, "tests");
    bool pass = true;
    r.results["tests"] = run_tests_json(config, x, pass);
    r.all_pass = pass;
  }
  {
    Stopwatch w(r.timings, "predict");
    json runs = json::array();
    for (const auto& p : selected_predictors(config)) runs.push_back(prediction_entry(p, predict::predict_run(x, p, false)));
    r.results["predictions"] = runs;
  }
  {
    Stopwatch w(r.timings, "scan");
    r.results["scan"] = scan_json(config, x);
  }
  {
    Stopwatch w(r.timings, "ait");
    r.results["omega"] = omega_json(config);
    r.results["halting"] = halting_json(config.h_length, config.budget);
  }
  return r;
}

Report execute(const RunConfig& config) {
  if (config.subcommand == "generate") return run_generate(config);
  if (config.subcommand == "transform") return run_transform(config);
  if (config.subcommand == "test") return run_test(config);
  if (config.subcommand == "predict") return run_predict(config);
  if (config.subcommand == "scan") return run_scan(config);
  if (config.subcommand == "ait") return run_ait(config);
  if (config.subcommand == "report") return run_suite(config);
  throw std::invalid_argument("unknown subcommand '" + config.subcommand + "'");
}

}  // namespace qrand::cli
