// qrand: sequence generation, randomness-axiom tests, predictor and
// correlation experiments, and toy-machine halting/Omega computations.
//
// Exit codes: 0 all tests pass, 1 a test failed, 2 usage or format error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "qrand/bitfile.hpp"
#include "qrand/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string source;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> n;
  std::string in;
  std::string out;
  std::string json_path;
  std::string tests;
  unsigned m_max = 4;
  std::size_t lag = 8;
  std::vector<std::string> predictors;
  bool log = false;
  std::string enumerator = "source-replay:champernowne";
  std::size_t v_length = 16;
  std::optional<std::uint64_t> budget;
  std::size_t max_len = 9;
  std::size_t omega_bits = 5;
  std::size_t h_length = 32;
  std::string op = "expand-001-100";
  std::string replay;
};

void add_input(CLI::App* app, Options& o) {
  app->add_option("--source", o.source, "champernowne | pi-fraction | prng | quantum-sim | file");
  app->add_option("--seed", o.seed, "64-bit seed (prng, quantum-sim)");
  app->add_option("--n", o.n, "number of bits");
  app->add_option("--in", o.in, "input bitfile");
}

void add_json(CLI::App* app, Options& o) { app->add_option("--json", o.json_path, "write the JSON report here instead of stdout"); }

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

qrand::cli::RunConfig build_config(const std::string& subcommand, const std::string& action, const Options& o) {
  using namespace qrand;
  cli::RunConfig c;
  c.subcommand = subcommand;
  c.action = action;
  if (!o.source.empty()) {
    const auto kind = parse_source_kind(o.source);
    if (!kind) throw std::invalid_argument("unknown --source '" + o.source + "'");
    SourceSpec spec{*kind, o.seed, std::nullopt};
    if (*kind == SourceKind::file) {
      if (o.in.empty()) throw std::invalid_argument("--source file needs --in");
      spec.path = o.in;
    } else if (!o.in.empty()) {
      throw std::invalid_argument("--in conflicts with --source " + o.source);
    }
    spec.validate();
    c.source = spec;
  } else if (!o.in.empty()) {
    if (o.seed) throw std::invalid_argument("--seed given without a seeded --source");
    c.source = SourceSpec::file(o.in);
  } else if (o.seed) {
    throw std::invalid_argument("--seed given without --source");
  }
  c.n = o.n;
  if (!o.tests.empty()) c.tests = split_csv(o.tests);
  c.m_max = o.m_max;
  c.lag = o.lag;
  c.predictors = o.predictors;
  c.log = o.log;
  c.enumerator = o.enumerator;
  c.v_length = o.v_length;
  if (o.budget) {
    if (subcommand == "scan") {
      c.scan_budget = static_cast<std::size_t>(*o.budget);
    } else {
      c.budget = *o.budget;
    }
  }
  c.max_len = o.max_len;
  c.omega_bits = o.omega_bits;
  c.h_length = o.h_length;
  if (!o.out.empty()) c.out_path = o.out;
  return c;
}

void emit_report(const qrand::cli::Report& report, const std::string& json_path, bool to_stdout) {
  const std::string text = report.to_json().dump(2) + "\n";
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::trunc);
    if (!out) throw qrand::FormatError(qrand::FormatErrorKind::io, "cannot open report for writing: " + json_path);
    out << text;
  } else if (to_stdout) {
    std::cout << text;
  }
}

int run(const std::string& subcommand, const std::string& action, const Options& o) {
  using namespace qrand;
  cli::RunConfig config;
  if (!o.replay.empty()) {
    std::ifstream in(o.replay);
    if (!in) throw FormatError(FormatErrorKind::io, "cannot open report: " + o.replay);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument(std::string("report is not valid JSON: ") + e.what());
    }
    const auto problems = cli::validate_report(j);
    if (!problems.empty()) throw std::invalid_argument("report fails schema check: " + problems.front());
    config = cli::config_from_json(j.at("config"));
  } else {
    config = build_config(subcommand, action, o);
  }

  const cli::Report report = cli::execute(config);
  const bool writes_bits = config.subcommand == "generate" || config.subcommand == "transform";
  if (writes_bits) {
    std::cout << report.results.at("bits").get<std::uint64_t>() << " bits written to " << *config.out_path << "\n";
  }
  emit_report(report, o.json_path, !writes_bits);
  return report.all_pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qrand: randomness axioms, next-bit predictors and Omega bounds"};
  app.require_subcommand(1);
  Options o;

  auto* generate = app.add_subcommand("generate", "write a bitfile from a source");
  add_input(generate, o);
  generate->add_option("--out", o.out, "output bitfile")->required();
  add_json(generate, o);

  auto* transform = app.add_subcommand("transform", "apply a transform to a bitfile");
  add_input(transform, o);
  transform->add_option("--op", o.op, "expand-001-100");
  transform->add_option("--out", o.out, "output bitfile")->required();
  add_json(transform, o);

  auto* test = app.add_subcommand("test", "run randomness tests");
  add_input(test, o);
  test->add_option("--tests", o.tests, "comma list of freq,borel,autocorr,aligned");
  test->add_option("--m-max", o.m_max, "largest Borel block length");
  test->add_option("--lag", o.lag, "autocorrelation lags 1..lag");
  add_json(test, o);

  auto* predict = app.add_subcommand("predict", "score next-bit predictors");
  add_input(predict, o);
  predict->add_option("--predictor", o.predictors, "predictor (repeatable); default: built-in roster");
  predict->add_flag("--log", o.log, "include the per-position log");
  add_json(predict, o);

  auto* scan = app.add_subcommand("scan", "confirm (u, v) pairs with uv a prefix of the input");
  add_input(scan, o);
  scan->add_option("--enumerator", o.enumerator, "prefix-echo | constant-v:BITS | source-replay:KIND[:SEED]");
  scan->add_option("--budget", o.budget, "pairs to emit");
  scan->add_option("--v-len", o.v_length, "|v| for source-replay");
  add_json(scan, o);

  auto* ait = app.add_subcommand("ait", "toy prefix-free machine experiments");
  ait->require_subcommand(1);
  auto* enumerate = ait->add_subcommand("enumerate", "list codewords");
  enumerate->add_option("--max-len", o.max_len, "maximum codeword length");
  add_json(enumerate, o);
  auto* omega = ait->add_subcommand("omega", "exact Omega lower bound and certified prefix");
  omega->add_option("--max-len", o.max_len, "maximum codeword length");
  omega->add_option("--budget", o.budget, "step budget per program");
  omega->add_option("--omega-bits", o.omega_bits, "bits of Omega to certify (0 to skip)");
  add_json(omega, o);
  auto* halting = ait->add_subcommand("halting", "three-valued halting sequence prefix");
  halting->add_option("--n", o.h_length, "number of entries");
  halting->add_option("--budget", o.budget, "step budget per program");
  add_json(halting, o);

  auto* report = app.add_subcommand("report", "full battery on one input");
  add_input(report, o);
  report->add_option("--tests", o.tests, "comma list of freq,borel,autocorr,aligned");
  report->add_option("--m-max", o.m_max, "largest Borel block length");
  report->add_option("--lag", o.lag, "autocorrelation lags 1..lag");
  report->add_option("--predictor", o.predictors, "predictor (repeatable)");
  report->add_option("--enumerator", o.enumerator, "pair enumerator for the scan");
  report->add_option("--budget", o.budget, "toy-machine step budget");
  report->add_option("--max-len", o.max_len, "maximum codeword length for Omega");
  report->add_option("--replay", o.replay, "rerun the config echoed in an existing report");
  add_json(report, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  std::string subcommand;
  std::string action;
  for (auto* sub : app.get_subcommands()) {
    subcommand = sub->get_name();
    for (auto* inner : sub->get_subcommands()) action = inner->get_name();
  }
  if (subcommand == "transform") action = o.op;

  try {
    return run(subcommand, action, o);
  } catch (const qrand::FormatError& e) {
    if (e.kind() == qrand::FormatErrorKind::io) {
      std::cerr << "error: " << e.what() << "\n";
    } else {
      std::cerr << "error: malformed bitfile: " << e.what() << "\n";
    }
    return kExitUsage;
  } catch (const qrand::SourceError& e) {
    std::cerr << "error: " << (e.kind() == qrand::SourceErrorKind::short_file ? "short file: " : "invalid source: ")
              << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
