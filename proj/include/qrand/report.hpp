#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrand/bitstring.hpp"
#include "qrand/dyadic.hpp"
#include "qrand/omega.hpp"
#include "qrand/predictor.hpp"
#include "qrand/sources.hpp"
#include "qrand/stat_tests.hpp"

namespace qrand::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// Everything needed to rerun an experiment. Serialized verbatim into each report.
struct RunConfig {
  std::string subcommand;          // generate | transform | test | predict | scan | ait | report
  std::string action;              // ait: enumerate | omega | halting; transform: expand-001-100
  std::optional<SourceSpec> source;
  std::optional<std::uint64_t> n;  // bits to take; whole file when absent for file sources
  std::vector<std::string> tests{"freq", "borel", "autocorr"};
  unsigned m_max = 4;
  std::size_t lag = 8;
  std::vector<std::string> predictors;  // empty: built-in roster
  bool log = false;
  std::string enumerator = "source-replay:champernowne";
  std::size_t v_length = 16;
  std::size_t scan_budget = 100;   // pairs emitted by scan
  std::uint64_t budget = 10000;    // toy-machine steps
  std::size_t max_len = 9;
  std::size_t omega_bits = 5;
  std::size_t h_length = 32;
  std::optional<std::string> out_path;
  int schema_version = kSchemaVersion;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::json to_json(const RunConfig& config);
/// Throws std::invalid_argument on missing or ill-typed fields.
RunConfig config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const ait::DyadicRational& d);
nlohmann::json to_json(const stats::TestVerdict& v);
nlohmann::json to_json(const predict::PredictionReport& r);
nlohmann::json to_json(const ait::MachineStatus& s);
nlohmann::json to_json(const ait::OmegaBracket& b);
nlohmann::json to_json(const ait::OmegaPrefix& p);

struct Report {
  RunConfig config;
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json timings = nlohmann::json::object();
  bool all_pass = true;  // test outcome drives the exit code

  /// {schema_version, config, results, timings, version}
  nlohmann::json to_json() const;
};

/// Serialized report with the timings field removed; identical configs give identical strings.
std::string deterministic_dump(const nlohmann::json& report);

/// Structural schema check; returns human-readable problems, empty when valid.
std::vector<std::string> validate_report(const nlohmann::json& report);

/// Bits described by the config's source and n.
BitString load_input(const RunConfig& config);

Report run_generate(const RunConfig& config);
Report run_transform(const RunConfig& config);
Report run_test(const RunConfig& config);
Report run_predict(const RunConfig& config);
Report run_scan(const RunConfig& config);
Report run_ait(const RunConfig& config);
/// Full battery: tests, every predictor, one correlation scan, Omega and H.
Report run_suite(const RunConfig& config);

/// Dispatches on config.subcommand.
Report execute(const RunConfig& config);

}  // namespace qrand::cli
