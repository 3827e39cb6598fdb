#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qrand/bitstring.hpp"
#include "qrand/rational.hpp"
#include "qrand/sources.hpp"

namespace qrand::predict {

enum class PredictorKind { constant, majority, markov, champernowne_oracle, block_aware, source_replay };

// A next-bit predictor. Pred(w) is either a bit or an abstention, and depends
// only on w; partiality is modelled by abstaining.
struct Predictor {
  PredictorKind kind = PredictorKind::majority;
  bool bit = false;              // constant
  unsigned order = 0;            // markov context length
  SourceSpec replay_source{};    // source_replay

  static Predictor constant(bool b) { return {PredictorKind::constant, b, 0, {}}; }
  static Predictor majority() { return {PredictorKind::majority, false, 0, {}}; }
  static Predictor markov(unsigned k);
  static Predictor champernowne_oracle() { return {PredictorKind::champernowne_oracle, false, 0, {}}; }
  static Predictor block_aware() { return {PredictorKind::block_aware, false, 0, {}}; }
  /// Replays a computable source. quantum-sim is an opaque source and file
  /// sources are data, so both are rejected.
  static Predictor source_replay(SourceSpec spec);

  /// "constant:1", "majority", "markov:3", "champernowne-oracle", "block-aware",
  /// "source-replay:pi-fraction", "source-replay:prng:7".
  static Predictor parse(std::string_view text);
  std::string name() const;

  /// Stateless definition: the prediction for the next bit after prefix w.
  std::optional<bool> predict(const BitString& w) const;

  friend bool operator==(const Predictor&, const Predictor&) = default;
};

inline constexpr unsigned kMaxMarkovOrder = 20;

/// The fixed roster used for batch experiments.
std::vector<Predictor> builtin_predictors();

struct PredictionLogEntry {
  std::uint64_t position;
  bool predicted;
  bool actual;
};

struct PredictionReport {
  std::uint64_t attempts = 0;
  std::uint64_t hits = 0;
  std::uint64_t abstentions = 0;
  std::vector<PredictionLogEntry> log;

  /// hits / attempts; empty when nothing was attempted.
  std::optional<Rational> hit_rate() const;
};

/// Scores p on every proper prefix of x in increasing length. Requires |x| >= 2.
PredictionReport predict_run(const BitString& x, const Predictor& p, bool keep_log = false);

struct PhiResult {
  // (position, predicted bit), increasing positions; position n guesses x[n] (zero-based).
  std::vector<std::pair<std::uint64_t, bool>> domain;
  std::vector<std::uint64_t> disagreements;
};

PhiResult predictor_to_phi(const BitString& x, const Predictor& p);

enum class EnumeratorKind { prefix_echo, constant_v, source_replay };

struct PairEnumerator {
  EnumeratorKind kind = EnumeratorKind::prefix_echo;
  BitString v;                   // constant_v
  SourceSpec source{};           // source_replay
  std::size_t v_length = 16;     // source_replay
  std::size_t budget = 100;

  static PairEnumerator prefix_echo(std::size_t budget);
  static PairEnumerator constant_v(BitString v, std::size_t budget);
  static PairEnumerator source_replay(SourceSpec spec, std::size_t budget, std::size_t v_length = 16);

  /// "prefix-echo", "constant-v:0101", "source-replay:champernowne", "source-replay:prng:7".
  static PairEnumerator parse(std::string_view text, std::size_t budget, std::size_t v_length = 16);
  std::string name() const;
};

struct RelationPair {
  BitString u;
  BitString v;
  friend bool operator==(const RelationPair&, const RelationPair&) = default;
};

/// The deterministic pair stream of an enumerator; prefix_echo draws from x.
std::vector<RelationPair> emit_pairs(const PairEnumerator& e, const BitString& x);

struct ScanResult {
  std::uint64_t emitted = 0;
  std::vector<RelationPair> confirmed;
};

/// Confirms (u, v) iff uv is a prefix of x; emission order is preserved.
ScanResult correlation_scan(const BitString& x, const PairEnumerator& e);

/// Positions |u| .. |u|+|v|-1 take the bits of v. Conflicting assignments throw std::logic_error.
std::vector<std::pair<std::uint64_t, bool>> pairs_to_phi(const std::vector<RelationPair>& pairs);

}  // namespace qrand::predict
