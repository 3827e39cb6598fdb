#include "qrand/predictor.hpp"

#include <charconv>
#include <map>
#include <stdexcept>

namespace qrand::predict {

namespace {

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string(what) + ": expected an unsigned integer, got '" + std::string(text) + "'");
  }
  return v;
}

// "kind" or "kind:seed" for computable sources.
SourceSpec parse_replay_source(std::string_view text) {
  const auto colon = text.find(':');
  const auto kind = parse_source_kind(text.substr(0, colon));
  if (!kind) throw std::invalid_argument("unknown source kind in '" + std::string(text) + "'");
  SourceSpec spec{*kind, std::nullopt, std::nullopt};
  if (colon != std::string_view::npos) spec.seed = parse_u64(text.substr(colon + 1), "source seed");
  spec.validate();
  return spec;
}

std::uint64_t context_value(const BitString& w, std::size_t from, unsigned k) {
  std::uint64_t v = 0;
  for (unsigned j = 0; j < k; ++j) v = (v << 1) | w[from + j];
  return v;
}

std::optional<bool> majority_of(std::uint64_t zeros, std::uint64_t ones) {
  if (zeros == ones) return std::nullopt;
  return ones > zeros;
}

// Incremental evaluation over one fixed sequence; equals Predictor::predict
// on each prefix.
class Evaluator {
 public:
  Evaluator(const Predictor& p, std::size_t horizon) : p_(p) {
    if (p.kind == PredictorKind::markov) counts_.assign(std::size_t{2} << p.order, 0);
    if (p.kind == PredictorKind::champernowne_oracle) replay_ = champernowne_prefix(horizon);
    if (p.kind == PredictorKind::source_replay) replay_ = generate(p.replay_source, horizon);
  }

  std::optional<bool> next() const {
    switch (p_.kind) {
      case PredictorKind::constant: return p_.bit;
      case PredictorKind::majority: return majority_of(position_ - ones_, ones_);
      case PredictorKind::markov: {
        if (position_ < p_.order) return std::nullopt;
        const std::uint64_t ctx = context_ & mask();
        return majority_of(counts_[2 * ctx], counts_[2 * ctx + 1]);
      }
      case PredictorKind::champernowne_oracle:
      case PredictorKind::source_replay: return replay_[position_] != 0;
      case PredictorKind::block_aware: return block_aware_guess();
    }
    return std::nullopt;
  }

  void observe(bool bit) {
    if (p_.kind == PredictorKind::markov && position_ >= p_.order) {
      ++counts_[2 * (context_ & mask()) + (bit ? 1 : 0)];
    }
    context_ = (context_ << 1) | (bit ? 1U : 0U);
    if (position_ % 3 == 0) block_first_ = bit;
    ones_ += bit ? 1 : 0;
    ++position_;
  }

 private:
  std::uint64_t mask() const { return (std::uint64_t{1} << p_.order) - 1; }

  std::optional<bool> block_aware_guess() const {
    switch (position_ % 3) {
      case 1: return false;
      case 2: return !block_first_;
      default: return std::nullopt;
    }
  }

  const Predictor& p_;
  std::uint64_t position_ = 0;
  std::uint64_t ones_ = 0;
  std::uint64_t context_ = 0;
  bool block_first_ = false;
  std::vector<std::uint64_t> counts_;
  BitString replay_;
};

}  // namespace

Predictor Predictor::markov(unsigned k) {
  if (k < 1 || k > kMaxMarkovOrder) throw std::invalid_argument("markov: order must be in 1.." + std::to_string(kMaxMarkovOrder));
  return {PredictorKind::markov, false, k, {}};
}

Predictor Predictor::source_replay(SourceSpec spec) {
  spec.validate();
  if (spec.kind == SourceKind::quantum_sim || spec.kind == SourceKind::file) {
    throw std::invalid_argument("source-replay: only computable reference sources (champernowne, pi-fraction, prng) can be replayed");
  }
  Predictor p;
  p.kind = PredictorKind::source_replay;
  p.replay_source = std::move(spec);
  return p;
}

Predictor Predictor::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "constant") {
    if (arg != "0" && arg != "1") throw std::invalid_argument("constant predictor needs :0 or :1");
    return constant(arg == "1");
  }
  if (head == "markov") return markov(static_cast<unsigned>(parse_u64(arg, "markov order")));
  if (head == "source-replay") return source_replay(parse_replay_source(arg));
  if (!arg.empty()) throw std::invalid_argument("predictor '" + std::string(head) + "' takes no argument");
  if (head == "majority") return majority();
  if (head == "champernowne-oracle") return champernowne_oracle();
  if (head == "block-aware") return block_aware();
  throw std::invalid_argument("unknown predictor '" + std::string(text) + "'");
}

std::string Predictor::name() const {
  switch (kind) {
    case PredictorKind::constant: return bit ? "constant:1" : "constant:0";
    case PredictorKind::majority: return "majority";
    case PredictorKind::markov: return "markov:" + std::to_string(order);
    case PredictorKind::champernowne_oracle: return "champernowne-oracle";
    case PredictorKind::block_aware: return "block-aware";
    case PredictorKind::source_replay: return "source-replay:" + replay_source.describe();
  }
  return "unknown";
}

std::optional<bool> Predictor::predict(const BitString& w) const {
  const std::size_t n = w.size();
  switch (kind) {
    case PredictorKind::constant: return bit;
    case PredictorKind::majority: {
      const std::size_t ones = w.count_ones();
      return majority_of(n - ones, ones);
    }
    case PredictorKind::markov: {
      if (n < order) return std::nullopt;
      const std::uint64_t ctx = context_value(w, n - order, order);
      std::uint64_t succ[2] = {0, 0};
      for (std::size_t j = 0; j + order < n; ++j) {
        if (context_value(w, j, order) == ctx) ++succ[w[j + order]];
      }
      return majority_of(succ[0], succ[1]);
    }
    case PredictorKind::champernowne_oracle: return champernowne_prefix(n + 1)[n] != 0;
    case PredictorKind::source_replay: return generate(replay_source, n + 1)[n] != 0;
    case PredictorKind::block_aware:
      if (n % 3 == 1) return false;
      if (n % 3 == 2) return w[n - 2] == 0;
      return std::nullopt;
  }
  return std::nullopt;
}

std::vector<Predictor> builtin_predictors() {
  return {Predictor::constant(false),
          Predictor::constant(true),
          Predictor::majority(),
          Predictor::markov(1),
          Predictor::markov(2),
          Predictor::markov(4),
          Predictor::markov(8),
          Predictor::champernowne_oracle(),
          Predictor::block_aware(),
          Predictor::source_replay(SourceSpec::pi_fraction()),
          Predictor::source_replay(SourceSpec::prng(1))};
}

std::optional<Rational> PredictionReport::hit_rate() const {
  if (attempts == 0) return std::nullopt;
  return Rational(static_cast<std::int64_t>(hits), attempts);
}

PredictionReport predict_run(const BitString& x, const Predictor& p, bool keep_log) {
  if (x.size() < 2) throw std::invalid_argument("predict_run: need |x| >= 2");
  PredictionReport report;
  Evaluator eval(p, x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool actual = x[i] != 0;
    if (const auto guess = eval.next()) {
      ++report.attempts;
      if (*guess == actual) ++report.hits;
      if (keep_log) report.log.push_back({i, *guess, actual});
    } else {
      ++report.abstentions;
    }
    eval.observe(actual);
  }
  return report;
}

PhiResult predictor_to_phi(const BitString& x, const Predictor& p) {
  PhiResult phi;
  if (x.empty()) return phi;
  Evaluator eval(p, x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool actual = x[i] != 0;
    if (const auto guess = eval.next()) {
      phi.domain.emplace_back(i, *guess);
      if (*guess != actual) phi.disagreements.push_back(i);
    }
    eval.observe(actual);
  }
  return phi;
}

PairEnumerator PairEnumerator::prefix_echo(std::size_t budget) {
  PairEnumerator e;
  e.kind = EnumeratorKind::prefix_echo;
  e.budget = budget;
  return e;
}

PairEnumerator PairEnumerator::constant_v(BitString v, std::size_t budget) {
  PairEnumerator e;
  e.kind = EnumeratorKind::constant_v;
  e.v = std::move(v);
  e.budget = budget;
  return e;
}

PairEnumerator PairEnumerator::source_replay(SourceSpec spec, std::size_t budget, std::size_t v_length) {
  spec.validate();
  if (spec.kind == SourceKind::file) throw std::invalid_argument("source-replay enumerator needs a generated source");
  if (v_length == 0) throw std::invalid_argument("source-replay enumerator needs |v| >= 1");
  PairEnumerator e;
  e.kind = EnumeratorKind::source_replay;
  e.source = std::move(spec);
  e.v_length = v_length;
  e.budget = budget;
  return e;
}

PairEnumerator PairEnumerator::parse(std::string_view text, std::size_t budget, std::size_t v_length) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "prefix-echo" && arg.empty()) return prefix_echo(budget);
  if (head == "constant-v") return constant_v(BitString(arg), budget);
  if (head == "source-replay") return source_replay(parse_replay_source(arg), budget, v_length);
  throw std::invalid_argument("unknown enumerator '" + std::string(text) + "'");
}

std::string PairEnumerator::name() const {
  switch (kind) {
    case EnumeratorKind::prefix_echo: return "prefix-echo";
    case EnumeratorKind::constant_v: return "constant-v:" + v.to_string();
    case EnumeratorKind::source_replay: return "source-replay:" + source.describe();
  }
  return "unknown";
}

std::vector<RelationPair> emit_pairs(const PairEnumerator& e, const BitString& x) {
  std::vector<RelationPair> pairs;
  switch (e.kind) {
    case EnumeratorKind::prefix_echo:
      // (x_1..x_k, x_{k+1}..x_{2k}) while both halves fit.
      for (std::size_t k = 1; k <= e.budget && 2 * k <= x.size(); ++k) {
        pairs.push_back({x.prefix(k), x.slice(k, k)});
      }
      break;
    case EnumeratorKind::constant_v: {
      // u runs over all strings in length-then-lexicographic order, starting with the empty string.
      for (unsigned len = 0; pairs.size() < e.budget; ++len) {
        const std::uint64_t count = std::uint64_t{1} << len;
        for (std::uint64_t word = 0; word < count && pairs.size() < e.budget; ++word) {
          BitString u;
          for (unsigned b = len; b-- > 0;) u.push_back((word >> b) & 1U);
          pairs.push_back({std::move(u), e.v});
        }
      }
      break;
    }
    case EnumeratorKind::source_replay: {
      const BitString s = generate(e.source, e.budget + e.v_length);
      for (std::size_t k = 1; k <= e.budget; ++k) pairs.push_back({s.prefix(k), s.slice(k, e.v_length)});
      break;
    }
  }
  return pairs;
}

ScanResult correlation_scan(const BitString& x, const PairEnumerator& e) {
  ScanResult result;
  for (auto& pair : emit_pairs(e, x)) {
    ++result.emitted;
    if (!pair.u.is_prefix_of(x)) continue;
    if (pair.u.size() + pair.v.size() > x.size()) continue;
    bool match = true;
    for (std::size_t i = 0; i < pair.v.size() && match; ++i) match = pair.v[i] == x[pair.u.size() + i];
    if (match) result.confirmed.push_back(std::move(pair));
  }
  return result;
}

std::vector<std::pair<std::uint64_t, bool>> pairs_to_phi(const std::vector<RelationPair>& pairs) {
  std::map<std::uint64_t, bool> phi;
  for (const auto& [u, v] : pairs) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto [it, inserted] = phi.emplace(u.size() + i, v[i] != 0);
      if (!inserted && it->second != (v[i] != 0)) {
        throw std::logic_error("pairs_to_phi: pairs disagree at position " + std::to_string(it->first));
      }
    }
  }
  return {phi.begin(), phi.end()};
}

}  // namespace qrand::predict
