#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qrand/bitstring.hpp"

namespace qrand {

enum class SourceKind { champernowne, pi_fraction, prng, quantum_sim, file };

std::string_view to_string(SourceKind kind);
/// Accepts the kebab-case names used on the command line ("pi-fraction", "quantum-sim", ...).
std::optional<SourceKind> parse_source_kind(std::string_view name);

// Declarative generator description. prng and quantum-sim require a seed,
// file requires a path, and nothing else may carry either.
struct SourceSpec {
  SourceKind kind = SourceKind::champernowne;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> path;

  static SourceSpec champernowne() { return {SourceKind::champernowne, std::nullopt, std::nullopt}; }
  static SourceSpec pi_fraction() { return {SourceKind::pi_fraction, std::nullopt, std::nullopt}; }
  static SourceSpec prng(std::uint64_t seed) { return {SourceKind::prng, seed, std::nullopt}; }
  static SourceSpec quantum_sim(std::uint64_t seed) { return {SourceKind::quantum_sim, seed, std::nullopt}; }
  static SourceSpec file(std::filesystem::path p) { return {SourceKind::file, std::nullopt, std::move(p)}; }

  /// Throws SourceError(invalid_spec) when the seed/path invariants are violated.
  void validate() const;
  std::string describe() const;

  friend bool operator==(const SourceSpec&, const SourceSpec&) = default;
};

enum class SourceErrorKind { invalid_spec, short_file };

class SourceError : public std::runtime_error {
 public:
  SourceError(SourceErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  SourceErrorKind kind() const { return kind_; }

 private:
  SourceErrorKind kind_;
};

/// First n bits of the binary Champernowne sequence: 0 1 00 01 10 11 000 ...
BitString champernowne_prefix(std::size_t n);

/// First n bits after the binary point of pi. Exact: pi is evaluated with
/// directed rounding toward zero, which makes truncation to n bits exact.
BitString pi_fractional_bits(std::size_t n);

/// 0 -> 001, 1 -> 100.
BitString expand_001_100(const BitString& z);

/// Deterministic in (spec, n); every kind is prefix-stable in n.
/// file kind: FormatError for a missing/corrupt file, SourceError(short_file)
/// when the file holds fewer than n bits.
BitString generate(const SourceSpec& spec, std::size_t n);

}  // namespace qrand
