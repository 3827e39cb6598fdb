#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qrand/bitstring.hpp"
#include "qrand/dyadic.hpp"
#include "qrand/toy_machine.hpp"

namespace qrand::ait {

struct HEntry {
  ToyProgram program;
  MachineStatus status;
};

/// 1 for halted, 0 for certified non-halt, nothing for unknown.
std::optional<bool> h_bit(const MachineStatus& status);

/// Entries 0..prefix_len-1 of the halting sequence under the given step budget.
std::vector<HEntry> halting_sequence(std::size_t prefix_len, std::uint64_t budget);

/// Exact sum of 2^-|p| over programs with |p| <= max_len that halt within budget.
DyadicRational omega_lower_bound(std::size_t max_len, std::uint64_t budget);

/// Omega lies in [lower, upper]: upper adds the mass of unknown programs up to
/// max_len and the Kraft mass of every longer codeword.
struct OmegaBracket {
  std::size_t max_len = 0;
  std::uint64_t budget = 0;
  DyadicRational lower;
  DyadicRational unresolved;
  DyadicRational tail;
  std::uint64_t halted = 0;
  std::uint64_t diverging = 0;
  std::uint64_t unknown = 0;

  DyadicRational upper() const { return lower + unresolved + tail; }
};

OmegaBracket omega_bracket(std::size_t max_len, std::uint64_t budget);

/// Kraft sum of all codewords of length <= max_len.
DyadicRational kraft_sum(std::size_t max_len);

/// First n bits of Omega. Only certify_omega_prefix produces certified prefixes.
struct OmegaPrefix {
  std::size_t n = 0;
  BitString bits;  // empty unless certified
  bool certified = false;
  std::size_t cut_length = 0;  // every program up to this length was resolved
  std::uint64_t budget = 0;
  DyadicRational lower;
  DyadicRational upper;

  /// 0.w1...wn as an exact value.
  DyadicRational value() const;
  /// A claimed prefix with no certificate attached; deciders reject it.
  static OmegaPrefix claimed(BitString bits);
};

enum class CutPolicy {
  all_resolved,     // every program below the cut must be resolved
  fold_unresolved,  // unknown programs below the cut count toward the upper bound
};

/// Grows the cut from n until the bracket pins bits 1..n. Returns
/// certified == false if that fails before max_cut.
OmegaPrefix certify_omega_prefix(std::size_t n, std::uint64_t budget, std::size_t max_cut = 25,
                                 CutPolicy policy = CutPolicy::all_resolved);

enum class Decision { halts, diverges, unknown };
const char* to_string(Decision d);

/// Stage t runs every program with k <= t for up to t steps; halted measure
/// only grows and does not depend on the order programs are stepped in.
class Dovetailer {
 public:
  void advance();
  std::uint64_t stage() const { return stage_; }
  const DyadicRational& halted_measure() const { return measure_; }
  bool has_halted(std::uint64_t index) const;

 private:
  std::uint64_t stage_ = 0;
  bool started_ = false;
  std::vector<ToyMachine> machines_;
  std::vector<bool> halted_;
  DyadicRational measure_;
};

/// Dovetails until the halted measure reaches 0.w1...wn; p halts iff it has
/// halted by then. Throws std::invalid_argument for an uncertified prefix or
/// |p| > n, std::runtime_error if max_stage is reached first.
Decision chaitin_decider(const OmegaPrefix& omega, const ToyProgram& p, std::uint64_t max_stage = 22);

/// Reads p's entry. Throws std::out_of_range if p lies beyond the prefix.
Decision h_decider(const std::vector<HEntry>& h_prefix, const ToyProgram& p);

}  // namespace qrand::ait
