#include "qrand/omega.hpp"

#include <stdexcept>

namespace qrand::ait {

std::optional<bool> h_bit(const MachineStatus& status) {
  switch (status.outcome) {
    case Outcome::halted: return true;
    case Outcome::nonhalt_certified: return false;
    case Outcome::unknown: return std::nullopt;
  }
  return std::nullopt;
}

std::vector<HEntry> halting_sequence(std::size_t prefix_len, std::uint64_t budget) {
  if (prefix_len < 1) throw std::invalid_argument("halting_sequence: prefix_len must be >= 1");
  std::vector<HEntry> out;
  out.reserve(prefix_len);
  for (std::uint64_t i = 0; i < prefix_len; ++i) {
    ToyProgram p = program_at(i);
    MachineStatus s = run_program(p, budget);
    out.push_back({std::move(p), s});
  }
  return out;
}

DyadicRational kraft_sum(std::size_t max_len) {
  // Length 2k+1 holds 2^k codewords of weight 2^-(2k+1): 2^-(k+1) per length.
  DyadicRational sum;
  for (std::size_t k = 0; 2 * k + 1 <= max_len; ++k) sum += DyadicRational::power_of_half(k + 1);
  return sum;
}

OmegaBracket omega_bracket(std::size_t max_len, std::uint64_t budget) {
  OmegaBracket b;
  b.max_len = max_len;
  b.budget = budget;
  for (const ToyProgram& p : enumerate_programs(max_len)) {
    const MachineStatus s = run_program(p, budget);
    const auto weight = DyadicRational::power_of_half(p.codeword.size());
    switch (s.outcome) {
      case Outcome::halted:
        b.lower += weight;
        ++b.halted;
        break;
      case Outcome::nonhalt_certified: ++b.diverging; break;
      case Outcome::unknown:
        b.unresolved += weight;
        ++b.unknown;
        break;
    }
  }
  b.tail = DyadicRational(1, 0) - kraft_sum(max_len);
  return b;
}

DyadicRational omega_lower_bound(std::size_t max_len, std::uint64_t budget) {
  return omega_bracket(max_len, budget).lower;
}

DyadicRational OmegaPrefix::value() const {
  if (bits.size() != n) throw std::logic_error("OmegaPrefix: bit count differs from n");
  mpz_class v = 0;
  for (auto bit : bits) v = 2 * v + bit;
  return DyadicRational(v, bits.size());
}

OmegaPrefix OmegaPrefix::claimed(BitString bits) {
  OmegaPrefix p;
  p.n = bits.size();
  p.bits = std::move(bits);
  return p;
}

OmegaPrefix certify_omega_prefix(std::size_t n, std::uint64_t budget, std::size_t max_cut, CutPolicy policy) {
  OmegaPrefix result;
  result.n = n;
  result.budget = budget;
  for (std::size_t cut = std::max<std::size_t>(n, 1); cut <= max_cut; cut += 1) {
    const OmegaBracket b = omega_bracket(cut, budget);
    if (b.unknown > 0 && policy == CutPolicy::all_resolved) break;
    const mpz_class j = b.lower.floor_scaled(n);
    // Omega < (j + 1) / 2^n strictly, so the first n bits are those of j.
    if (b.upper() < DyadicRational(j + 1, n)) {
      for (std::size_t i = n; i-- > 0;) result.bits.push_back(mpz_tstbit(j.get_mpz_t(), static_cast<mp_bitcnt_t>(i)) != 0);
      result.certified = true;
      result.cut_length = cut;
      result.lower = b.lower;
      result.upper = b.upper();
      return result;
    }
  }
  return result;
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::halts: return "halts";
    case Decision::diverges: return "diverges";
    case Decision::unknown: return "unknown";
  }
  return "?";
}

void Dovetailer::advance() {
  if (started_) ++stage_;
  started_ = true;
  const std::uint64_t first_new = machines_.size();
  const std::uint64_t end = (std::uint64_t{1} << (stage_ + 1)) - 1;  // programs with k <= stage
  for (std::uint64_t i = first_new; i < end; ++i) {
    machines_.emplace_back(program_at(i));
    halted_.push_back(false);
  }
  for (std::uint64_t i = 0; i < machines_.size(); ++i) {
    if (halted_[i]) continue;
    if (machines_[i].run_until(stage_).outcome == Outcome::halted) {
      halted_[i] = true;
      measure_ += DyadicRational::power_of_half(program_at(i).codeword.size());
    }
  }
}

bool Dovetailer::has_halted(std::uint64_t index) const { return index < halted_.size() && halted_[index]; }

Decision chaitin_decider(const OmegaPrefix& omega, const ToyProgram& p, std::uint64_t max_stage) {
  if (!omega.certified) throw std::invalid_argument("chaitin_decider: Omega prefix is not certified");
  if (p.codeword.size() > omega.n) {
    throw std::invalid_argument("chaitin_decider: |p| = " + std::to_string(p.codeword.size()) +
                                " exceeds the prefix length " + std::to_string(omega.n));
  }
  const DyadicRational target = omega.value();
  Dovetailer d;
  d.advance();
  while (d.halted_measure() < target) {
    if (d.stage() >= max_stage) throw std::runtime_error("chaitin_decider: stage limit reached before the measure target");
    d.advance();
  }
  // Were p to halt later, Omega >= target + 2^-|p| >= target + 2^-n, contradicting the prefix.
  return d.has_halted(p.index) ? Decision::halts : Decision::diverges;
}

Decision h_decider(const std::vector<HEntry>& h_prefix, const ToyProgram& p) {
  if (p.index >= h_prefix.size()) {
    throw std::out_of_range("h_decider: program index " + std::to_string(p.index) + " outside the H prefix of " +
                            std::to_string(h_prefix.size()) + " entries");
  }
  const auto bit = h_bit(h_prefix[p.index].status);
  if (!bit) return Decision::unknown;
  return *bit ? Decision::halts : Decision::diverges;
}

}  // namespace qrand::ait
