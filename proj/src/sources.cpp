#include "qrand/sources.hpp"

#include <mpfr.h>
#include <sodium.h>

#include <array>
#include <cstring>
#include <random>
#include <vector>

#include "qrand/bitfile.hpp"

namespace qrand {

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::champernowne: return "champernowne";
    case SourceKind::pi_fraction: return "pi-fraction";
    case SourceKind::prng: return "prng";
    case SourceKind::quantum_sim: return "quantum-sim";
    case SourceKind::file: return "file";
  }
  return "unknown";
}

std::optional<SourceKind> parse_source_kind(std::string_view name) {
  for (SourceKind k : {SourceKind::champernowne, SourceKind::pi_fraction, SourceKind::prng, SourceKind::quantum_sim,
                       SourceKind::file}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

void SourceSpec::validate() const {
  const bool seeded = kind == SourceKind::prng || kind == SourceKind::quantum_sim;
  const std::string name(to_string(kind));
  if (seeded && !seed) throw SourceError(SourceErrorKind::invalid_spec, name + " requires a seed");
  if (!seeded && seed) throw SourceError(SourceErrorKind::invalid_spec, name + " does not take a seed");
  if (kind == SourceKind::file && !path) throw SourceError(SourceErrorKind::invalid_spec, "file source requires a path");
  if (kind != SourceKind::file && path) throw SourceError(SourceErrorKind::invalid_spec, name + " does not take a path");
}

std::string SourceSpec::describe() const {
  std::string s(to_string(kind));
  if (seed) s += ":" + std::to_string(*seed);
  if (path) s += ":" + path->string();
  return s;
}

BitString champernowne_prefix(std::size_t n) {
  BitString out;
  out.reserve(n);
  for (unsigned len = 1; out.size() < n; ++len) {
    const std::uint64_t count = std::uint64_t{1} << len;
    for (std::uint64_t word = 0; word < count && out.size() < n; ++word) {
      for (unsigned b = len; b-- > 0 && out.size() < n;) out.push_back((word >> b) & 1U);
    }
  }
  return out;
}

namespace {

struct MpfrVar {
  explicit MpfrVar(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~MpfrVar() { mpfr_clear(v); }
  MpfrVar(const MpfrVar&) = delete;
  MpfrVar& operator=(const MpfrVar&) = delete;
  mpfr_t v;
};

struct MpzVar {
  MpzVar() { mpz_init(v); }
  ~MpzVar() { mpz_clear(v); }
  MpzVar(const MpzVar&) = delete;
  MpzVar& operator=(const MpzVar&) = delete;
  mpz_t v;
};

}  // namespace

BitString pi_fractional_bits(std::size_t n) {
  if (n == 0) return {};
  // v <= pi < v + 2^(2-prec). Subtracting 3 and scaling by 2^n are exact, and
  // floor((pi - 3) * 2^n) == floor((v - 3) * 2^n) because the error stays below
  // one unit of the 2^(n+guard)-scaled integer.
  MpfrVar pi(static_cast<mpfr_prec_t>(n) + 64);
  mpfr_const_pi(pi.v, MPFR_RNDD);
  mpfr_sub_ui(pi.v, pi.v, 3, MPFR_RNDD);
  mpfr_mul_2ui(pi.v, pi.v, static_cast<unsigned long>(n), MPFR_RNDD);
  MpzVar scaled;
  mpfr_get_z(scaled.v, pi.v, MPFR_RNDD);
  mpfr_free_cache();

  BitString out;
  out.reserve(n);
  for (std::size_t i = n; i-- > 0;) out.push_back(mpz_tstbit(scaled.v, static_cast<mp_bitcnt_t>(i)) != 0);
  return out;
}

BitString expand_001_100(const BitString& z) {
  BitString out;
  out.reserve(3 * z.size());
  for (auto bit : z) {
    out.push_back(bit != 0);
    out.push_back(false);
    out.push_back(bit == 0);
  }
  return out;
}

namespace {

BitString bytes_to_bits(const std::vector<unsigned char>& bytes, std::size_t n) {
  BitString out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back((bytes[i / 8] >> (7 - i % 8)) & 1U);
  return out;
}

BitString prng_bits(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 engine(seed);
  BitString out;
  out.reserve(n);
  while (out.size() < n) {
    const std::uint64_t word = engine();
    for (int b = 63; b >= 0 && out.size() < n; --b) out.push_back((word >> b) & 1U);
  }
  return out;
}

// ChaCha20 keystream keyed by the 64-bit seed (little-endian) followed by a
// fixed domain tag; the keystream is prefix-stable in its length.
BitString quantum_sim_bits(std::uint64_t seed, std::size_t n) {
  static const bool sodium_ready = sodium_init() >= 0;
  if (!sodium_ready) throw std::runtime_error("libsodium initialisation failed");

  std::array<unsigned char, randombytes_SEEDBYTES> key{};
  for (int i = 0; i < 8; ++i) key[i] = static_cast<unsigned char>((seed >> (8 * i)) & 0xFFU);
  static constexpr char kTag[] = "qrand/quantum-sim/v1";
  std::memcpy(key.data() + 8, kTag, std::min(sizeof(kTag) - 1, key.size() - 8));

  std::vector<unsigned char> bytes((n + 7) / 8);
  randombytes_buf_deterministic(bytes.data(), bytes.size(), key.data());
  return bytes_to_bits(bytes, n);
}

}  // namespace

BitString generate(const SourceSpec& spec, std::size_t n) {
  spec.validate();
  switch (spec.kind) {
    case SourceKind::champernowne: return champernowne_prefix(n);
    case SourceKind::pi_fraction: return pi_fractional_bits(n);
    case SourceKind::prng: return prng_bits(*spec.seed, n);
    case SourceKind::quantum_sim: return quantum_sim_bits(*spec.seed, n);
    case SourceKind::file: {
      BitString all = read_bits(*spec.path);
      if (all.size() < n) {
        throw SourceError(SourceErrorKind::short_file, "file holds " + std::to_string(all.size()) +
                                                           " bits, requested " + std::to_string(n));
      }
      return all.prefix(n);
    }
  }
  throw SourceError(SourceErrorKind::invalid_spec, "unknown source kind");
}

}  // namespace qrand
