#include "qrand/bitfile.hpp"

#include <cstring>
#include <fstream>
#include <iterator>

namespace qrand {

const char* to_string(FormatErrorKind kind) {
  switch (kind) {
    case FormatErrorKind::io: return "io";
    case FormatErrorKind::bad_magic: return "bad_magic";
    case FormatErrorKind::truncated_header: return "truncated_header";
    case FormatErrorKind::length_exceeds_payload: return "length_exceeds_payload";
    case FormatErrorKind::trailing_bytes: return "trailing_bytes";
    case FormatErrorKind::nonzero_padding: return "nonzero_padding";
  }
  return "unknown";
}

std::string encode_bitfile(const BitString& bits) {
  const std::uint64_t n = bits.size();
  std::string out(kBitfileHeaderSize + (n + 7) / 8, '\0');
  std::memcpy(out.data(), kBitfileMagic, 8);
  for (int i = 0; i < 8; ++i) out[8 + i] = static_cast<char>((n >> (8 * i)) & 0xFFU);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (bits[i]) out[kBitfileHeaderSize + i / 8] |= static_cast<char>(0x80U >> (i % 8));
  }
  return out;
}

BitString decode_bitfile(const std::string& bytes) {
  if (bytes.size() < 8) {
    if (bytes.compare(0, bytes.size(), kBitfileMagic, bytes.size()) != 0) {
      throw FormatError(FormatErrorKind::bad_magic, "magic mismatch");
    }
    throw FormatError(FormatErrorKind::truncated_header, "file shorter than 16-byte header");
  }
  if (bytes.compare(0, 8, kBitfileMagic, 8) != 0) {
    throw FormatError(FormatErrorKind::bad_magic, "expected QRBITS01");
  }
  if (bytes.size() < kBitfileHeaderSize) {
    throw FormatError(FormatErrorKind::truncated_header, "file shorter than 16-byte header");
  }
  std::uint64_t n = 0;
  for (int i = 0; i < 8; ++i) n |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[8 + i])) << (8 * i);

  const std::uint64_t payload = bytes.size() - kBitfileHeaderSize;
  const std::uint64_t needed = n / 8 + (n % 8 != 0 ? 1 : 0);
  if (needed > payload) {
    throw FormatError(FormatErrorKind::length_exceeds_payload,
                      "declared " + std::to_string(n) + " bits, payload holds " + std::to_string(payload * 8));
  }
  if (needed < payload) {
    throw FormatError(FormatErrorKind::trailing_bytes, std::to_string(payload - needed) + " extra payload bytes");
  }

  BitString out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto byte = static_cast<unsigned char>(bytes[kBitfileHeaderSize + i / 8]);
    out.push_back((byte >> (7 - i % 8)) & 1U);
  }
  if (n % 8 != 0) {
    const auto last = static_cast<unsigned char>(bytes.back());
    const unsigned pad_mask = (1U << (8 - n % 8)) - 1U;
    if ((last & pad_mask) != 0) throw FormatError(FormatErrorKind::nonzero_padding, "pad bits must be zero");
  }
  return out;
}

void write_bits(const BitString& bits, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(FormatErrorKind::io, "cannot open for writing: " + path.string());
  const std::string bytes = encode_bitfile(bits);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError(FormatErrorKind::io, "write failed: " + path.string());
}

BitString read_bits(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatErrorKind::io, "cannot open for reading: " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_bitfile(bytes);
}

}  // namespace qrand
