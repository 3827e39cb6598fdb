#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "qrand/bitstring.hpp"

namespace qrand {

// On-disk layout: "QRBITS01", u64 little-endian bit count, payload packed
// MSB-first, 8 bits per byte, pad bits zero.
inline constexpr char kBitfileMagic[] = "QRBITS01";
inline constexpr std::size_t kBitfileHeaderSize = 16;

enum class FormatErrorKind {
  io,                      // missing, unreadable or unwritable file
  bad_magic,
  truncated_header,        // fewer than 16 bytes
  length_exceeds_payload,  // declared bit count needs more bytes than present
  trailing_bytes,          // payload longer than the declared bit count needs
  nonzero_padding,
};

const char* to_string(FormatErrorKind kind);

class FormatError : public std::runtime_error {
 public:
  FormatError(FormatErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  FormatErrorKind kind() const { return kind_; }

 private:
  FormatErrorKind kind_;
};

void write_bits(const BitString& bits, const std::filesystem::path& path);
BitString read_bits(const std::filesystem::path& path);

/// In-memory encode/decode; the file functions are thin wrappers over these.
std::string encode_bitfile(const BitString& bits);
BitString decode_bitfile(const std::string& bytes);

}  // namespace qrand
