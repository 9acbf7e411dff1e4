#pragma once

// Block hash: the source is cut into consecutive blocks of B bits and each
// block is replaced by its color. A tail block of at most k bits cannot be
// told apart by color, so it is copied verbatim.
//
// Serialized layout, MSB first:
//   [B:8][k:8][variant:4][tail verbatim:1][colors or verbatim tail ...]

#include <cstdint>
#include <optional>
#include <vector>

#include "delcode/bits.hpp"
#include "delcode/oracle.hpp"

namespace delcode {

inline constexpr unsigned kHash2HeaderBits = 21;
inline constexpr unsigned kMaxDefaultBlockLen = 12;

/// min(ceil(log2 len), 12), raised to k + 1 when needed.
unsigned default_block_len(std::size_t source_length, unsigned k);

/// Digest geometry, a pure function of (source_length, B, k, variant).
struct Hash2Layout {
  std::size_t source_length = 0;
  unsigned block_len = 0;
  unsigned k = 0;
  TableVariant variant = TableVariant::kDeletion;
  std::size_t full_blocks = 0;
  unsigned tail_len = 0;  // 0 when B divides the source length
  bool tail_verbatim = false;
  unsigned block_width = 0;  // color width of the length-B table
  unsigned tail_width = 0;   // color width of the tail table, or tail_len when verbatim
  std::size_t total_bits = 0;

  std::size_t block_count() const noexcept { return full_blocks + (tail_len > 0 ? 1 : 0); }
};

/// Validates B > k and B <= table cap; builds (or fetches) the tables needed.
Hash2Layout hash2_layout(std::size_t source_length, unsigned block_len, unsigned k, TableVariant variant);

struct Hash2Digest {
  Hash2Layout layout;
  std::vector<std::uint32_t> colors;  // one per hashed block
  BitString verbatim_tail;            // set when layout.tail_verbatim

  BitString to_bits() const;
  /// Parses a serialized digest for a known source length; nullopt if the
  /// header or length is inconsistent.
  static std::optional<Hash2Digest> parse(const BitString& bits, std::size_t source_length);
  /// As above, but the header must match `expected` exactly, so untrusted
  /// input never triggers a table build.
  static std::optional<Hash2Digest> parse(const BitString& bits, const Hash2Layout& expected);
};

Hash2Digest hash2(const BitString& s, unsigned block_len, unsigned k, TableVariant variant);
/// Serialized hash2 of 0^(padded_length - |w|) w without materializing the padding.
BitString hash2_padded_bits(const BitString& w, std::size_t padded_length, const Hash2Layout& layout);

/// Deletion channel: |y| in [source_length - k, source_length].
std::optional<BitString> hash2_decode(const BitString& y, const Hash2Digest& digest, std::size_t source_length);

/// Insertion/deletion channel with at most k total edits; the digest must
/// come from an indel table variant.
std::optional<BitString> hash2_decode_indel(const BitString& y, const Hash2Digest& digest, std::size_t source_length,
                                            unsigned k);

}  // namespace delcode
