#pragma once

// Full codec. A codeword is the concatenation
//
//   r | t | rep_f(hash2(t)) | H_mixed(r) | rep_f(hash2(H_mixed(r)))
//
// where t is the mixing template, r = mu(s, t), and f is k + 1 for the
// deletion channel or 3k + 1 for the insertion/deletion channel.
// Parameters travel out of band.

#include <array>
#include <cstddef>
#include <optional>

#include "delcode/bits.hpp"
#include "delcode/block_hash.hpp"
#include "delcode/mixer.hpp"

namespace delcode {

BitString rep_encode(const BitString& x, unsigned f);
/// Bit i is y[f*i]; exact under at most f - 1 deletions.
std::optional<BitString> rep_decode_deletions(const BitString& y, unsigned f, std::size_t original_bits);
/// Bit i is the majority of y[f*i, f*i + f), clamped to y; a tie fails.
std::optional<BitString> rep_decode_indel(const BitString& y, unsigned f, std::size_t original_bits, unsigned k);

enum class Segment { kR = 0, kT = 1, kRepHashT = 2, kMixed = 3, kRepHashMixed = 4 };
inline constexpr std::size_t kSegmentCount = 5;
const char* segment_name(Segment s);

struct Span {
  std::size_t offset = 0;
  std::size_t length = 0;
  std::size_t end() const noexcept { return offset + length; }
};

struct CodewordGeometry {
  std::array<Span, kSegmentCount> spans;
  Hash2Layout hash_t;      // layout of hash2(t)
  Hash2Layout hash_mixed;  // layout of hash2(H_mixed(r))
  unsigned rep_factor = 0;
  std::size_t total = 0;   // N

  const Span& span(Segment s) const noexcept { return spans[static_cast<std::size_t>(s)]; }
  std::size_t redundancy() const noexcept { return total - spans[0].length; }
};

/// Pure function of the parameters; builds the small hash2 tables it needs.
CodewordGeometry codeword_geometry(const ParameterSet& params);

struct Codeword {
  BitString bits;
  CodewordGeometry geometry;
};

/// Picks the deletion or indel construction from params.channel.
Codeword encode(const BitString& s, const ParameterSet& params);
/// Deletion channel, N - k <= |y| <= N. Any returned s satisfies
/// y in sigma_{<=k}(encode(s)).
std::optional<BitString> decode(const BitString& y, const ParameterSet& params);

/// Insertion/deletion channel; params.channel must be kIndel.
Codeword encode_indel(const BitString& s, const ParameterSet& params);
/// Any returned s has encode_indel(s) within indel distance k of y.
std::optional<BitString> decode_indel(const BitString& y, const ParameterSet& params);

/// Segment lengths in closed form, no hashing or table builds: hash1
/// widths are bounded by min(B, ceil(log2(2 B^(2k) + 1))) and the symbol
/// width is not capped. Intended for the paper profile at large n.
struct AnalyticRedundancy {
  std::size_t n = 0;
  unsigned k = 0;
  unsigned m = 0;
  std::size_t d = 0;
  std::size_t L = 0;
  unsigned w = 0;
  std::size_t c = 0;
  std::array<std::size_t, kSegmentCount> lengths{};
  std::size_t redundancy = 0;
  /// redundancy / (k^2 log2 k log2 n)
  double ratio = 0.0;
};
AnalyticRedundancy analytic_redundancy(std::size_t n, unsigned k, Channel channel = Channel::kDeletion);

}  // namespace delcode
