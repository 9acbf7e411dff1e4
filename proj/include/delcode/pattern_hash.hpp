#pragma once

// Per-pattern hashes and their majority-vote bundle.
//
// For a pattern p the string is cut at every occurrence of p. Each segment
// is left-padded to d bits, block hashed, tagged with its length and read as
// c symbols of w bits. Row q of the RS frame holds symbol q of every
// segment, so k damaged segments cost at most k errors per row; each row
// carries 2k parity symbols, giving 2kcw bits per pattern.

#include <cstdint>
#include <optional>
#include <vector>

#include "delcode/bits.hpp"
#include "delcode/mixer.hpp"

namespace delcode {

struct SegmentSplit {
  std::uint64_t pattern = 0;
  unsigned m = 0;
  std::vector<std::size_t> split_points;
  std::vector<BitString> segments;  // split_points.size() + 1 of them
};

/// Throws MixednessError if a segment is longer than d.
SegmentSplit split_by_pattern(const BitString& r, std::uint64_t pattern, const ParameterSet& params);
SegmentSplit split_by_pattern(const BitString& r, const BitString& pattern, const ParameterSet& params);

/// c * w bits: hash2 of the padded segment, its length, zero fill.
BitString segment_digest(const BitString& segment, const ParameterSet& params);

struct PatternHash {
  std::uint64_t pattern = 0;
  BitString bits;  // 2kcw bits, row-major parity symbols
};

PatternHash h_pattern(const BitString& r, std::uint64_t pattern, const ParameterSet& params);

/// Recovers r from a received string when the edits left every occurrence
/// of the pattern intact; otherwise returns nullopt or a string that still
/// passes the final consistency check (subsequence for deletions, indel
/// distance <= k for the indel channel).
std::optional<BitString> g_pattern(const BitString& received, const BitString& hash_bits, std::uint64_t pattern,
                                   const ParameterSet& params);

/// All 2^m pattern hashes in ascending pattern order.
BitString H_mixed(const BitString& r, const ParameterSet& params);

struct MixedDecodeStats {
  std::size_t failed_patterns = 0;
  std::size_t agreeing_patterns = 0;  // patterns whose output equals the result
};

/// Bitwise majority over the per-pattern decoders; failed patterns abstain
/// and a bit needs more than 2^(m-1) votes.
std::optional<BitString> G_mixed(const BitString& received, const BitString& mixed_hash, const ParameterSet& params,
                                 MixedDecodeStats* stats = nullptr);

/// True when the received string keeps every occurrence of p intact and
/// the occurrence count unchanged, given the deletion positions in r.
bool is_pattern_preserving(const BitString& r, const DeletionPattern& deletions, std::uint64_t pattern, unsigned m);

}  // namespace delcode
