#pragma once

// Brute-force coloring hash and exhaustive verification oracles.
//
// A ColorTable assigns every string of a fixed length a color so that any
// two confusable strings differ in color. Two equal-length strings are
// confusable at threshold T when their LCS is at least length - T; at
// T = k this is exactly "their k-deletion output sets intersect".

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "delcode/bits.hpp"

namespace delcode {

/// Longest string length for which a color table may be built.
inline constexpr unsigned kMaxTableLength = 14;

enum class TableVariant : std::uint8_t {
  kDeletion = 0,  // threshold k
  kIndel3k = 1,   // threshold 3k
  kIndel4k = 2,   // threshold 4k (default for indel block hashing)
  kCustom = 3,    // threshold given explicitly
};

std::string to_string(TableVariant v);
TableVariant table_variant_from_string(const std::string& name);
unsigned table_threshold(TableVariant v, unsigned k, unsigned custom_threshold = 0);

struct ColorTable {
  unsigned length = 0;
  unsigned k = 0;
  TableVariant variant = TableVariant::kDeletion;
  unsigned threshold = 0;
  std::uint32_t color_count = 0;
  unsigned width = 0;  // bits per digest
  std::vector<std::uint32_t> colors;  // indexed by the MSB-first value of the string

  bool confusable(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint32_t color_of(std::uint64_t packed) const noexcept { return colors[packed]; }

  friend bool operator==(const ColorTable&, const ColorTable&) = default;
};

struct Hash1Digest {
  std::uint32_t color = 0;
  unsigned width = 0;
};

/// Greedy coloring in lexicographic order; each string takes the smallest
/// color not used by an earlier confusable string. Throws CapacityError
/// above kMaxTableLength.
ColorTable build_color_table(unsigned length, unsigned k, TableVariant variant, unsigned custom_threshold = 0);

/// Process-wide table cache. When DELCODE_TABLE_DIR is set, tables are
/// loaded from and saved to that directory. Thread-safe.
const ColorTable& cached_table(unsigned length, unsigned k, TableVariant variant);

Hash1Digest hash1(const BitString& s, const ColorTable& table);

/// Recovers the string of length `length` from a received string y and
/// its color. Deletion tables accept every supersequence of y; indel
/// tables accept every string within k edits of y. Returns nullopt when
/// no candidate, or more than one, carries the digest color.
std::optional<BitString> hash1_decode(const BitString& y, const Hash1Digest& digest, unsigned length,
                                      const ColorTable& table);

/// Packed fast paths used by the block hash.
std::optional<std::uint64_t> decode_supersequence_packed(std::uint64_t y, unsigned len_y, std::uint32_t color,
                                                         const ColorTable& table);
/// Candidates c with LCS(c, window) >= |window| - k (the window may carry up
/// to k foreign bits). Unique when the table threshold is at least 4k.
std::optional<std::uint64_t> decode_window_packed(std::uint64_t window, unsigned len_w, unsigned k,
                                                  std::uint32_t color, const ColorTable& table);

void write_table(const std::filesystem::path& path, const ColorTable& table);
ColorTable read_table(const std::filesystem::path& path);

// Code-level oracles.

/// True iff every distinct pair has LCS < N - k. Throws on unequal lengths.
bool verify_deletion_code(const std::vector<BitString>& codebook, unsigned k);

/// Size of the lexicographic greedy k-deletion code of length n.
std::size_t greedy_code_census(unsigned n, unsigned k);
inline constexpr unsigned kMaxCensusLength = 16;

/// Largest dimension of a linear code in F_2^n that corrects k deletions,
/// found by visiting every subspace once through its RREF generator matrix.
unsigned max_linear_dimension(unsigned n, unsigned k);
inline constexpr unsigned kMaxLinearLength = 8;

struct LinearExperiment {
  unsigned n = 0;
  unsigned k = 0;
  unsigned max_dimension = 0;
  std::uint64_t subspaces_visited = 0;
  std::uint64_t passing_codes = 0;
  /// Every passing code C and every 0 <= i < j <= k satisfied
  /// dim(C^i ∩ C^j) <= gcd(j - i, n), C^i being C rotated left by i.
  bool shift_intersection_bound_holds = true;
  std::uint64_t shift_pairs_checked = 0;
  /// Generator rows of one maximum-dimension code, packed MSB-first.
  std::vector<std::uint64_t> best_basis;
};

LinearExperiment linear_code_experiment(unsigned n, unsigned k);

/// The (k+1)-fold repetition code of length n (zero-padded when k+1 does not divide n).
std::vector<BitString> repetition_codebook(unsigned n, unsigned k);

}  // namespace delcode
