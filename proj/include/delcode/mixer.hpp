#pragma once

// Code parameters, the mixedness predicate and the template search.
//
// A string is mixed when every window of d bits contains every m-bit
// pattern. Messages are made mixed by XORing a periodic template of L bits,
// chosen chunk by chunk so that the number of (block, pattern) obstructions
// shrinks by a factor (1 - 2^-m) at every step.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "delcode/bits.hpp"
#include "delcode/oracle.hpp"

namespace delcode {

enum class Profile { kPaper, kDesk, kCustom };
enum class Channel { kDeletion, kIndel };

std::string to_string(Profile p);
std::string to_string(Channel c);
Profile profile_from_string(const std::string& name);
Channel channel_from_string(const std::string& name);

/// Smallest RS symbol width the derivation picks.
inline constexpr unsigned kMinSymbolWidth = 8;

struct ParameterSet {
  std::size_t n = 0;  // message bits
  unsigned k = 0;     // edit budget
  unsigned m = 0;     // pattern length
  std::size_t d = 0;  // mixedness window
  std::size_t L = 0;  // template length
  unsigned B = 0;     // inner block length of segment digests
  unsigned w = 0;     // RS symbol width
  std::size_t c = 0;  // RS symbols per segment digest
  Profile profile = Profile::kDesk;
  Channel channel = Channel::kDeletion;

  /// RS frame: one slot per possible segment, n - m + 2.
  std::size_t frame_slots() const noexcept { return n - m + 2; }
  /// Width of the segment length field, ceil(log2(d + 1)).
  unsigned length_field_bits() const noexcept;
  TableVariant variant() const noexcept {
    return channel == Channel::kDeletion ? TableVariant::kDeletion : TableVariant::kIndel4k;
  }
  /// k + 1 for deletions, 3k + 1 for insertions and deletions.
  unsigned rep_factor() const noexcept { return channel == Channel::kDeletion ? k + 1 : 3 * k + 1; }
  std::size_t pattern_count() const noexcept { return std::size_t{1} << m; }
  std::size_t pattern_hash_bits() const noexcept { return 2 * std::size_t{k} * c * w; }
  std::size_t mixed_hash_bits() const noexcept { return pattern_count() * pattern_hash_bits(); }

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
};

/// Smallest m with 2^m > 2k(2m - 1).
unsigned min_pattern_length(unsigned k);
/// ceil(log2 k + log2 log2 (k + 1) + 5).
unsigned paper_pattern_length(unsigned k);
/// (1 - 2^-m)^floor(L/m) * floor(n/L) * 2^m < 1, evaluated in logs.
bool template_exists(std::size_t n, std::size_t L, unsigned m);
/// Segment digest bits before padding: hash2 of d bits plus the length field.
std::size_t segment_digest_bits(std::size_t d, unsigned B, unsigned k, TableVariant variant);

ParameterSet derive_params(std::size_t n, unsigned k, Profile profile, Channel channel = Channel::kDeletion);
/// Custom profile: explicit m, d, L; B, w and c are derived.
ParameterSet custom_params(std::size_t n, unsigned k, unsigned m, std::size_t d, std::size_t L,
                           Channel channel = Channel::kDeletion);
/// Throws ParameterError naming the first violated constraint.
void validate(const ParameterSet& p);

void write_params(std::ostream& out, const ParameterSet& p);
ParameterSet read_params(std::istream& in);
ParameterSet read_params_file(const std::filesystem::path& path);

/// 0-based starts of every occurrence of p in s, overlaps included.
std::vector<std::size_t> find_split_points(const BitString& s, const BitString& p);
/// Same, for a pattern given as an m-bit value.
std::vector<std::size_t> find_split_points(const BitString& s, std::uint64_t pattern, unsigned m);

struct MixedCheck {
  bool mixed = false;
  bool vacuous = false;  // |s| < d
  std::uint64_t first_missing_pattern = 0;
  explicit operator bool() const noexcept { return mixed; }
};

/// Every length-d window of s contains a full occurrence of every m-bit pattern.
MixedCheck is_mixed(const BitString& s, std::size_t d, unsigned m);
MixedCheck is_mixed(const BitString& s, const ParameterSet& p);

struct TemplateResult {
  BitString t;                                  // L bits
  std::vector<std::uint64_t> obstruction_counts;  // b_0 .. b_J, J = floor(L/m)
  std::vector<std::uint32_t> chunk_values;
};

/// Conditional-expectation template search. Throws InternalError if an
/// obstruction survives or mu(s, t) fails the mixedness check.
TemplateResult template_search(const BitString& s, const ParameterSet& p);

}  // namespace delcode
