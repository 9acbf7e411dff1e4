#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace delcode {

/// Ordered sequence of bits. Position 0 is the leftmost bit; integers
/// are always read and written most-significant bit first.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t size, bool value = false);

  /// Parses ASCII '0'/'1'. Throws std::invalid_argument on any other character.
  static BitString from_string(std::string_view text);
  /// `width` low bits of `value`, MSB first.
  static BitString from_uint(std::uint64_t value, unsigned width);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool operator[](std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }
  bool at(std::size_t i) const;
  void set(std::size_t i, bool value) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void push_back(bool value);
  void append(const BitString& other);
  void append(const BitString& other, std::size_t pos, std::size_t len);
  void append_uint(std::uint64_t value, unsigned width);
  void append_zeros(std::size_t count);
  /// Appends the low `n` (<= 64) bits of `bits`, LSB first (bit q lands at size()+q).
  void append_raw(std::uint64_t bits, unsigned n);
  void resize(std::size_t size);
  void reserve(std::size_t size) { words_.reserve((size + 63) / 64); }
  void clear() noexcept {
    words_.clear();
    size_ = 0;
  }

  /// Reads `width` (<= 64) bits starting at `pos` as an MSB-first integer.
  std::uint64_t read_uint(std::size_t pos, unsigned width) const;
  /// Bits [pos, pos+width) packed LSB-first (bit q of the result is bit pos+q).
  std::uint64_t raw_bits(std::size_t pos, unsigned width) const noexcept;

  BitString slice(std::size_t pos, std::size_t len) const;
  std::size_t count_ones() const noexcept;
  std::string to_string() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const BitString& a, const BitString& b) noexcept;
  friend bool operator<(const BitString& a, const BitString& b) noexcept;

 private:
  void trim_tail() noexcept;

  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

/// Strictly increasing 0-based positions to delete.
struct DeletionPattern {
  std::vector<std::size_t> indices;
};

struct EditOp {
  enum class Kind { kDelete, kInsert };
  Kind kind = Kind::kDelete;
  std::size_t position = 0;
  bool bit = false;
};

/// Ops are applied in order; each position refers to the string as it is
/// at the time the op is applied.
struct EditScript {
  std::vector<EditOp> ops;
};

BitString apply_deletions(const BitString& s, const DeletionPattern& pattern);
BitString apply_edits(const BitString& s, const EditScript& script);

/// Distinct strings obtained by deleting exactly `delta` bits, sorted.
std::vector<BitString> enumerate_subsequences(const BitString& s, std::size_t delta);

bool is_subsequence(const BitString& y, const BitString& s) noexcept;
std::size_t lcs_length(const BitString& a, const BitString& b);

/// Levenshtein distance if it is at most `bound`, otherwise bound + 1.
/// Banded; runs in O((|a| + |b|) * bound).
std::size_t edit_distance_bounded(const BitString& a, const BitString& b, std::size_t bound);
/// Insertion/deletion distance |a| + |b| - 2 LCS(a, b) if at most `bound`,
/// otherwise bound + 1. This is the metric of the indel channel.
std::size_t indel_distance_bounded(const BitString& a, const BitString& b, std::size_t bound);

/// XOR of s with t repeated periodically and truncated to |s|. Self-inverse.
BitString mu(const BitString& s, const BitString& t);

// Packed helpers for strings of at most 64 bits, stored MSB-first in the
// low `len` bits (so numeric order equals lexicographic order).

/// Bit-parallel LCS length of two packed strings.
unsigned lcs_packed(std::uint64_t a, unsigned len_a, std::uint64_t b, unsigned len_b) noexcept;
/// Greedy subsequence test on packed strings.
bool is_subsequence_packed(std::uint64_t y, unsigned len_y, std::uint64_t s, unsigned len_s) noexcept;

// Channel simulation.

enum class ChannelMode { kAdversarial, kRandom };

/// Streams every distinct result of deleting exactly delta bits, for
/// delta = 0..k, without materializing the set. A result is emitted only
/// for the deletion set that is the complement of its leftmost embedding,
/// so each output appears once.
class DeletionStream {
 public:
  DeletionStream(const BitString& s, std::size_t k, std::size_t min_delta = 0);

  /// Next distinct output, or nullopt when exhausted.
  std::optional<BitString> next();

 private:
  bool advance_combination();
  bool canonical(const BitString& y) const;

  BitString source_;
  std::size_t k_;
  std::size_t delta_ = 0;
  std::vector<std::size_t> combo_;
  bool started_ = false;
  bool done_ = false;
};

/// Streams every distinct result of applying at most k insertions or
/// deletions. k = 1 is generated canonically (no memory beyond the
/// output); larger k deduplicates through a seen-set and is intended for
/// short strings only.
class IndelStream {
 public:
  IndelStream(const BitString& s, std::size_t k);
  std::optional<BitString> next();

 private:
  std::vector<BitString> pending_;
  std::size_t cursor_ = 0;
  BitString source_;
  std::size_t k_;
  // k == 1 lazy state
  std::size_t phase_ = 0;
  std::size_t pos_ = 0;
};

DeletionPattern random_deletion_pattern(std::size_t length, std::size_t count, std::mt19937_64& rng);
EditScript random_edit_script(std::size_t length, std::size_t ops, std::mt19937_64& rng);

/// One result of deleting exactly k uniformly chosen positions; reproducible from seed.
BitString channel_delete(const BitString& s, std::size_t k, std::uint64_t seed);
/// One result of exactly k random edits (uniform kind, position and bit); reproducible from seed.
BitString channel_indel(const BitString& s, std::size_t k, std::uint64_t seed);

}  // namespace delcode

template <>
struct std::hash<delcode::BitString> {
  std::size_t operator()(const delcode::BitString& s) const noexcept;
};
