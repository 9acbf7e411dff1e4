#pragma once

// Varshamov-Tenengolts single-deletion code: strings whose 1-based
// position-weighted sum vanishes mod (n + 1).

#include <optional>
#include <vector>

#include "delcode/bits.hpp"

namespace delcode {

inline constexpr unsigned kMaxVtEnumeration = 20;

struct VtSyndrome {
  std::size_t n = 0;
  std::size_t residue = 0;
};

VtSyndrome vt_syndrome(const BitString& x);

/// All syndrome-0 strings of length n, in lexicographic order.
std::vector<BitString> vt_members(unsigned n);

/// Position-arithmetic decoder (Levenshtein's rule). Accepts |y| = n - 1,
/// or |y| = n when y is itself a codeword.
std::optional<BitString> vt_decode(const BitString& y, std::size_t n);

/// Exhaustive reference decoder: the unique syndrome-0 supersequence of y.
std::optional<BitString> vt_decode_exhaustive(const BitString& y, unsigned n);

}  // namespace delcode
