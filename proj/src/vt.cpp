#include "delcode/vt.hpp"

#include "delcode/errors.hpp"

namespace delcode {

VtSyndrome vt_syndrome(const BitString& x) {
  const std::size_t mod = x.size() + 1;
  std::size_t sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) {
      sum = (sum + i + 1) % mod;
    }
  }
  return {x.size(), sum};
}

std::vector<BitString> vt_members(unsigned n) {
  if (n > kMaxVtEnumeration) {
    throw CapacityError("VT enumeration length " + std::to_string(n) + " exceeds cap " +
                        std::to_string(kMaxVtEnumeration));
  }
  std::vector<BitString> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    std::uint64_t sum = 0;
    for (unsigned i = 0; i < n; ++i) {
      if ((v >> (n - 1 - i)) & 1U) {
        sum += i + 1;
      }
    }
    if (sum % (n + 1) == 0) {
      out.push_back(BitString::from_uint(v, n));
    }
  }
  return out;
}

std::optional<BitString> vt_decode(const BitString& y, std::size_t n) {
  if (y.size() == n) {
    if (vt_syndrome(y).residue == 0) {
      return y;
    }
    return std::nullopt;
  }
  if (y.size() + 1 != n) {
    return std::nullopt;
  }
  const std::size_t mod = n + 1;
  std::size_t sum = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i]) {
      sum = (sum + i + 1) % mod;
    }
  }
  const std::size_t weight = y.count_ones();
  const std::size_t deficiency = (mod - sum) % mod;

  BitString x;
  x.reserve(n);
  if (deficiency <= weight) {
    // A 0 was deleted; it had `deficiency` ones to its right.
    std::size_t ones_right = weight;
    std::size_t pos = 0;
    while (ones_right > deficiency) {
      if (y[pos]) {
        --ones_right;
      }
      ++pos;
    }
    x.append(y, 0, pos);
    x.push_back(false);
    x.append(y, pos, y.size() - pos);
  } else {
    // A 1 was deleted; it had deficiency - weight - 1 zeros to its left.
    const std::size_t zeros_left = deficiency - weight - 1;
    std::size_t zeros = 0;
    std::size_t pos = 0;
    while (zeros < zeros_left && pos < y.size()) {
      if (!y[pos]) {
        ++zeros;
      }
      ++pos;
    }
    if (zeros < zeros_left) {
      return std::nullopt;
    }
    x.append(y, 0, pos);
    x.push_back(true);
    x.append(y, pos, y.size() - pos);
  }
  if (vt_syndrome(x).residue != 0) {
    return std::nullopt;
  }
  return x;
}

std::optional<BitString> vt_decode_exhaustive(const BitString& y, unsigned n) {
  if (n > kMaxVtEnumeration || y.size() > n || y.size() + 1 < n) {
    return std::nullopt;
  }
  std::optional<BitString> found;
  for (const auto& c : vt_members(n)) {
    if (is_subsequence(y, c)) {
      if (found) {
        return std::nullopt;
      }
      found = c;
    }
  }
  return found;
}

}  // namespace delcode
