#pragma once

// Arithmetic over GF(2^w) and a systematic Reed-Solomon parity map.
//
// Each width uses the numerically smallest irreducible polynomial of that
// degree; the primitive element alpha is the smallest generator of the
// multiplicative group. Both are found at first use and cached.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace delcode {

using Symbol = std::uint32_t;

inline constexpr unsigned kMinFieldWidth = 2;
inline constexpr unsigned kMaxFieldWidth = 24;

class GaloisField {
 public:
  explicit GaloisField(unsigned width);

  unsigned width() const noexcept { return width_; }
  std::uint32_t size() const noexcept { return size_; }   // 2^w
  std::uint32_t order() const noexcept { return size_ - 1; }  // multiplicative group
  std::uint32_t polynomial() const noexcept { return poly_; }
  Symbol generator() const noexcept { return generator_; }

  static Symbol add(Symbol a, Symbol b) noexcept { return a ^ b; }
  Symbol mul(Symbol a, Symbol b) const noexcept {
    if (a == 0 || b == 0) {
      return 0;
    }
    return exp_[log_[a] + log_[b]];
  }
  Symbol inv(Symbol a) const;
  Symbol div(Symbol a, Symbol b) const { return mul(a, inv(b)); }
  Symbol pow(Symbol a, std::uint64_t e) const noexcept;
  /// alpha^i for any i >= 0.
  Symbol alpha_pow(std::uint64_t i) const noexcept { return exp_[i % order()]; }
  std::uint32_t log(Symbol a) const noexcept { return log_[a]; }
  Symbol exp_raw(std::uint32_t i) const noexcept { return exp_[i]; }  // i < 2 * order()

 private:
  unsigned width_;
  std::uint32_t size_;
  std::uint32_t poly_;
  Symbol generator_;
  std::vector<Symbol> exp_;
  std::vector<std::uint32_t> log_;
};

/// Shared field instance for a width in [kMinFieldWidth, kMaxFieldWidth].
const GaloisField& galois_field(unsigned width);

/// Numerically smallest irreducible polynomial of the given degree over
/// GF(2), including the leading term.
std::uint32_t smallest_irreducible(unsigned degree);

struct RsParity {
  std::vector<Symbol> symbols;  // 2e symbols
  std::size_t message_len = 0;
};

/// Systematic RS code with message positions alpha^0..alpha^(F-1) and
/// parity positions alpha^F..alpha^(F+2e-1), roots alpha^1..alpha^(2e).
/// Messages shorter than the frame are zero-extended, so sparse or short
/// inputs cost only their nonzero symbols.
class ReedSolomon {
 public:
  ReedSolomon(const GaloisField& field, std::size_t frame_len, std::size_t error_budget);

  std::size_t frame_len() const noexcept { return frame_len_; }
  std::size_t error_budget() const noexcept { return e_; }

  RsParity parity(std::span<const Symbol> message) const;

  /// Corrects up to e symbol errors spread over `received` and `parity`;
  /// returns the corrected message, or nullopt when no consistent
  /// correction of weight <= e exists. A message shorter than the frame is
  /// zero-padded and errors are never placed in the padding.
  std::optional<std::vector<Symbol>> correct(std::span<const Symbol> received,
                                             std::span<const Symbol> parity) const;

 private:
  std::vector<Symbol> message_syndromes(std::span<const Symbol> message) const;

  const GaloisField* field_;
  std::size_t frame_len_;
  std::size_t e_;
  // parity_matrix_[j][t] = (alpha^(F+t))^(j+1); inverse_ solves for parity.
  std::vector<std::vector<Symbol>> parity_matrix_;
  std::vector<std::vector<Symbol>> inverse_;
};

RsParity rs_parity(std::span<const Symbol> message, std::size_t e, const GaloisField& field);
std::optional<std::vector<Symbol>> rs_correct(std::span<const Symbol> received, const RsParity& parity, std::size_t e,
                                              const GaloisField& field);

/// Solves A x = b over the field by Gaussian elimination; nullopt if singular.
std::optional<std::vector<Symbol>> solve_linear(std::vector<std::vector<Symbol>> a, std::vector<Symbol> b,
                                                const GaloisField& field);

}  // namespace delcode
