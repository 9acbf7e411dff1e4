#include "delcode/gf.hpp"

#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "delcode/errors.hpp"

namespace delcode {

namespace {

// Carry-less product of a and b reduced modulo the degree-`deg` polynomial f.
std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t f, unsigned deg) {
  std::uint64_t r = 0;
  while (b != 0) {
    if (b & 1U) {
      r ^= a;
    }
    b >>= 1;
    a <<= 1;
    if ((a >> deg) & 1U) {
      a ^= f;
    }
  }
  return r;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t f) {
  const int df = 63 - std::countl_zero(f);
  while (a != 0) {
    const int da = 63 - std::countl_zero(a);
    if (da < df) {
      break;
    }
    a ^= f << (da - df);
  }
  return a;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

// x^(2^e) mod f
std::uint64_t frobenius_power(unsigned e, std::uint64_t f, unsigned deg) {
  std::uint64_t x = 2;
  for (unsigned i = 0; i < e; ++i) {
    x = poly_mulmod(x, x, f, deg);
  }
  return x;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) {
        n /= p;
      }
    }
  }
  if (n > 1) {
    out.push_back(n);
  }
  return out;
}

bool irreducible(std::uint64_t f, unsigned deg) {
  // Rabin: x^(2^deg) = x mod f, and gcd(x^(2^(deg/q)) - x, f) = 1 for primes q | deg.
  if (frobenius_power(deg, f, deg) != 2) {
    return false;
  }
  for (auto q : prime_factors(deg)) {
    const std::uint64_t h = frobenius_power(deg / static_cast<unsigned>(q), f, deg) ^ 2;
    if (poly_gcd(f, h) != 1) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::uint32_t smallest_irreducible(unsigned degree) {
  if (degree < 1 || degree > 31) {
    throw std::invalid_argument("irreducible polynomial degree out of range");
  }
  const std::uint64_t top = std::uint64_t{1} << degree;
  for (std::uint64_t f = top; f < 2 * top; ++f) {
    if (irreducible(f, degree)) {
      return static_cast<std::uint32_t>(f);
    }
  }
  throw InternalError("no irreducible polynomial found");
}

GaloisField::GaloisField(unsigned width) : width_(width) {
  if (width < kMinFieldWidth || width > kMaxFieldWidth) {
    throw std::invalid_argument("field width " + std::to_string(width) + " outside [" +
                                std::to_string(kMinFieldWidth) + ", " + std::to_string(kMaxFieldWidth) + "]");
  }
  size_ = std::uint32_t{1} << width;
  poly_ = smallest_irreducible(width);
  const std::uint64_t ord = size_ - 1;
  const auto factors = prime_factors(ord);
  auto slow_pow = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e != 0) {
      if (e & 1U) {
        r = poly_mulmod(r, a, poly_, width_);
      }
      a = poly_mulmod(a, a, poly_, width_);
      e >>= 1;
    }
    return r;
  };
  generator_ = 0;
  for (std::uint64_t g = 2; g < size_; ++g) {
    bool primitive = true;
    for (auto p : factors) {
      if (slow_pow(g, ord / p) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator_ = static_cast<Symbol>(g);
      break;
    }
  }
  if (width == 1 || generator_ == 0) {
    generator_ = size_ == 2 ? 1 : generator_;
  }
  exp_.resize(2 * ord);
  log_.assign(size_, 0);
  std::uint64_t x = 1;
  for (std::uint64_t i = 0; i < ord; ++i) {
    exp_[i] = static_cast<Symbol>(x);
    exp_[i + ord] = static_cast<Symbol>(x);
    log_[x] = static_cast<std::uint32_t>(i);
    x = poly_mulmod(x, generator_, poly_, width_);
  }
}

Symbol GaloisField::inv(Symbol a) const {
  if (a == 0) {
    throw std::invalid_argument("inverse of zero in GF(2^" + std::to_string(width_) + ")");
  }
  return exp_[(order() - log_[a]) % order()];
}

Symbol GaloisField::pow(Symbol a, std::uint64_t e) const noexcept {
  if (e == 0) {
    return 1;
  }
  if (a == 0) {
    return 0;
  }
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % order())) % order()];
}

const GaloisField& galois_field(unsigned width) {
  static std::mutex mutex;
  static std::map<unsigned, std::unique_ptr<GaloisField>> fields;
  const std::lock_guard lock(mutex);
  auto& slot = fields[width];
  if (!slot) {
    slot = std::make_unique<GaloisField>(width);
  }
  return *slot;
}

std::optional<std::vector<Symbol>> solve_linear(std::vector<std::vector<Symbol>> a, std::vector<Symbol> b,
                                                const GaloisField& field) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) {
      ++pivot;
    }
    if (pivot == n) {
      return std::nullopt;
    }
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const Symbol scale = field.inv(a[col][col]);
    for (std::size_t c = col; c < n; ++c) {
      a[col][c] = field.mul(a[col][c], scale);
    }
    b[col] = field.mul(b[col], scale);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) {
        continue;
      }
      const Symbol f = a[r][col];
      for (std::size_t c = col; c < n; ++c) {
        a[r][c] ^= field.mul(f, a[col][c]);
      }
      b[r] ^= field.mul(f, b[col]);
    }
  }
  return b;
}

ReedSolomon::ReedSolomon(const GaloisField& field, std::size_t frame_len, std::size_t error_budget)
    : field_(&field), frame_len_(frame_len), e_(error_budget) {
  const std::size_t nparity = 2 * e_;
  if (frame_len_ + nparity > field.order()) {
    throw CapacityError("RS frame of " + std::to_string(frame_len_) + " message + " + std::to_string(nparity) +
                        " parity symbols exceeds GF(2^" + std::to_string(field.width()) +
                        ") evaluation points; raise the symbol width");
  }
  parity_matrix_.assign(nparity, std::vector<Symbol>(nparity, 0));
  for (std::size_t j = 0; j < nparity; ++j) {
    for (std::size_t t = 0; t < nparity; ++t) {
      parity_matrix_[j][t] = field.alpha_pow((frame_len_ + t) * (j + 1));
    }
  }
  // Columns of the inverse: solve against unit vectors.
  inverse_.assign(nparity, std::vector<Symbol>(nparity, 0));
  for (std::size_t c = 0; c < nparity; ++c) {
    std::vector<Symbol> unit(nparity, 0);
    unit[c] = 1;
    auto col = solve_linear(parity_matrix_, unit, field);
    if (!col) {
      throw InternalError("RS parity Vandermonde matrix is singular");
    }
    for (std::size_t r = 0; r < nparity; ++r) {
      inverse_[r][c] = (*col)[r];
    }
  }
}

std::vector<Symbol> ReedSolomon::message_syndromes(std::span<const Symbol> message) const {
  const GaloisField& f = *field_;
  const std::size_t nparity = 2 * e_;
  const std::uint64_t ord = f.order();
  std::vector<Symbol> s(nparity, 0);
  for (std::size_t i = 0; i < message.size(); ++i) {
    const Symbol m = message[i];
    if (m == 0) {
      continue;
    }
    const std::uint64_t lm = f.log(m);
    const std::uint64_t step = i % ord;
    std::uint64_t exponent = (lm + step) % ord;  // j = 1
    for (std::size_t j = 0; j < nparity; ++j) {
      s[j] ^= f.exp_raw(static_cast<std::uint32_t>(exponent));
      exponent += step;
      if (exponent >= ord) {
        exponent -= ord;
      }
    }
  }
  return s;
}

RsParity ReedSolomon::parity(std::span<const Symbol> message) const {
  if (message.size() > frame_len_) {
    throw CapacityError("RS message of " + std::to_string(message.size()) + " symbols exceeds frame " +
                        std::to_string(frame_len_));
  }
  for (auto m : message) {
    if (m >= field_->size()) {
      throw std::invalid_argument("message symbol outside field");
    }
  }
  const auto s = message_syndromes(message);
  const std::size_t nparity = 2 * e_;
  RsParity out;
  out.message_len = frame_len_;
  out.symbols.assign(nparity, 0);
  for (std::size_t r = 0; r < nparity; ++r) {
    Symbol acc = 0;
    for (std::size_t c = 0; c < nparity; ++c) {
      acc ^= field_->mul(inverse_[r][c], s[c]);
    }
    out.symbols[r] = acc;
  }
  return out;
}

std::optional<std::vector<Symbol>> ReedSolomon::correct(std::span<const Symbol> received,
                                                        std::span<const Symbol> parity) const {
  const GaloisField& f = *field_;
  const std::size_t nparity = 2 * e_;
  if (received.size() > frame_len_ || parity.size() != nparity) {
    return std::nullopt;
  }
  for (auto m : received) {
    if (m >= f.size()) {
      return std::nullopt;
    }
  }
  auto syn = message_syndromes(received);
  for (std::size_t j = 0; j < nparity; ++j) {
    for (std::size_t t = 0; t < nparity; ++t) {
      syn[j] ^= f.mul(parity_matrix_[j][t], parity[t]);
    }
  }
  std::vector<Symbol> out(received.begin(), received.end());
  bool clean = true;
  for (auto s : syn) {
    clean = clean && s == 0;
  }
  if (clean) {
    return out;
  }

  // Berlekamp-Massey for the error locator.
  std::vector<Symbol> c{1};
  std::vector<Symbol> b{1};
  std::size_t len = 0;
  std::size_t shift = 1;
  Symbol last = 1;
  for (std::size_t n = 0; n < nparity; ++n) {
    Symbol d = syn[n];
    for (std::size_t i = 1; i <= len && i < c.size(); ++i) {
      d ^= f.mul(c[i], syn[n - i]);
    }
    if (d == 0) {
      ++shift;
      continue;
    }
    const Symbol coef = f.div(d, last);
    std::vector<Symbol> next = c;
    if (next.size() < b.size() + shift) {
      next.resize(b.size() + shift, 0);
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      next[i + shift] ^= f.mul(coef, b[i]);
    }
    if (2 * len <= n) {
      b = c;
      len = n + 1 - len;
      last = d;
      shift = 1;
    } else {
      ++shift;
    }
    c = std::move(next);
  }
  while (c.size() > 1 && c.back() == 0) {
    c.pop_back();
  }
  const std::size_t degree = c.size() - 1;
  if (degree == 0 || degree != len || degree > e_) {
    return std::nullopt;
  }

  // Chien search over the received positions and the parity positions
  // F..F+2e-1: Lambda(alpha^-i) = 0.
  const std::uint64_t ord = f.order();
  std::vector<std::size_t> positions;
  auto probe = [&](std::size_t i) {
    const std::uint64_t inv_exp = (ord - (i % ord)) % ord;
    Symbol v = 0;
    std::uint64_t e = 0;
    for (std::size_t t = 0; t <= degree; ++t) {
      if (c[t] != 0) {
        v ^= f.mul(c[t], f.exp_raw(static_cast<std::uint32_t>(e)));
      }
      e += inv_exp;
      if (e >= ord) {
        e -= ord;
      }
    }
    if (v == 0) {
      positions.push_back(i);
    }
  };
  for (std::size_t i = 0; i < received.size() && positions.size() <= degree; ++i) {
    probe(i);
  }
  for (std::size_t t = 0; t < nparity && positions.size() <= degree; ++t) {
    probe(frame_len_ + t);
  }
  if (positions.size() != degree) {
    return std::nullopt;
  }

  // Error values from the first `degree` syndromes: sum_r e_r X_r^j = S_j.
  std::vector<std::vector<Symbol>> a(degree, std::vector<Symbol>(degree));
  std::vector<Symbol> rhs(degree);
  for (std::size_t j = 0; j < degree; ++j) {
    for (std::size_t r = 0; r < degree; ++r) {
      a[j][r] = f.alpha_pow(positions[r] * (j + 1));
    }
    rhs[j] = syn[j];
  }
  auto values = solve_linear(std::move(a), std::move(rhs), f);
  if (!values) {
    return std::nullopt;
  }
  std::vector<Symbol> fixed_parity(parity.begin(), parity.end());
  for (std::size_t r = 0; r < degree; ++r) {
    if ((*values)[r] == 0) {
      return std::nullopt;
    }
    if (positions[r] < frame_len_) {
      out[positions[r]] ^= (*values)[r];
    } else {
      fixed_parity[positions[r] - frame_len_] ^= (*values)[r];
    }
  }
  // The correction must explain every syndrome, not just the first `degree`.
  auto check = message_syndromes(out);
  for (std::size_t j = 0; j < nparity; ++j) {
    for (std::size_t t = 0; t < nparity; ++t) {
      check[j] ^= f.mul(parity_matrix_[j][t], fixed_parity[t]);
    }
    if (check[j] != 0) {
      return std::nullopt;
    }
  }
  return out;
}

RsParity rs_parity(std::span<const Symbol> message, std::size_t e, const GaloisField& field) {
  return ReedSolomon(field, message.size(), e).parity(message);
}

std::optional<std::vector<Symbol>> rs_correct(std::span<const Symbol> received, const RsParity& parity, std::size_t e,
                                              const GaloisField& field) {
  if (received.size() != parity.message_len) {
    return std::nullopt;
  }
  return ReedSolomon(field, parity.message_len, e).correct(received, parity.symbols);
}

}  // namespace delcode
