#include <bit>
#include <numeric>
#include <stdexcept>

#include "delcode/errors.hpp"
#include "delcode/oracle.hpp"

namespace delcode {

namespace {

bool packed_code_ok(const std::vector<std::uint64_t>& words, unsigned n, unsigned k) {
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      if (lcs_packed(words[i], n, words[j], n) + k >= n) {
        return false;
      }
    }
  }
  return true;
}

std::vector<std::uint64_t> span_of(const std::vector<std::uint64_t>& basis) {
  std::vector<std::uint64_t> out{0};
  for (auto row : basis) {
    const std::size_t sz = out.size();
    for (std::size_t i = 0; i < sz; ++i) {
      out.push_back(out[i] ^ row);
    }
  }
  return out;
}

unsigned gf2_rank(std::vector<std::uint64_t> rows) {
  unsigned rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] == 0) {
      continue;
    }
    ++rank;
    const std::uint64_t pivot = std::uint64_t{1} << (63 - std::countl_zero(rows[i]));
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (rows[j] & pivot) {
        rows[j] ^= rows[i];
      }
    }
  }
  return rank;
}

std::uint64_t rotate_left(std::uint64_t x, unsigned n, unsigned i) {
  if (i % n == 0) {
    return x;
  }
  i %= n;
  const std::uint64_t mask = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return ((x << i) | (x >> (n - i))) & mask;
}

// Calls visit(basis) once per subspace of dimension d, via RREF generator
// matrices (rows packed MSB-first, column c at bit n-1-c).
template <typename Visit>
void for_each_subspace(unsigned n, unsigned d, Visit&& visit) {
  std::vector<unsigned> pivots(d);
  std::iota(pivots.begin(), pivots.end(), 0U);
  while (true) {
    // Free cells: row r, column c > pivots[r], c not a pivot.
    std::vector<std::pair<unsigned, unsigned>> free_cells;
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) {
      is_pivot[p] = true;
    }
    for (unsigned r = 0; r < d; ++r) {
      for (unsigned c = pivots[r] + 1; c < n; ++c) {
        if (!is_pivot[c]) {
          free_cells.emplace_back(r, c);
        }
      }
    }
    const std::uint64_t assignments = std::uint64_t{1} << free_cells.size();
    std::vector<std::uint64_t> basis(d);
    for (std::uint64_t a = 0; a < assignments; ++a) {
      for (unsigned r = 0; r < d; ++r) {
        basis[r] = std::uint64_t{1} << (n - 1 - pivots[r]);
      }
      for (std::size_t f = 0; f < free_cells.size(); ++f) {
        if ((a >> f) & 1U) {
          basis[free_cells[f].first] |= std::uint64_t{1} << (n - 1 - free_cells[f].second);
        }
      }
      visit(basis);
    }
    // next pivot combination
    int i = static_cast<int>(d) - 1;
    while (i >= 0 && pivots[static_cast<unsigned>(i)] == n - d + static_cast<unsigned>(i)) {
      --i;
    }
    if (i < 0) {
      return;
    }
    ++pivots[static_cast<unsigned>(i)];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < d; ++j) {
      pivots[j] = pivots[j - 1] + 1;
    }
  }
}

}  // namespace

std::size_t greedy_code_census(unsigned n, unsigned k) {
  if (n > kMaxCensusLength) {
    throw CapacityError("census length " + std::to_string(n) + " exceeds cap " + std::to_string(kMaxCensusLength));
  }
  std::vector<std::uint64_t> accepted;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < count; ++x) {
    bool ok = true;
    for (auto y : accepted) {
      if (lcs_packed(x, n, y, n) + k >= n) {
        ok = false;
        break;
      }
    }
    if (ok) {
      accepted.push_back(x);
    }
  }
  return accepted.size();
}

LinearExperiment linear_code_experiment(unsigned n, unsigned k) {
  if (n == 0 || n > kMaxLinearLength) {
    throw CapacityError("linear experiment length " + std::to_string(n) + " outside [1, " +
                        std::to_string(kMaxLinearLength) + "]");
  }
  LinearExperiment result;
  result.n = n;
  result.k = k;
  for (unsigned d = 1; d <= n; ++d) {
    for_each_subspace(n, d, [&](const std::vector<std::uint64_t>& basis) {
      ++result.subspaces_visited;
      const auto words = span_of(basis);
      if (!packed_code_ok(words, n, k)) {
        return;
      }
      ++result.passing_codes;
      if (d > result.max_dimension) {
        result.max_dimension = d;
        result.best_basis = basis;
      }
      for (unsigned i = 0; i <= k; ++i) {
        for (unsigned j = i + 1; j <= k; ++j) {
          std::vector<std::uint64_t> rows;
          for (auto b : basis) {
            rows.push_back(rotate_left(b, n, i));
          }
          for (auto b : basis) {
            rows.push_back(rotate_left(b, n, j));
          }
          const unsigned intersection = 2 * d - gf2_rank(rows);
          ++result.shift_pairs_checked;
          if (intersection > std::gcd(j - i, n)) {
            result.shift_intersection_bound_holds = false;
          }
        }
      }
    });
  }
  return result;
}

unsigned max_linear_dimension(unsigned n, unsigned k) {
  if (n == 0 || n > kMaxLinearLength) {
    throw CapacityError("linear experiment length " + std::to_string(n) + " outside [1, " +
                        std::to_string(kMaxLinearLength) + "]");
  }
  for (unsigned d = n; d >= 1; --d) {
    bool found = false;
    for_each_subspace(n, d, [&](const std::vector<std::uint64_t>& basis) {
      if (!found && packed_code_ok(span_of(basis), n, k)) {
        found = true;
      }
    });
    if (found) {
      return d;
    }
  }
  return 0;
}

std::vector<BitString> repetition_codebook(unsigned n, unsigned k) {
  const unsigned msg_bits = n / (k + 1);
  std::vector<BitString> book;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << msg_bits); ++m) {
    BitString c;
    for (unsigned i = 0; i < msg_bits; ++i) {
      const bool bit = (m >> (msg_bits - 1 - i)) & 1U;
      for (unsigned r = 0; r <= k; ++r) {
        c.push_back(bit);
      }
    }
    c.append_zeros(n - c.size());
    book.push_back(std::move(c));
  }
  return book;
}

}  // namespace delcode
