#include <bit>
#include <algorithm>
#include <set>

#include "delcode/bits.hpp"
#include "doctest.h"

using delcode::BitString;

namespace {

BitString B(const char* s) { return BitString::from_string(s); }

std::set<std::string> as_strings(const std::vector<BitString>& v) {
  std::set<std::string> out;
  for (const auto& s : v) out.insert(s.to_string());
  return out;
}

// Reference σ-set by brute force over deletion masks.
std::set<std::string> sigma(const BitString& s, std::size_t delta) {
  std::set<std::string> out;
  const std::size_t n = s.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != delta) continue;
    std::string y;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((mask >> i) & 1U)) y.push_back(s[i] ? '1' : '0');
    }
    out.insert(y);
  }
  return out;
}

}  // namespace

TEST_CASE("text round trip and integer fields") {
  CHECK(B("").empty());
  CHECK(B("0110").to_string() == "0110");
  CHECK(BitString::from_uint(5, 4).to_string() == "0101");
  BitString s;
  s.append_uint(0xABCDEF0123456789ULL, 64);
  s.append_uint(3, 2);
  CHECK(s.read_uint(0, 64) == 0xABCDEF0123456789ULL);
  CHECK(s.read_uint(64, 2) == 3);
  CHECK(s.slice(60, 6).to_string() == "100111");
  CHECK_THROWS_AS(BitString::from_string("012"), std::invalid_argument);
}

TEST_CASE("apply_deletions") {
  CHECK(apply_deletions(B("101"), {{0}}).to_string() == "01");
  CHECK(apply_deletions(B("101"), {{}}).to_string() == "101");
  CHECK(apply_deletions(B("0110"), {{1, 2}}).to_string() == "00");
  CHECK_THROWS_AS(apply_deletions(B("01"), {{2}}), std::invalid_argument);
}

TEST_CASE("enumerate_subsequences") {
  CHECK(as_strings(enumerate_subsequences(B("101"), 1)) == std::set<std::string>{"01", "11", "10"});
  CHECK(as_strings(enumerate_subsequences(B("000"), 1)) == std::set<std::string>{"00"});
  CHECK(as_strings(enumerate_subsequences(B("0110"), 0)) == std::set<std::string>{"0110"});
  CHECK_THROWS_AS(enumerate_subsequences(B("01"), 3), std::invalid_argument);
  for (std::uint64_t v = 0; v < 256; ++v) {
    const auto s = BitString::from_uint(v, 8);
    for (std::size_t d = 0; d <= 3; ++d) {
      const auto got = enumerate_subsequences(s, d);
      REQUIRE(as_strings(got) == sigma(s, d));
      CHECK(got.size() == as_strings(got).size());
    }
  }
}

TEST_CASE("subsequence and LCS") {
  CHECK(is_subsequence(B("01"), B("0110")));
  CHECK_FALSE(is_subsequence(B("11"), B("000")));
  CHECK(is_subsequence(B(""), B("101")));
  CHECK(lcs_length(B("0110"), B("110")) == 3);
  CHECK(lcs_length(B("0110"), B("0110")) == 4);
  CHECK(lcs_length(B("0000"), B("1111")) == 0);
}

TEST_CASE("bit-parallel LCS agrees with the DP") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    const unsigned la = 1 + rng() % 20;
    const unsigned lb = 1 + rng() % 20;
    const std::uint64_t a = rng() & ((std::uint64_t{1} << la) - 1);
    const std::uint64_t b = rng() & ((std::uint64_t{1} << lb) - 1);
    const auto sa = BitString::from_uint(a, la);
    const auto sb = BitString::from_uint(b, lb);
    REQUIRE(delcode::lcs_packed(a, la, b, lb) == lcs_length(sa, sb));
    REQUIRE(delcode::is_subsequence_packed(b, lb, a, la) == is_subsequence(sb, sa));
  }
}

TEST_CASE("confusability equals sigma intersection") {
  for (unsigned n = 1; n <= 8; ++n) {
    for (std::size_t k = 1; k <= 2 && k <= n; ++k) {
      std::vector<std::set<std::string>> sig;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) sig.push_back(sigma(BitString::from_uint(v, n), k));
      for (std::uint64_t a = 0; a < sig.size(); ++a) {
        for (std::uint64_t b = a + 1; b < sig.size(); ++b) {
          bool meet = false;
          for (const auto& y : sig[a]) {
            if (sig[b].count(y)) {
              meet = true;
              break;
            }
          }
          const bool lcs_rule = delcode::lcs_packed(a, n, b, n) + k >= n;
          REQUIRE(meet == lcs_rule);
        }
      }
    }
  }
}

TEST_CASE("edit distance bounded") {
  CHECK(edit_distance_bounded(B("0110"), B("0110"), 2) == 0);
  CHECK(edit_distance_bounded(B("0110"), B("010"), 2) == 1);
  CHECK(edit_distance_bounded(B("0000"), B("1111"), 2) == 3);
  CHECK(edit_distance_bounded(B(""), B("11"), 2) == 2);
  CHECK(indel_distance_bounded(B("0000"), B("1111"), 9) == 8);
  CHECK(indel_distance_bounded(B("0110"), B("0100"), 3) == 2);
  CHECK(indel_distance_bounded(B("0110"), B("0100"), 1) == 2);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 2000; ++t) {
    const unsigned la = rng() % 12, lb = rng() % 12;
    const auto a = BitString::from_uint(rng(), la), b = BitString::from_uint(rng(), lb);
    const std::size_t exact = la + lb - 2 * lcs_length(a, b);
    const std::size_t bound = rng() % 8;
    REQUIRE(indel_distance_bounded(a, b, bound) == std::min(exact, bound + 1));
  }
}

TEST_CASE("mu") {
  CHECK(mu(B("1010"), B("11")).to_string() == "0101");
  CHECK(mu(B("1010"), B("000")).to_string() == "1010");
  CHECK(mu(mu(B("1101001"), B("101")), B("101")).to_string() == "1101001");
  CHECK_THROWS_AS(mu(B("1"), B("")), std::invalid_argument);
}

TEST_CASE("deletion stream") {
  std::set<std::string> seen;
  delcode::DeletionStream stream(B("101"), 1);
  std::size_t count = 0;
  while (auto y = stream.next()) {
    seen.insert(y->to_string());
    ++count;
  }
  CHECK(count == 4);
  CHECK(seen == std::set<std::string>{"101", "01", "11", "10"});

  for (std::uint64_t v = 0; v < 1024; ++v) {
    const auto s = BitString::from_uint(v, 10);
    std::set<std::string> expect;
    for (std::size_t d = 0; d <= 2; ++d) {
      auto part = sigma(s, d);
      expect.insert(part.begin(), part.end());
    }
    std::vector<std::string> got;
    delcode::DeletionStream st(s, 2);
    while (auto y = st.next()) got.push_back(y->to_string());
    REQUIRE(got.size() == expect.size());
    REQUIRE(std::set<std::string>(got.begin(), got.end()) == expect);
  }
}

TEST_CASE("indel stream") {
  std::set<std::string> got;
  delcode::IndelStream stream(B("10"), 1);
  std::size_t count = 0;
  while (auto y = stream.next()) {
    got.insert(y->to_string());
    ++count;
  }
  CHECK(count == got.size());
  for (const char* e : {"10", "0", "1", "110", "100", "010", "101"}) CHECK(got.count(e) == 1);

  for (std::uint64_t v = 0; v < 64; ++v) {
    const auto s = BitString::from_uint(v, 6);
    for (std::size_t k = 1; k <= 2; ++k) {
      std::vector<BitString> all;
      delcode::IndelStream st(s, k);
      while (auto y = st.next()) all.push_back(*y);
      std::set<std::string> uniq = as_strings(all);
      REQUIRE(uniq.size() == all.size());
      for (const auto& y : all) {
        REQUIRE(indel_distance_bounded(s, y, k) <= k);
      }
      // completeness: every string within distance k is present
      std::size_t expected = 0;
      for (std::size_t len = 6 - k; len <= 6 + k; ++len) {
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << len); ++w) {
          if (indel_distance_bounded(s, BitString::from_uint(w, static_cast<unsigned>(len)), k) <= k) ++expected;
        }
      }
      REQUIRE(all.size() == expected);
    }
  }
}

TEST_CASE("random channels are reproducible") {
  const auto s = B("0011");
  const auto a = delcode::channel_delete(s, 1, 7);
  CHECK(a == delcode::channel_delete(s, 1, 7));
  CHECK((a.to_string() == "011" || a.to_string() == "001"));
  CHECK(delcode::channel_delete(s, 0, 3) == s);
  CHECK_THROWS_AS(delcode::channel_delete(s, 5, 1), std::invalid_argument);
  const auto big = BitString::from_uint(0xF0F0F0F0F0ULL, 40);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto y = delcode::channel_indel(big, 3, seed);
    CHECK(indel_distance_bounded(big, y, 3) <= 3);
  }
}
