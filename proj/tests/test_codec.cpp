#include "delcode/codec.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_map>

#include "doctest.h"

using delcode::BitString;

namespace {

BitString random_bits(std::size_t n, std::mt19937_64& rng) {
  BitString s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(rng() & 1U);
  return s;
}

BitString bits(const char* text) { return BitString::from_string(text); }

}  // namespace

TEST_CASE("repetition code") {
  CHECK(delcode::rep_encode(bits("01"), 2) == bits("0011"));
  CHECK(delcode::rep_encode(bits("0110"), 1) == bits("0110"));
  CHECK(delcode::rep_encode(bits("101"), 3).size() == 9);
  CHECK(delcode::rep_decode_deletions(bits("011"), 2, 2) == bits("01"));
  CHECK_FALSE(delcode::rep_decode_deletions(bits("0"), 2, 2));
  CHECK_FALSE(delcode::rep_decode_deletions(bits("00110"), 2, 2));

  for (std::size_t len = 0; len <= 6; ++len) {
    for (std::uint64_t v = 0; v < (1ULL << len); ++v) {
      const auto x = BitString::from_uint(v, static_cast<unsigned>(len));
      const auto c = delcode::rep_encode(x, 3);
      delcode::DeletionStream stream(c, std::min<std::size_t>(2, c.size()));
      while (auto y = stream.next()) {
        REQUIRE(delcode::rep_decode_deletions(*y, 3, len) == x);
      }
    }
  }
}

TEST_CASE("repetition code under insertions and deletions") {
  for (std::size_t len = 1; len <= 5; ++len) {
    for (std::uint64_t v = 0; v < (1ULL << len); ++v) {
      const auto x = BitString::from_uint(v, static_cast<unsigned>(len));
      const auto c = delcode::rep_encode(x, 4);
      delcode::IndelStream stream(c, 1);
      while (auto y = stream.next()) {
        REQUIRE(delcode::rep_decode_indel(*y, 4, len, 1) == x);
      }
    }
  }
  const auto c = delcode::rep_encode(bits("100"), 7);
  delcode::IndelStream stream(c, 2);
  while (auto y = stream.next()) {
    REQUIRE(delcode::rep_decode_indel(*y, 7, 3, 2) == bits("100"));
  }
  CHECK_FALSE(delcode::rep_decode_indel(bits("0011"), 4, 1, 1));
  CHECK_FALSE(delcode::rep_decode_indel(bits("00"), 4, 1, 1));
}

TEST_CASE("codeword geometry") {
  const auto params = delcode::derive_params(432, 1, delcode::Profile::kDesk);
  const auto g = delcode::codeword_geometry(params);
  CHECK(g.rep_factor == 2);
  CHECK(g.span(delcode::Segment::kR).length == params.n);
  CHECK(g.span(delcode::Segment::kT).length == params.L);
  CHECK(g.span(delcode::Segment::kRepHashT).length == 2 * g.hash_t.total_bits);
  CHECK(g.span(delcode::Segment::kMixed).length == params.mixed_hash_bits());
  CHECK(g.span(delcode::Segment::kRepHashMixed).length == 2 * g.hash_mixed.total_bits);
  std::size_t offset = 0;
  for (const auto& sp : g.spans) {
    CHECK(sp.offset == offset);
    offset = sp.end();
  }
  CHECK(g.total == offset);
  CHECK(g.redundancy() ==
        params.L + 2 * g.hash_t.total_bits + params.mixed_hash_bits() + 2 * g.hash_mixed.total_bits);

  const auto indel = delcode::derive_params(432, 1, delcode::Profile::kDesk, delcode::Channel::kIndel);
  const auto gi = delcode::codeword_geometry(indel);
  CHECK(gi.rep_factor == 4);
  CHECK(gi.redundancy() > g.redundancy());
}

TEST_CASE("deletion codec, k = 1") {
  const auto params = delcode::derive_params(432, 1, delcode::Profile::kDesk);
  std::mt19937_64 rng(31);
  for (int msg = 0; msg < 3; ++msg) {
    const auto s = random_bits(params.n, rng);
    const auto cw = delcode::encode(s, params);
    CHECK(cw.bits.size() == cw.geometry.total);
    CHECK(delcode::encode(s, params).bits == cw.bits);
    CHECK(delcode::decode(cw.bits, params) == s);
    // every single deletion at the segment boundaries and in a stride
    for (std::size_t pos = 0; pos < cw.bits.size(); pos += (msg == 0 ? 1 : 97)) {
      REQUIRE(delcode::decode(apply_deletions(cw.bits, {{pos}}), params) == s);
    }
    CHECK_FALSE(delcode::decode(cw.bits.slice(0, cw.bits.size() - 2), params));
  }
}

TEST_CASE("deletion codec, k = 2") {
  const auto params = delcode::derive_params(3708, 2, delcode::Profile::kDesk);
  std::mt19937_64 rng(32);
  const auto s = random_bits(params.n, rng);
  const auto cw = delcode::encode(s, params);
  for (int trial = 0; trial < 30; ++trial) {
    const auto y = apply_deletions(cw.bits, delcode::random_deletion_pattern(cw.bits.size(), trial % 3, rng));
    REQUIRE(delcode::decode(y, params) == s);
  }
}

TEST_CASE("indel codec, k = 1") {
  const auto params = delcode::derive_params(432, 1, delcode::Profile::kDesk, delcode::Channel::kIndel);
  std::mt19937_64 rng(33);
  const auto s = random_bits(params.n, rng);
  const auto cw = delcode::encode_indel(s, params);
  CHECK(delcode::encode(s, params).bits == cw.bits);
  CHECK(delcode::decode_indel(cw.bits, params) == s);
  for (int trial = 0; trial < 300; ++trial) {
    const auto y = delcode::channel_indel(cw.bits, 1, rng());
    REQUIRE(delcode::decode_indel(y, params) == s);
  }
  // insertions right at every segment boundary
  for (const auto& sp : cw.geometry.spans) {
    for (bool bit : {false, true}) {
      delcode::EditScript script{{{delcode::EditOp::Kind::kInsert, sp.offset, bit}}};
      REQUIRE(delcode::decode_indel(apply_edits(cw.bits, script), params) == s);
    }
  }
}

TEST_CASE("distinct messages give distinct codewords") {
  const auto params = delcode::derive_params(432, 1, delcode::Profile::kDesk);
  std::mt19937_64 rng(34);
  std::set<BitString> seen;
  for (int i = 0; i < 10000; ++i) {
    seen.insert(delcode::encode(random_bits(params.n, rng), params).bits);
  }
  CHECK(seen.size() == 10000);
}

TEST_CASE("deletion codewords are also one-indel separated") {
  // Two codewords reach a common string under <= k indels each exactly
  // when their indel distance is at most 2k; the enumeration below is the
  // literal check, the distance the cross-check.
  const auto params = delcode::derive_params(432, 1, delcode::Profile::kDesk);
  std::mt19937_64 rng(35);
  std::vector<BitString> words;
  // near neighbours of one message stress the property more than random ones
  const auto base = random_bits(params.n, rng);
  for (std::size_t i = 0; i < 6; ++i) {
    auto s = base;
    s.set(i * 70, !s[i * 70]);
    words.push_back(delcode::encode(s, params).bits);
  }
  // keyed by hash to keep memory flat; a cross-owner hit is confirmed by distance
  std::unordered_map<std::size_t, std::size_t> owner;
  const std::hash<BitString> hasher;
  for (std::size_t i = 0; i < words.size(); ++i) {
    delcode::IndelStream stream(words[i], 1);
    while (auto z = stream.next()) {
      auto [it, fresh] = owner.emplace(hasher(*z), i);
      if (!fresh && it->second != i) {
        REQUIRE(delcode::indel_distance_bounded(words[i], words[it->second], 2) > 2);
      }
    }
    for (std::size_t j = 0; j < i; ++j) {
      CHECK(delcode::indel_distance_bounded(words[i], words[j], 2) > 2);
    }
  }
}

TEST_CASE("decode rejects garbage without crashing") {
  const auto params = delcode::derive_params(432, 1, delcode::Profile::kDesk);
  const auto g = delcode::codeword_geometry(params);
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    const auto y = random_bits(g.total - trial % 2, rng);
    CHECK_FALSE(delcode::decode(y, params));
  }
  CHECK_FALSE(delcode::decode(BitString(), params));
}

TEST_CASE("analytic redundancy") {
  const auto a = delcode::analytic_redundancy(std::size_t{1} << 20, 2);
  CHECK(a.m == 7);
  CHECK(a.d == 800000);
  CHECK(a.L == 25088);
  CHECK(a.w == 20);
  std::size_t sum = 0;
  for (auto len : a.lengths) sum += len;
  CHECK(a.redundancy == sum - a.n);
  for (std::size_t e = 20; e <= 60; e += 10) {
    std::size_t prev = 0;
    for (unsigned k = 2; k <= 8; ++k) {
      const auto r = delcode::analytic_redundancy(std::size_t{1} << e, k);
      CHECK(r.redundancy > prev);
      prev = r.redundancy;
    }
  }
  CHECK_THROWS(delcode::analytic_redundancy(1000, 1));
}
