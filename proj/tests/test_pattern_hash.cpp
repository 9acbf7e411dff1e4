#include "delcode/block_hash.hpp"
#include "delcode/errors.hpp"
#include "delcode/pattern_hash.hpp"
#include "doctest.h"

#include <random>

using delcode::BitString;
using delcode::ParameterSet;

namespace {

// Hand-sized parameters for a 7-bit string; not a valid code parameter set
// (the template predicate cannot hold at this size), but every field the
// per-pattern hash reads is consistent.
ParameterSet tiny() {
  ParameterSet p;
  p.n = 7;
  p.k = 1;
  p.m = 2;
  p.d = 7;
  p.L = 3;
  p.B = 2;
  p.w = 8;
  p.c = (delcode::segment_digest_bits(p.d, p.B, p.k, p.variant()) + p.w - 1) / p.w;
  return p;
}

BitString random_bits(std::size_t n, std::mt19937_64& rng) {
  BitString s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(rng() & 1U);
  return s;
}

}  // namespace

TEST_CASE("split by pattern") {
  const auto p = tiny();
  const auto split = delcode::split_by_pattern(BitString::from_string("0101010"), BitString::from_string("01"), p);
  CHECK(split.split_points == std::vector<std::size_t>{0, 2, 4});
  REQUIRE(split.segments.size() == 4);
  CHECK(split.segments[0].to_string().empty());
  CHECK(split.segments[1].to_string() == "01");
  CHECK(split.segments[2].to_string() == "01");
  CHECK(split.segments[3].to_string() == "010");
  auto q = p;
  q.d = 2;
  CHECK_THROWS_AS(delcode::split_by_pattern(BitString::from_string("0101010"), BitString::from_string("01"), q),
                  delcode::MixednessError);
}

TEST_CASE("segment digest shape") {
  const auto p = tiny();
  const auto empty = delcode::segment_digest(BitString(), p);
  CHECK(empty.size() == p.c * p.w);
  // all-zero padding, zero length field
  const auto layout = delcode::hash2_layout(p.d, p.B, p.k, p.variant());
  CHECK(empty.slice(delcode::kHash2HeaderBits, empty.size() - delcode::kHash2HeaderBits).count_ones() == 0);
  CHECK(delcode::segment_digest(BitString::from_string("010"), p).read_uint(layout.total_bits, 3) == 3);
}

TEST_CASE("g_pattern on a hand example") {
  const auto p = tiny();
  const auto r = BitString::from_string("0101010");
  const auto ph = delcode::h_pattern(r, 0b01, p);
  CHECK(ph.bits.size() == p.pattern_hash_bits());
  CHECK(delcode::g_pattern(r, ph.bits, 0b01, p) == r);
  const auto y = apply_deletions(r, {{6}});
  CHECK(delcode::is_pattern_preserving(r, {{6}}, 0b01, 2));
  CHECK(delcode::g_pattern(y, ph.bits, 0b01, p) == r);
  CHECK_FALSE(delcode::is_pattern_preserving(r, {{1}}, 0b01, 2));
  (void)delcode::g_pattern(apply_deletions(r, {{1}}), ph.bits, 0b01, p);
}

TEST_CASE("H_mixed and G_mixed at desk scale, k = 1") {
  const auto params = delcode::derive_params(432, 1, delcode::Profile::kDesk);
  std::mt19937_64 rng(21);
  for (int t = 0; t < 3; ++t) {
    const auto s = random_bits(params.n, rng);
    const auto r = mu(s, delcode::template_search(s, params).t);
    const auto mh = delcode::H_mixed(r, params);
    CHECK(mh.size() == params.mixed_hash_bits());
    CHECK(delcode::G_mixed(r, mh, params) == r);
    for (int trial = 0; trial < 100; ++trial) {
      const auto dp = delcode::random_deletion_pattern(params.n, 1, rng);
      const auto y = apply_deletions(r, dp);
      delcode::MixedDecodeStats stats;
      REQUIRE(delcode::G_mixed(y, mh, params, &stats) == r);
      std::size_t non_preserving = 0;
      for (std::uint64_t pat = 0; pat < params.pattern_count(); ++pat) {
        if (!delcode::is_pattern_preserving(r, dp, pat, params.m)) {
          ++non_preserving;
        } else {
          REQUIRE(delcode::g_pattern(y, mh.slice(pat * params.pattern_hash_bits(), params.pattern_hash_bits()), pat,
                                     params) == r);
        }
      }
      CHECK(non_preserving <= params.k * (2 * params.m - 1));
      CHECK(stats.agreeing_patterns >= params.pattern_count() - non_preserving);
    }
  }
}

TEST_CASE("G_mixed at desk scale, k = 2") {
  const auto params = delcode::derive_params(3708, 2, delcode::Profile::kDesk);
  std::mt19937_64 rng(22);
  const auto s = random_bits(params.n, rng);
  const auto r = mu(s, delcode::template_search(s, params).t);
  const auto mh = delcode::H_mixed(r, params);
  for (int trial = 0; trial < 20; ++trial) {
    const auto y = apply_deletions(r, delcode::random_deletion_pattern(params.n, 1 + trial % 2, rng));
    REQUIRE(delcode::G_mixed(y, mh, params) == r);
  }
}

TEST_CASE("G_mixed on the indel channel, k = 1") {
  const auto params = delcode::derive_params(432, 1, delcode::Profile::kDesk, delcode::Channel::kIndel);
  std::mt19937_64 rng(23);
  const auto s = random_bits(params.n, rng);
  const auto r = mu(s, delcode::template_search(s, params).t);
  const auto mh = delcode::H_mixed(r, params);
  for (int trial = 0; trial < 200; ++trial) {
    const auto y = delcode::channel_indel(r, 1, rng());
    REQUIRE(delcode::G_mixed(y, mh, params) == r);
  }
}

TEST_CASE("G_mixed never crashes on garbage") {
  const auto params = delcode::derive_params(432, 1, delcode::Profile::kDesk);
  std::mt19937_64 rng(24);
  const auto mh = random_bits(params.mixed_hash_bits(), rng);
  for (int trial = 0; trial < 50; ++trial) {
    const auto y = random_bits(params.n - trial % 2, rng);
    const auto out = delcode::G_mixed(y, mh, params);
    if (out) {
      CHECK(is_subsequence(y, *out));
    }
  }
}
