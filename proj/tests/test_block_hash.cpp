#include "delcode/block_hash.hpp"
#include "delcode/errors.hpp"
#include "doctest.h"

using delcode::BitString;
using delcode::TableVariant;

TEST_CASE("hash2 geometry") {
  const auto s12 = BitString::from_string("011010011100");
  const auto d = delcode::hash2(s12, 4, 1, TableVariant::kDeletion);
  CHECK(d.layout.block_count() == 3);
  CHECK(d.colors.size() == 3);
  const auto& t4 = delcode::cached_table(4, 1, TableVariant::kDeletion);
  CHECK(d.colors[0] == t4.colors[0b0110]);
  CHECK(d.colors[1] == t4.colors[0b1001]);
  CHECK(d.colors[2] == t4.colors[0b1100]);
  CHECK(d.to_bits().size() == 21 + 3 * t4.width);

  const auto s10 = BitString::from_string("0110100111");
  const auto d10 = delcode::hash2(s10, 4, 1, TableVariant::kDeletion);
  CHECK(d10.layout.block_count() == 3);
  CHECK(d10.layout.tail_len == 2);
  CHECK_FALSE(d10.layout.tail_verbatim);
  CHECK(d10.colors[2] == delcode::cached_table(2, 1, TableVariant::kDeletion).colors[0b11]);

  const auto d9 = delcode::hash2(BitString::from_string("011010011"), 4, 1, TableVariant::kDeletion);
  CHECK(d9.layout.tail_verbatim);
  CHECK(d9.verbatim_tail.to_string() == "1");
  CHECK(d9.to_bits().size() == 21 + 2 * t4.width + 1);

  CHECK_THROWS_AS(delcode::hash2(s12, 2, 2, TableVariant::kDeletion), std::invalid_argument);
  CHECK_THROWS_AS(delcode::hash2(s12, 15, 2, TableVariant::kDeletion), delcode::CapacityError);
  CHECK(delcode::default_block_len(3708, 2) == 12);
  CHECK(delcode::default_block_len(100, 2) == 7);
  CHECK(delcode::default_block_len(4, 5) == 6);
}

TEST_CASE("hash2 serialization round trip") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const std::size_t len = rng() % 200;
    BitString s;
    for (std::size_t i = 0; i < len; ++i) s.push_back(rng() & 1U);
    const unsigned k = 1 + rng() % 2;
    const auto variant = rng() % 2 ? TableVariant::kDeletion : TableVariant::kIndel4k;
    const unsigned B = 6 + rng() % 3;
    const auto d = delcode::hash2(s, B, k, variant);
    const auto bits = d.to_bits();
    REQUIRE(bits.size() == d.layout.total_bits);
    const auto back = delcode::Hash2Digest::parse(bits, len);
    REQUIRE(back.has_value());
    REQUIRE(back->to_bits() == bits);
    REQUIRE(delcode::Hash2Digest::parse(bits, d.layout).has_value());
    // padding shortcut matches the materialized padding
    const std::size_t pad = len + rng() % 40;
    BitString v(pad - len);
    v.append(s);
    const auto layout = delcode::hash2_layout(pad, B, k, variant);
    REQUIRE(delcode::hash2_padded_bits(s, pad, layout) == delcode::hash2(v, B, k, variant).to_bits());
  }
  CHECK_FALSE(delcode::Hash2Digest::parse(BitString::from_string("0101"), 10).has_value());
}

TEST_CASE("hash2 window example") {
  // s of length 12, B = 4, k = 1, delete bit 5: block 1 decodes from y[4..6].
  const auto s = BitString::from_string("011010011100");
  const auto y = apply_deletions(s, {{5}});
  CHECK(y.slice(4, 3).to_string() == "101");
  const auto d = delcode::hash2(s, 4, 1, TableVariant::kDeletion);
  CHECK(delcode::hash2_decode(y, d, 12) == s);
  CHECK(delcode::hash2_decode(s, d, 12) == s);
  CHECK_FALSE(delcode::hash2_decode(y.slice(0, 10), d, 12).has_value());
}

TEST_CASE("hash2 deletion decode, exhaustive at length 12") {
  for (unsigned B : {4U, 5U}) {
    for (unsigned k = 1; k <= 2; ++k) {
      for (std::uint64_t v = 0; v < 4096; v += (k == 2 ? 7 : 1)) {
        const auto s = BitString::from_uint(v, 12);
        const auto d = delcode::hash2(s, B, k, TableVariant::kDeletion);
        delcode::DeletionStream st(s, k);
        while (auto y = st.next()) {
          REQUIRE(delcode::hash2_decode(*y, d, 12) == s);
        }
      }
    }
  }
}

TEST_CASE("hash2 indel decode, exhaustive at length 12, k = 1") {
  for (std::uint64_t v = 0; v < 4096; ++v) {
    const auto s = BitString::from_uint(v, 12);
    const auto d = delcode::hash2(s, 4, 1, TableVariant::kIndel4k);
    delcode::IndelStream st(s, 1);
    while (auto y = st.next()) {
      REQUIRE(delcode::hash2_decode_indel(*y, d, 12, 1) == s);
    }
  }
}

TEST_CASE("hash2 indel decode, sampled k = 2") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 3000; ++t) {
    BitString s;
    const std::size_t len = 8 + rng() % 60;
    for (std::size_t i = 0; i < len; ++i) s.push_back(rng() & 1U);
    const auto d = delcode::hash2(s, 9, 2, TableVariant::kIndel4k);
    const auto y = delcode::channel_indel(s, rng() % 3, rng());
    REQUIRE(delcode::hash2_decode_indel(y, d, len, 2) == s);
  }
}
