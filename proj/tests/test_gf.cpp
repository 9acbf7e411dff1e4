#include <random>

#include "delcode/errors.hpp"
#include "delcode/gf.hpp"
#include "doctest.h"

using delcode::GaloisField;
using delcode::Symbol;

TEST_CASE("smallest irreducible polynomials") {
  CHECK(delcode::smallest_irreducible(2) == 0b111);
  CHECK(delcode::smallest_irreducible(3) == 0b1011);
  CHECK(delcode::smallest_irreducible(4) == 0b10011);
  CHECK(delcode::smallest_irreducible(8) == 0x11B);
  CHECK(delcode::smallest_irreducible(16) == 0x1002B);
}

TEST_CASE("field axioms") {
  const auto& f = delcode::galois_field(8);
  for (Symbol a = 0; a < 256; ++a) {
    CHECK(f.mul(a, 1) == a);
    CHECK(GaloisField::add(a, a) == 0);
    if (a != 0) {
      REQUIRE(f.mul(a, f.inv(a)) == 1);
    }
  }
  CHECK_THROWS_AS(f.inv(0), std::invalid_argument);
  std::mt19937_64 rng(3);
  for (unsigned w : {2U, 5U, 12U, 16U}) {
    const auto& g = delcode::galois_field(w);
    for (int i = 0; i < 2000; ++i) {
      const Symbol a = rng() % g.size(), b = rng() % g.size(), c = rng() % g.size();
      REQUIRE(g.mul(a, b) == g.mul(b, a));
      REQUIRE(g.mul(a, g.mul(b, c)) == g.mul(g.mul(a, b), c));
      REQUIRE(g.mul(a, b ^ c) == (g.mul(a, b) ^ g.mul(a, c)));
    }
    CHECK(g.pow(g.generator(), g.order()) == 1);
  }
  CHECK_THROWS_AS(GaloisField(1), std::invalid_argument);
  CHECK_THROWS_AS(GaloisField(25), std::invalid_argument);
}

TEST_CASE("RS parity is linear and zero on zero") {
  const auto& f = delcode::galois_field(8);
  std::vector<Symbol> zero(20, 0);
  for (auto s : delcode::rs_parity(zero, 3, f).symbols) CHECK(s == 0);
  std::mt19937_64 rng(5);
  std::vector<Symbol> a(20), b(20), ab(20);
  for (int i = 0; i < 20; ++i) {
    a[i] = rng() % 256;
    b[i] = rng() % 256;
    ab[i] = a[i] ^ b[i];
  }
  const auto pa = delcode::rs_parity(a, 3, f), pb = delcode::rs_parity(b, 3, f), pab = delcode::rs_parity(ab, 3, f);
  for (std::size_t i = 0; i < 6; ++i) CHECK(pab.symbols[i] == (pa.symbols[i] ^ pb.symbols[i]));
  CHECK_THROWS_AS(delcode::rs_parity(std::vector<Symbol>(252, 1), 2, f), delcode::CapacityError);
}

TEST_CASE("RS corrects every single corruption, e=1, w=4") {
  const auto& f = delcode::galois_field(4);
  for (Symbol a = 0; a < 16; ++a) {
    for (Symbol b = 0; b < 16; b += 3) {
      const std::vector<Symbol> msg{a, b, static_cast<Symbol>((a * 7 + b) % 16)};
      const auto parity = delcode::rs_parity(msg, 1, f);
      REQUIRE(delcode::rs_correct(msg, parity, 1, f) == msg);
      for (std::size_t pos = 0; pos < 3; ++pos) {
        for (Symbol v = 0; v < 16; ++v) {
          auto bad = msg;
          bad[pos] = v;
          REQUIRE(delcode::rs_correct(bad, parity, 1, f) == msg);
        }
      }
      // beyond budget: must not crash
      auto two = msg;
      two[0] ^= 1;
      two[1] ^= 2;
      (void)delcode::rs_correct(two, parity, 1, f);
    }
  }
}

TEST_CASE("RS corrects up to e errors, shorter received frame") {
  const auto& f = delcode::galois_field(16);
  std::mt19937_64 rng(9);
  for (std::size_t e = 1; e <= 4; ++e) {
    const delcode::ReedSolomon rs(f, 300, e);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t len = 1 + rng() % 300;
      std::vector<Symbol> msg(len);
      for (auto& s : msg) s = rng() % 3 == 0 ? 0 : static_cast<Symbol>(rng() % f.size());
      const auto parity = rs.parity(msg);
      auto bad = msg;
      const std::size_t errors = rng() % (e + 1);
      for (std::size_t i = 0; i < errors; ++i) bad[rng() % len] ^= static_cast<Symbol>(1 + rng() % (f.size() - 1));
      REQUIRE(rs.correct(bad, parity.symbols) == msg);
    }
  }
}

TEST_CASE("RS corrects errors in the parity symbols too") {
  const auto& field = delcode::galois_field(8);
  delcode::ReedSolomon rs(field, 5, 2);
  const std::vector<delcode::Symbol> msg{1, 0, 200, 7, 9};
  const auto parity = rs.parity(msg).symbols;
  for (std::size_t i = 0; i < parity.size(); ++i) {
    for (std::size_t j = 0; j < msg.size() + parity.size(); ++j) {
      auto m = msg;
      auto p = parity;
      p[i] ^= 0x35;
      if (j < msg.size()) {
        m[j] ^= 0x81;
      } else if (j - msg.size() != i) {
        p[j - msg.size()] ^= 0x81;
      }
      CHECK(rs.correct(m, p) == msg);
    }
  }
  auto p = parity;
  p[0] ^= 1;
  p[1] ^= 2;
  p[2] ^= 3;
  CHECK(rs.correct(msg, p) != msg);
}
