#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <thread>

#include "sievelab/characters.hpp"
#include "sievelab/errors.hpp"
#include "sievelab/oracle.hpp"

using namespace sievelab;

namespace {

const std::vector<i64> kSmallPrimes{2, 3, 5, 7, 11, 13};

std::vector<i64> units_mod_square(i64 p) {
  std::vector<i64> u;
  for (i64 x = 1; x < p * p; ++x) {
    if (x % p != 0) u.push_back(x);
  }
  return u;
}

std::vector<RationalAngle> value_vector(const SpecialCharacter& chi) {
  std::vector<RationalAngle> out;
  for (i64 u : units_mod_square(chi.p())) out.push_back(chi(u).angle);
  return out;
}

}  // namespace

TEST_CASE("teichmuller_split") {
  auto d = teichmuller_split(1, 7);
  CHECK(d.t == 1);
  CHECK(d.h == 1);

  d = teichmuller_split(2, 5);
  CHECK(d.t == 7);
  CHECK(d.h == 11);

  d = teichmuller_split(6, 5);
  CHECK(d.t == 1);
  CHECK(d.h == 6);

  CHECK_THROWS_AS(teichmuller_split(10, 5), NotAUnit);

  for (i64 p : {2, 3, 5, 7, 11, 13, 31, 97}) {
    const i64 m = p * p;
    for (i64 x : units_mod_square(p)) {
      const auto s = teichmuller_split(x, p);
      REQUIRE(s.t * s.h % m == x);
      REQUIRE(pow_mod(s.t, static_cast<u64>(p - 1), m) == 1);
      REQUIRE(s.h % p == 1);
    }
  }
}

TEST_CASE("xi_eval examples") {
  const SpecialCharacter chi3(3, 1, 0);
  CHECK(chi3(4).angle == RationalAngle(1, 3));
  CHECK(chi3(2).angle == RationalAngle(2, 3));
  CHECK(chi3(2).angle + chi3(2).angle == chi3(4).angle);
  CHECK(chi3(1).angle.is_zero());
  CHECK(chi3(3).zero);
  CHECK(chi3(0).zero);

  const SpecialCharacter chi5(5, 1, 0);
  CHECK(chi5(6).angle == RationalAngle(1, 5));

  for (i64 p : kSmallPrimes) {
    for (const auto& chi : enumerate_G_a(p, 2)) REQUIRE(chi(1) == CharacterValue{false, RationalAngle()});
  }

  CHECK(chi3(-1).angle == chi3(8).angle);
  CHECK_THROWS_AS(SpecialCharacter(3, 1, 2), InvalidArgument);
  CHECK_THROWS_AS(SpecialCharacter(9, 1, 0), InvalidArgument);
}

TEST_CASE("enumerate_G_a examples") {
  const auto g31 = enumerate_G_a(3, 1);
  REQUIRE(g31.size() == 2);
  const std::vector<RationalAngle> expected{RationalAngle(0, 1), RationalAngle(2, 3), RationalAngle(1, 3),
                                            RationalAngle(1, 3), RationalAngle(2, 3), RationalAngle(0, 1)};
  CHECK(value_vector(g31[0]) == expected);
  CHECK(g31[0](4).angle + g31[0](5).angle == g31[0](20 % 9).angle);

  const auto g21 = enumerate_G_a(2, 1);
  REQUIRE(g21.size() == 1);
  CHECK(g21[0](3).angle == RationalAngle(1, 2));
  CHECK(g21[0](3).to_complex() == std::complex<double>(-1.0, 0.0));

  // G_0 mod 49 is the lift of the characters mod 7.
  const auto g70 = enumerate_G_a(7, 0);
  REQUIRE(g70.size() == 6);
  for (const auto& chi : g70) {
    for (i64 x : units_mod_square(7)) REQUIRE(chi(x) == dirichlet_char_mod_p(7, chi.j(), x % 7));
  }
}

TEST_CASE("dirichlet_char_mod_p") {
  for (i64 n = 1; n < 5; ++n) CHECK(dirichlet_char_mod_p(5, 0, n).angle.is_zero());
  CHECK(dirichlet_char_mod_p(3, 1, 2).angle == RationalAngle(1, 2));
  CHECK(dirichlet_char_mod_p(5, 2, 4).angle == RationalAngle(0, 1));
  CHECK(dirichlet_char_mod_p(5, 1, 10).zero);
  CHECK_THROWS_AS(dirichlet_char_mod_p(5, 4, 1), InvalidArgument);
  // Large prime uses baby-step giant-step instead of the table.
  const i64 big = 10'007;
  const auto v = dirichlet_char_mod_p(big, 1, primitive_root(big, 1));
  CHECK(v.angle == RationalAngle(1, big - 1));
}

TEST_CASE("multiplicativity and periodicity") {
  for (i64 p : primes_in(2, 31)) {
    const i64 m = p * p;
    for (i64 a : {i64{0}, i64{1}, p - 1}) {
      for (const auto& chi : enumerate_G_a(p, a)) {
        for (i64 x = 0; x < m; x += (p > 11 ? 5 : 1)) {
          const auto vx = chi(x);
          REQUIRE(vx == chi(x + m));
          for (i64 y = 0; y < m; y += (p > 11 ? 11 : 1)) {
            const auto vy = chi(y);
            const auto vxy = chi(x * y);
            if (vx.zero || vy.zero) {
              REQUIRE(vxy.zero);
            } else {
              REQUIRE_FALSE(vxy.zero);
              REQUIRE(vxy.angle == vx.angle + vy.angle);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("restriction to principal units") {
  for (i64 p : primes_in(2, 31)) {
    for (i64 a = 0; a < p; ++a) {
      const auto members = enumerate_G_a(p, a);
      REQUIRE(static_cast<i64>(members.size()) == euler_phi(p));
      for (const auto& chi : members) {
        for (i64 x = 1; x < p * p; x += p) REQUIRE(chi(x).angle == RationalAngle(a * (x - 1), p * p));
      }
    }
  }
}

TEST_CASE("members are pairwise distinct") {
  for (i64 p : kSmallPrimes) {
    for (i64 a = 0; a < p; ++a) {
      std::set<std::vector<RationalAngle>> rows;
      for (const auto& chi : enumerate_G_a(p, a)) rows.insert(value_vector(chi));
      REQUIRE(static_cast<i64>(rows.size()) == euler_phi(p));
    }
  }
}

TEST_CASE("closed form matches the generator oracle") {
  for (i64 p : kSmallPrimes) {
    const auto table = oracle::all_characters(p);
    for (i64 a = 0; a < p; ++a) {
      auto expected = oracle::filter_G_a(table, a);
      std::vector<std::vector<RationalAngle>> got;
      for (const auto& chi : enumerate_G_a(p, a)) got.push_back(value_vector(chi));
      std::sort(expected.begin(), expected.end());
      std::sort(got.begin(), got.end());
      REQUIRE(got == expected);
    }
  }
}

TEST_CASE("CharacterFamily agrees with SpecialCharacter") {
  for (i64 p : primes_in(2, 41)) {
    for (i64 a : {i64{0}, i64{1}, i64{3}}) {
      const CharacterFamily family(p, a);
      const auto members = enumerate_G_a(p, a);
      REQUIRE(family.size() == static_cast<i64>(members.size()));
      for (i64 n = -3 * p; n < 4 * p * p; n += 1 + p / 5) {
        const auto data = family.unit_data(n);
        for (const auto& chi : members) {
          const auto v = chi(n);
          REQUIRE(v.zero == !data.has_value());
          if (data) REQUIRE(v.angle == RationalAngle(family.exponent(chi.j(), *data), family.denominator()));
        }
      }
    }
  }
}

TEST_CASE("index tables are shared across threads") {
  std::vector<std::shared_ptr<const IndexTable>> seen(8);
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    pool.emplace_back([&, i] { seen[i] = index_table(8191); });
  }
  for (auto& t : pool) t.join();
  for (const auto& t : seen) CHECK(t == seen.front());
  CHECK(seen.front()->index(seen.front()->generator()) == 1);
}
