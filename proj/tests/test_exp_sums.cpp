#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "sievelab/errors.hpp"
#include "sievelab/exp_sums.hpp"
#include "sievelab/random.hpp"

using namespace sievelab;

namespace {

std::complex<double> e(double x) { return std::polar(1.0, 2.0 * std::numbers::pi * x); }

// Pairs (a, d) with a*d = 1 found by scanning, no inverse routine involved.
std::complex<double> brute_kloosterman(i64 m, i64 n, i64 c) {
  std::complex<double> s{};
  for (i64 a = 0; a < c; ++a) {
    for (i64 d = 0; d < c; ++d) {
      if ((a * d) % c == 1 % c) s += e(static_cast<double>(m * a + n * d) / static_cast<double>(c));
    }
  }
  return s;
}

i64 brute_inverse(i64 x, i64 m) {
  x = ((x % m) + m) % m;
  for (i64 y = 0; y < m; ++y) {
    if (x * y % m == 1 % m) return y;
  }
  return -1;
}

std::complex<double> brute_amplitude(const AmplitudeSpec& s, i64 a) {
  const i64 c = s.q * s.q1 * s.q2;
  std::complex<double> sum{};
  for (i64 x = 0; x < c; ++x) {
    const i64 i1 = brute_inverse(x + s.l * s.q, s.q1);
    const i64 i2 = brute_inverse(x, s.q2);
    const i64 i3 = brute_inverse(x, s.q);
    if (i1 < 0 || i2 < 0 || i3 < 0) continue;
    const double phase = static_cast<double>(i1 * s.l1) / static_cast<double>(s.q1) -
                         static_cast<double>(i2 * s.l2) / static_cast<double>(s.q2) +
                         static_cast<double>(i3 * s.l) / static_cast<double>(s.q) -
                         static_cast<double>(a * x) / static_cast<double>(c);
    sum += e(phase);
  }
  return sum;
}

}  // namespace

TEST_CASE("kloosterman examples") {
  CHECK(std::abs(kloosterman(1, 1, 5) - 0.381966011250105) <= 1e-9);
  CHECK(std::abs(kloosterman(1, 1, 5) - (2.0 + 2.0 * std::cos(4.0 * std::numbers::pi / 5.0))) <= 1e-12);
  CHECK(std::abs(kloosterman(1, 1, 2) - 1.0) <= 1e-12);
  for (i64 c : {1, 6, 12, 35}) {
    for (i64 n = -3; n < 20; ++n) REQUIRE(std::abs(kloosterman(0, n, c) - ramanujan(n, c)) <= 1e-10 * c);
  }
}

TEST_CASE("kloosterman matches brute force and is real and symmetric") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const i64 c = 1 + static_cast<i64>(rng.next() % 60);
    const i64 m = static_cast<i64>(rng.next() % 200) - 100;
    const i64 n = static_cast<i64>(rng.next() % 200) - 100;
    const auto k = kloosterman(m, n, c);
    REQUIRE(std::abs(k - brute_kloosterman(m, n, c)) <= 1e-9 * static_cast<double>(c));
    REQUIRE(std::abs(k.imag()) <= 1e-10 * static_cast<double>(euler_phi(c)));
    REQUIRE(std::abs(k - kloosterman(n, m, c)) <= 1e-10 * static_cast<double>(c));
  }
}

TEST_CASE("ramanujan sums") {
  for (i64 q = 1; q <= 40; ++q) CHECK(ramanujan(0, q) == doctest::Approx(static_cast<double>(euler_phi(q))));
  CHECK(ramanujan(3, 5) == doctest::Approx(-1.0));
  CHECK(ramanujan(10, 5) == doctest::Approx(4.0));
  CHECK(ramanujan_closed_form(3, 5) == -1);
  CHECK(ramanujan_closed_form(10, 5) == 4);

  for (i64 q = 1; q <= 100; ++q) {
    for (i64 l = -50; l <= 200; ++l) {
      const double v = ramanujan(l, q);
      REQUIRE(std::abs(v - static_cast<double>(ramanujan_closed_form(l, q))) <= 1e-10 * static_cast<double>(q));
      REQUIRE(std::abs(v - ramanujan(-l, q)) <= 1e-10 * static_cast<double>(q));
      REQUIRE(std::abs(v) <= static_cast<double>(std::gcd(l, q)) + 1e-9);
    }
  }
}

TEST_CASE("weil_check") {
  auto r = weil_check(1, 1, 5);
  CHECK(r.passed);
  CHECK(r.bound == doctest::Approx(std::sqrt(5.0) * 2.0));
  r = weil_check(0, 0, 12);
  CHECK(r.passed);
  CHECK(r.value.real() == doctest::Approx(4.0));
  CHECK(r.bound == doctest::Approx(12.0 * 6.0));
  r = weil_check(1, 1, 105);
  CHECK(r.passed);
  CHECK(r.bound == doctest::Approx(std::sqrt(105.0) * 8.0));

  for (i64 c : {2, 3, 5, 7, 15, 35, 105}) {
    for (i64 m = 0; m < c; ++m) {
      for (i64 n = 0; n < c; ++n) REQUIRE(weil_check(m, n, c).passed);
    }
  }
}

TEST_CASE("gcd_sum") {
  CHECK(gcd_sum(1).value == 1);
  CHECK(gcd_sum(1).bound == 1);
  CHECK(gcd_sum(5).value == 9);
  CHECK(gcd_sum(5).bound == 10);
  CHECK(gcd_sum(12).value == 40);
  CHECK(gcd_sum(12).bound == 72);
  for (i64 q = 1; q <= 2000; ++q) {
    const auto g = gcd_sum(q);
    REQUIRE(g.value == gcd_sum_direct(q));
    REQUIRE(g.value <= g.bound);
  }
}

TEST_CASE("amplitude sums against brute force") {
  AmplitudeSpec s{3, 5, 7, 0, 0, 0};
  const auto zero = amplitude_sum(s, 0);
  CHECK(zero.value.real() == doctest::Approx(static_cast<double>(105 - zero.terms_skipped)));
  CHECK(zero.value.imag() == doctest::Approx(0.0));
  // x skipped when 5 | x, 7 | x or 3 | x: 105 - phi(105)
  CHECK(zero.terms_skipped == 105 - 48);

  s = {3, 5, 7, 1, 2, 3};
  const double rrr = ramanujan(2, 5) * ramanujan(-3, 7) * ramanujan(1, 3);
  CHECK(std::abs(amplitude_sum(s, 0).value - rrr) <= 1e-9);
  CHECK(rrr == doctest::Approx(-1.0));

  SplitMix64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    auto spec = random_distinct_spec(77, static_cast<u64>(trial), 11);
    if (trial % 4 == 0) spec.q1 = spec.q;  // repeated moduli are still well defined
    const i64 a = static_cast<i64>(rng.next() % 500);
    REQUIRE(std::abs(amplitude_sum(spec, a).value - brute_amplitude(spec, a)) <=
            1e-9 * static_cast<double>(spec.modulus()));
  }

  const auto spec = random_distinct_spec(5, 0, 7);
  const auto spectrum = amplitude_spectrum(spec);
  for (i64 a = 0; a < spec.modulus(); ++a) {
    REQUIRE(std::abs(spectrum[static_cast<std::size_t>(a)] - amplitude_sum(spec, a).value) <= 1e-10 * spec.modulus());
  }

  CHECK_THROWS_AS(amplitude_sum({4, 5, 7, 0, 0, 0}, 0), InvalidArgument);
  CHECK_THROWS_AS(amplitude_sum({10007, 10009, 20011, 0, 0, 0}, 0), ModulusOverflow);
}

TEST_CASE("factorization_check") {
  for (u64 t = 0; t < 100; ++t) {
    auto spec = random_distinct_spec(2024, t, 7);
    const auto r = factorization_check(spec);
    REQUIRE(r.passed);
    REQUIRE(std::abs(r.value) <= r.bound);
  }
  // l1 = 0 mod q1 makes the q1 factor phi(q1).
  AmplitudeSpec s{3, 5, 7, 1, 10, 2};
  CHECK(factorization_check(s).passed);
  CHECK(amplitude_sum(s, 0).value.real() ==
        doctest::Approx(4.0 * ramanujan(-2, 7) * ramanujan(1, 3)));
  CHECK_THROWS_AS(factorization_check({5, 5, 7, 1, 1, 1}), NotDistinct);
}

TEST_CASE("completion") {
  AmplitudeSpec s{3, 5, 7, 1, 2, 3};
  CHECK(complete_incomplete(s, 10, 9) == std::complex<double>{});
  CHECK(std::abs(complete_incomplete(s, 10, 40) - incomplete_direct(s, 10, 40)) <= 1e-8 * 31);
  CHECK(std::abs(complete_incomplete(s, 0, 104) - amplitude_sum(s, 0).value) <= 1e-8 * 105);
  CHECK_THROWS_AS(complete_incomplete(s, 0, 105), RangeTooLong);

  for (u64 t = 0; t < 200; ++t) {
    const auto spec = random_distinct_spec(404, t, 11);
    auto rng = SplitMix64::stream(405, t);
    const i64 c = spec.modulus();
    const i64 n0 = static_cast<i64>(rng.next() % 10'000) - 5'000;
    const i64 len = 1 + static_cast<i64>(rng.next() % static_cast<u64>(c));
    const auto lhs = complete_incomplete(spec, n0, n0 + len - 1);
    REQUIRE(std::abs(lhs - incomplete_direct(spec, n0, n0 + len - 1)) <= 1e-8 * static_cast<double>(len));
  }
}

TEST_CASE("error_term_bound") {
  auto r = error_term_bound({3, 5, 7, 1, 1, 1});
  CHECK(r.passed);
  CHECK(r.frequencies_checked == 104);
  CHECK(r.max_weil_ratio <= 1.0);

  r = error_term_bound({3, 5, 7, 0, 0, 0});
  CHECK(r.passed);

  r = error_term_bound({2, 3, 5, 1, 1, 1});
  CHECK(r.passed);
  CHECK(r.frequencies_checked == 29);

  // Harmonic sum computed independently.
  const AmplitudeSpec s{2, 3, 5, 1, 2, 1};
  double expected = 0.0;
  for (i64 a = -14; a <= 15; ++a) {
    if (a == 0) continue;
    expected += std::abs(brute_amplitude(s, a)) / static_cast<double>(std::abs(a));
  }
  CHECK(error_term_bound(s).harmonic_sum == doctest::Approx(expected).epsilon(1e-10));

  for (u64 t = 0; t < 60; ++t) REQUIRE(error_term_bound(random_distinct_spec(9, t, 13)).passed);
  CHECK_THROWS_AS(error_term_bound({5, 5, 7, 1, 1, 1}), NotDistinct);
}

TEST_CASE("random_distinct_spec is reproducible") {
  for (u64 t = 0; t < 50; ++t) {
    const auto a = random_distinct_spec(1, t, 23);
    const auto b = random_distinct_spec(1, t, 23);
    REQUIRE(a.distinct());
    REQUIRE((a.q == b.q && a.q1 == b.q1 && a.q2 == b.q2 && a.l == b.l && a.l1 == b.l1 && a.l2 == b.l2));
    REQUIRE(a.q <= 23);
  }
  CHECK_THROWS_AS(random_distinct_spec(1, 0, 4), InvalidArgument);
}
