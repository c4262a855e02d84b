#include "sievelab/exp_sums.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sievelab/errors.hpp"
#include "sievelab/random.hpp"
#include "sievelab/summation.hpp"

namespace sievelab {

namespace {

constexpr double kBoundSlack = 1e-9;

void require_modulus(i64 c) {
  if (c < 1) throw InvalidArgument("modulus must be >= 1");
  if (c >= kModulusCap) throw ModulusOverflow(std::to_string(c));
}

}  // namespace

std::complex<double> kloosterman(i64 m, i64 n, i64 c) {
  require_modulus(c);
  const RootTable roots(c);
  const i64 mr = mod_floor(m, c);
  const i64 nr = mod_floor(n, c);
  CompensatedComplexSum sum;
  for (i64 a = 0; a < c; ++a) {
    const i64 d = try_inv_mod(a, c);
    if (d < 0) continue;
    sum += roots[(mul_mod(mr, a, c) + mul_mod(nr, d, c)) % c];
  }
  return sum.value();
}

double ramanujan(i64 l, i64 q) {
  require_modulus(q);
  const i64 lr = mod_floor(l, q);
  CompensatedSum sum;
  for (i64 a = 0; a < q; ++a) {
    if (gcd(a, q) != 1) continue;
    sum += unit_root(mul_mod(a, lr, q), q).real();
  }
  return sum.value();
}

i64 ramanujan_closed_form(i64 l, i64 q) {
  const i64 g = gcd(mod_floor(l, q), q);
  i64 total = 0;
  for (i64 d : divisors(g)) total += d * mobius(q / d);
  return total;
}

SumReport weil_check(i64 m, i64 n, i64 c) {
  SumReport r;
  r.value = kloosterman(m, n, c);
  const auto g = static_cast<double>(gcd(mod_floor(m, c), mod_floor(n, c), c));
  const auto cd = static_cast<double>(c);
  r.bound = std::sqrt(g) * std::sqrt(cd) * static_cast<double>(divisor_count(c));
  r.passed = std::abs(r.value) <= r.bound + kBoundSlack;
  return r;
}

GcdSum gcd_sum(i64 q) {
  i64 value = 0;
  for (i64 l : divisors(q)) value += l * euler_phi(q / l);
  return {value, q * divisor_count(q)};
}

i64 gcd_sum_direct(i64 q) {
  i64 value = 0;
  for (i64 d = 0; d < q; ++d) value += gcd(d, q);
  return value;
}

void AmplitudeSpec::validate() const {
  for (i64 m : {q, q1, q2}) {
    if (m < 2 || !is_prime(static_cast<u64>(m))) {
      throw InvalidArgument("amplitude moduli must be primes, got " + std::to_string(m));
    }
  }
  const i128 c = static_cast<i128>(q) * q1 * q2;
  if (c >= kModulusCap) throw ModulusOverflow("q*q1*q2 must stay below 2^40");
}

AmplitudeSpec random_distinct_spec(u64 seed, u64 trial, i64 pmax, i64 lrange) {
  const auto primes = primes_in(2, pmax);
  if (primes.size() < 3) throw InvalidArgument("need at least three primes <= pmax");
  auto rng = SplitMix64::stream(seed, trial);
  const auto count = static_cast<u64>(primes.size());
  std::size_t picks[3];
  for (int i = 0; i < 3; ++i) {
    bool fresh = false;
    while (!fresh) {
      picks[i] = static_cast<std::size_t>(rng.next() % count);
      fresh = std::find(picks, picks + i, picks[i]) == picks + i;
    }
  }
  const auto span = static_cast<u64>(2 * lrange + 1);
  const auto draw = [&] { return static_cast<i64>(rng.next() % span) - lrange; };
  AmplitudeSpec s;
  s.q = primes[picks[0]];
  s.q1 = primes[picks[1]];
  s.q2 = primes[picks[2]];
  s.l = draw();
  s.l1 = draw();
  s.l2 = draw();
  return s;
}

i64 amplitude_phase(const AmplitudeSpec& s, i64 x) {
  const i64 c = s.modulus();
  x = mod_floor(x, c);
  const i64 shifted = (x + mul_mod(mod_floor(s.l, s.q1), s.q, s.q1)) % s.q1;
  const i64 inv1 = try_inv_mod(shifted, s.q1);
  const i64 inv2 = try_inv_mod(x, s.q2);
  const i64 inv3 = try_inv_mod(x, s.q);
  if (inv1 < 0 || inv2 < 0 || inv3 < 0) return -1;
  const i64 t1 = mul_mod(mul_mod(inv1, mod_floor(s.l1, s.q1), c), c / s.q1, c);
  const i64 t2 = mul_mod(mul_mod(inv2, mod_floor(s.l2, s.q2), c), c / s.q2, c);
  const i64 t3 = mul_mod(mul_mod(inv3, mod_floor(s.l, s.q), c), c / s.q, c);
  return mod_floor(t1 - t2 + t3, c);
}

AmplitudeSum amplitude_sum(const AmplitudeSpec& spec, i64 a) {
  spec.validate();
  const i64 c = spec.modulus();
  const RootTable roots(c);
  const i64 ar = mod_floor(a, c);
  AmplitudeSum out;
  CompensatedComplexSum sum;
  for (i64 x = 0; x < c; ++x) {
    const i64 phase = amplitude_phase(spec, x);
    if (phase < 0) {
      ++out.terms_skipped;
      continue;
    }
    sum += roots[mod_floor(phase - mul_mod(ar, x, c), c)];
  }
  out.value = sum.value();
  return out;
}

std::vector<std::complex<double>> amplitude_spectrum(const AmplitudeSpec& spec) {
  spec.validate();
  const i64 c = spec.modulus();
  const RootTable roots(c);
  std::vector<i64> phases(static_cast<std::size_t>(c));
  for (i64 x = 0; x < c; ++x) phases[static_cast<std::size_t>(x)] = amplitude_phase(spec, x);

  std::vector<std::complex<double>> spectrum(static_cast<std::size_t>(c));
  for (i64 a = 0; a < c; ++a) {
    CompensatedComplexSum sum;
    i64 ax = 0;  // a*x mod c, advanced incrementally
    for (i64 x = 0; x < c; ++x, ax = (ax + a) % c) {
      const i64 phase = phases[static_cast<std::size_t>(x)];
      if (phase < 0) continue;
      sum += roots[phase >= ax ? phase - ax : phase - ax + c];
    }
    spectrum[static_cast<std::size_t>(a)] = sum.value();
  }
  return spectrum;
}

SumReport factorization_check(const AmplitudeSpec& spec) {
  spec.validate();
  if (!spec.distinct()) {
    throw NotDistinct("(" + std::to_string(spec.q) + ", " + std::to_string(spec.q1) + ", " +
                      std::to_string(spec.q2) + ")");
  }
  const auto s0 = amplitude_sum(spec, 0);
  const double product =
      ramanujan(spec.l1, spec.q1) * ramanujan(-spec.l2, spec.q2) * ramanujan(spec.l, spec.q);
  SumReport r;
  r.value = s0.value - product;
  r.bound = 1e-8 * static_cast<double>(spec.modulus());
  r.passed = std::abs(r.value) <= r.bound;
  r.terms_skipped = s0.terms_skipped;
  return r;
}

std::complex<double> incomplete_direct(const AmplitudeSpec& spec, i64 n0, i64 n1) {
  spec.validate();
  const i64 c = spec.modulus();
  CompensatedComplexSum sum;
  for (i64 n = n0; n <= n1; ++n) {
    const i64 phase = amplitude_phase(spec, n);
    if (phase >= 0) sum += unit_root(phase, c);
  }
  return sum.value();
}

std::complex<double> complete_incomplete(const AmplitudeSpec& spec, i64 n0, i64 n1) {
  spec.validate();
  if (n1 < n0) return {};
  const i64 c = spec.modulus();
  if (n1 - n0 >= c) throw RangeTooLong("interval must be shorter than q*q1*q2");

  const auto spectrum = amplitude_spectrum(spec);
  const RootTable roots(c);
  const i64 start = mod_floor(n0, c);
  CompensatedComplexSum total;
  for (i64 a = 0; a < c; ++a) {
    CompensatedComplexSum interval;
    i64 an = mul_mod(a, start, c);
    for (i64 n = n0; n <= n1; ++n, an = (an + a) % c) interval += roots[an];
    total += interval.value() * spectrum[static_cast<std::size_t>(a)];
  }
  return total.value() / static_cast<double>(c);
}

ErrorTermReport error_term_bound(const AmplitudeSpec& spec) {
  spec.validate();
  if (!spec.distinct()) throw NotDistinct("error_term_bound needs distinct moduli");
  const i64 c = spec.modulus();
  const auto spectrum = amplitude_spectrum(spec);
  const double scale = std::sqrt(static_cast<double>(c)) * static_cast<double>(divisor_count(c));

  ErrorTermReport r;
  r.terms_skipped = amplitude_sum(spec, 0).terms_skipped;
  r.passed = true;
  CompensatedSum harmonic;
  // Representatives a in (-c/2, c/2], reduced in ascending |a|.
  for (i64 k = 1; 2 * k <= c; ++k) {
    for (i64 a : {k, -k}) {
      if (a < 0 && 2 * k == c) continue;
      const double mag = std::abs(spectrum[static_cast<std::size_t>(mod_floor(a, c))]);
      harmonic += mag / static_cast<double>(k);
      const double bound = std::sqrt(static_cast<double>(gcd(mod_floor(a, c), c))) * scale;
      const double ratio = mag / bound;
      if (ratio > r.max_weil_ratio) {
        r.max_weil_ratio = ratio;
        r.worst_frequency = a;
      }
      if (mag > bound + kBoundSlack) r.passed = false;
      ++r.frequencies_checked;
    }
  }
  r.harmonic_sum = harmonic.value();
  return r;
}

}  // namespace sievelab
