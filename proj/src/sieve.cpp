#include "sievelab/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sievelab/characters.hpp"
#include "sievelab/errors.hpp"
#include "sievelab/parallel.hpp"
#include "sievelab/random.hpp"
#include "sievelab/summation.hpp"

namespace sievelab {

CoefficientSequence::CoefficientSequence(i64 offset, std::vector<std::complex<double>> values)
    : offset_(offset), values_(std::move(values)) {}

double CoefficientSequence::norm2() const {
  CompensatedSum s;
  for (const auto& z : values_) s += std::norm(z);
  return s.value();
}

double CoefficientSequence::norm2_coprime(i64 q) const {
  CompensatedSum s;
  for (i64 n = first(); n <= last(); ++n) {
    if (mod_floor(n, q) != 0) s += std::norm(at(n));
  }
  return s.value();
}

bool CoefficientSequence::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const auto& z) { return z == std::complex<double>{}; });
}

ModulusTerm character_side_term(i64 q, const CoefficientSequence& seq, i64 a) {
  const CharacterFamily family(q, a);
  const i64 den = family.denominator();
  const RootTable roots(den);

  struct Unit {
    std::complex<double> coeff;
    i64 base;
    i64 step;
  };
  std::vector<Unit> units;
  units.reserve(static_cast<std::size_t>(seq.size()));
  for (i64 n = seq.first(); n <= seq.last(); ++n) {
    const auto& c = seq.at(n);
    if (c == std::complex<double>{}) continue;
    const auto data = family.unit_data(n);
    if (!data) continue;
    units.push_back({c, family.exponent(0, *data), family.exponent(1, *data) - family.exponent(0, *data)});
  }
  for (auto& u : units) u.step = mod_floor(u.step, den);

  CompensatedSum total;
  for (i64 j = 0; j < family.size(); ++j) {
    CompensatedComplexSum inner;
    for (auto& u : units) {
      inner += u.coeff * roots[u.base];
      u.base += u.step;
      if (u.base >= den) u.base -= den;
    }
    total += std::norm(inner.value());
  }
  const double weight = static_cast<double>(q) / static_cast<double>(q - 1);
  return {q, weight * total.value(), 0.0};
}

ModulusTerm congruence_side_term(i64 q, const CoefficientSequence& seq) {
  const RootTable roots(q);
  CompensatedComplexSum total;
  for (i64 n = seq.first(); n <= seq.last(); ++n) {
    const i64 inv = try_inv_mod(n, q);
    if (inv < 0) continue;
    const auto left = std::conj(seq.at(n));
    if (left == std::complex<double>{}) continue;
    // n' = n + k*q, so (n' - n)/q = k.
    const i64 k_lo = -((n - seq.first()) / q);
    const i64 k_hi = (seq.last() - n) / q;
    for (i64 k = k_lo; k <= k_hi; ++k) {
      total += left * seq.at(n + k * q) * roots[mul_mod(inv, mod_floor(k, q), q)];
    }
  }
  const auto v = total.value() * static_cast<double>(q);
  return {q, v.real(), v.imag()};
}

namespace {

template <typename TermFn>
std::vector<ModulusTerm> per_prime(i64 Q, unsigned threads, TermFn&& term) {
  if (Q < 2) throw InvalidArgument("Q must be >= 2");
  const auto primes = primes_in(2, Q);
  std::vector<ModulusTerm> out(primes.size());
  parallel_for(primes.size(), threads, [&](std::size_t i) { out[i] = term(primes[i]); });
  return out;
}

double ordered_total(const std::vector<ModulusTerm>& terms) {
  CompensatedSum s;
  for (const auto& t : terms) s += t.value;
  return s.value();
}

}  // namespace

std::vector<ModulusTerm> character_side_terms(i64 Q, const CoefficientSequence& seq, i64 a,
                                              unsigned threads) {
  return per_prime(Q, threads, [&](i64 q) { return character_side_term(q, seq, a); });
}

std::vector<ModulusTerm> congruence_side_terms(i64 Q, const CoefficientSequence& seq, unsigned threads) {
  return per_prime(Q, threads, [&](i64 q) { return congruence_side_term(q, seq); });
}

double lhs_character_side(i64 Q, const CoefficientSequence& seq, i64 a, unsigned threads) {
  return ordered_total(character_side_terms(Q, seq, a, threads));
}

double lhs_congruence_side(i64 Q, const CoefficientSequence& seq, unsigned threads) {
  return ordered_total(congruence_side_terms(Q, seq, threads));
}

double identity_check(i64 Q, const CoefficientSequence& seq, unsigned threads) {
  const double lhs = lhs_character_side(Q, seq, 1, threads);
  const double rhs = lhs_congruence_side(Q, seq, threads);
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

SumReport trivial_bound_check(i64 q, const CoefficientSequence& seq) {
  if (!is_prime(static_cast<u64>(q))) throw InvalidArgument(std::to_string(q) + " is not prime");
  const double vq = character_side_term(q, seq).value;
  const double main = static_cast<double>(q) * seq.norm2_coprime(q);
  SumReport r;
  r.value = vq - main;
  r.bound = 2.0 * static_cast<double>(seq.size()) * seq.norm2();
  r.passed = std::abs(r.value) <= r.bound + 1e-9 * std::max(1.0, r.bound);
  return r;
}

i64 max_congruent_partners(i64 q, i64 N) { return (N + q - 1) / q - 1; }

GramKernel::GramKernel(i64 Q, i64 N, i64 M, unsigned threads) : Q_(Q), N_(N), M_(M) {
  if (Q < 2) throw InvalidArgument("Q must be >= 2");
  if (N < 1) throw InvalidArgument("N must be >= 1");
  if (N > kMaxSize) throw SizeCap("Gram kernel is capped at N = " + std::to_string(kMaxSize));
  entries_.assign(static_cast<std::size_t>(N * N), {});
  const auto primes = primes_in(2, Q);
  std::vector<RootTable> roots;
  roots.reserve(primes.size());
  for (i64 q : primes) roots.emplace_back(q);

  parallel_for(static_cast<std::size_t>(N), threads, [&](std::size_t row_index) {
    const auto row = static_cast<i64>(row_index);
    const i64 n = M + 1 + row;
    auto* out = &entries_[static_cast<std::size_t>(row * N)];
    for (std::size_t qi = 0; qi < primes.size(); ++qi) {
      const i64 q = primes[qi];
      const i64 inv = try_inv_mod(n, q);
      if (inv < 0) continue;
      const auto weight = static_cast<double>(q);
      for (i64 col = row % q; col < N; col += q) {
        const i64 k = (col - row) / q;
        out[col] += weight * roots[qi][mul_mod(inv, mod_floor(k, q), q)];
      }
    }
  });
}

std::vector<std::complex<double>> GramKernel::apply(const std::vector<std::complex<double>>& v) const {
  std::vector<std::complex<double>> w(static_cast<std::size_t>(N_));
  for (i64 r = 0; r < N_; ++r) {
    const auto* row = &entries_[static_cast<std::size_t>(r * N_)];
    std::complex<double> acc{};
    for (i64 c = 0; c < N_; ++c) acc += row[c] * v[static_cast<std::size_t>(c)];
    w[static_cast<std::size_t>(r)] = acc;
  }
  return w;
}

double GramKernel::quadratic_form(const CoefficientSequence& seq) const {
  if (seq.size() != N_ || seq.offset() != M_) throw InvalidArgument("sequence does not match kernel window");
  const auto w = apply(seq.values());
  CompensatedComplexSum s;
  for (i64 r = 0; r < N_; ++r) s += std::conj(seq.values()[static_cast<std::size_t>(r)]) * w[static_cast<std::size_t>(r)];
  return s.value().real();
}

double GramKernel::max_hermitian_defect() const {
  double worst = 0.0;
  for (i64 r = 0; r < N_; ++r) {
    for (i64 c = r; c < N_; ++c) worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  }
  return worst;
}

namespace {

double norm(const std::vector<std::complex<double>>& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

ExtremalResult power_iteration(const GramKernel& kernel, const PowerIterationOptions& opts) {
  const i64 n = kernel.size();
  ExtremalResult out;
  auto rng = SplitMix64::stream(opts.seed, static_cast<u64>(n));
  std::vector<std::complex<double>> v(static_cast<std::size_t>(n));
  for (auto& z : v) z = rng.complex_symmetric();
  {
    const double nv = norm(v);
    for (auto& z : v) z /= nv;
  }

  double lambda_prev = std::numeric_limits<double>::infinity();
  for (i64 it = 1; it <= opts.max_iterations; ++it) {
    auto w = kernel.apply(v);
    double lambda = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) lambda += (std::conj(v[i]) * w[i]).real();

    double res2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) res2 += std::norm(w[i] - lambda * v[i]);
    const double residual = std::sqrt(res2);
    const double wn = norm(w);

    out.iterations = it;
    out.lambda_max = lambda;
    out.residual = residual;
    if (wn == 0.0) {  // the start vector lies in the kernel's null space
      out.lambda_max = 0.0;
      out.residual = 0.0;
      out.witness = std::move(v);
      out.converged = true;
      return out;
    }
    const bool settled = std::abs(lambda - lambda_prev) <= opts.tolerance * std::max(1.0, lambda);
    if (settled && residual <= opts.residual_tolerance * std::max(lambda, 1e-300)) {
      out.witness = std::move(v);
      out.converged = true;
      return out;
    }
    lambda_prev = lambda;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = w[i] / wn;
  }
  out.witness = std::move(v);
  out.converged = false;
  return out;
}

ExtremalResult extremal_delta(i64 Q, i64 N, i64 M, const PowerIterationOptions& opts, unsigned threads) {
  return power_iteration(GramKernel(Q, N, M, threads), opts);
}

double trivial_envelope(i64 Q, i64 N) {
  double s = 0.0;
  for (i64 q : primes_in(2, Q)) s += static_cast<double>(q + 2 * N);
  return s;
}

double theorem_envelope(i64 Q, i64 N) {
  const auto q = static_cast<double>(Q);
  const auto n = static_cast<double>(N);
  return n * std::sqrt(q) + std::pow(n, 0.25) * q * q + std::pow(n, 0.75) * std::pow(q, 11.0 / 8.0);
}

Regime classify_regime(i64 Q, i64 N) {
  if (N <= Q) return Regime::Trivial;
  const auto q = static_cast<double>(Q);
  if (static_cast<double>(N) >= q * std::sqrt(q)) return Regime::Theorem;
  return Regime::Intermediate;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Trivial: return "trivial";
    case Regime::Intermediate: return "intermediate";
    case Regime::Theorem: return "theorem";
  }
  return "unknown";
}

SieveReport bound_report(i64 Q, i64 N, i64 M, unsigned threads) {
  SieveReport r;
  r.Q = Q;
  r.N = N;
  r.M = M;
  const auto extremal = extremal_delta(Q, N, M, {}, threads);
  r.lambda_max = extremal.lambda_max;
  r.converged = extremal.converged;
  r.iterations = extremal.iterations;

  const CoefficientSequence witness(M, extremal.witness);
  r.character_terms = character_side_terms(Q, witness, 1, threads);
  r.congruence_terms = congruence_side_terms(Q, witness, threads);
  r.character_total = ordered_total(r.character_terms);
  r.congruence_total = ordered_total(r.congruence_terms);
  CompensatedSum dyadic;
  for (std::size_t i = 0; i < r.character_terms.size(); ++i) {
    const auto& t = r.character_terms[i];
    r.max_abs_discrepancy = std::max(r.max_abs_discrepancy, std::abs(t.value - r.congruence_terms[i].value));
    if (2 * t.q > Q) dyadic += t.value / static_cast<double>(t.q);
  }
  r.dyadic_block_total = dyadic.value();

  r.trivial_envelope = trivial_envelope(Q, N);
  r.theorem_envelope = theorem_envelope(Q, N);
  r.ratio_trivial = r.lambda_max / r.trivial_envelope;
  r.ratio_theorem = r.lambda_max / r.theorem_envelope;
  r.regime = classify_regime(Q, N);
  r.includes_q2 = Q >= 2;
  return r;
}

double classical_mult_lhs(i64 Q, const CoefficientSequence& seq) {
  if (Q < 2) throw InvalidArgument("Q must be >= 2");
  CompensatedSum total;
  for (i64 q : primes_in(2, Q)) {
    if (q == 2) continue;  // no non-principal characters mod 2
    const auto table = index_table(q);
    const i64 order = q - 1;
    const RootTable roots(order);
    std::vector<std::pair<std::complex<double>, i64>> units;
    for (i64 n = seq.first(); n <= seq.last(); ++n) {
      if (mod_floor(n, q) == 0) continue;
      units.emplace_back(seq.at(n), table->index(n));
    }
    CompensatedSum per_q;
    for (i64 j = 1; j < order; ++j) {
      CompensatedComplexSum inner;
      for (const auto& [c, ind] : units) inner += c * roots[mul_mod(j, ind, order)];
      per_q += std::norm(inner.value());
    }
    total += static_cast<double>(q) / static_cast<double>(order) * per_q.value();
  }
  return total.value();
}

}  // namespace sievelab
