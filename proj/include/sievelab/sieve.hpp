#pragma once

// The large-sieve quantity for the G_a families modulo prime squares.
//
// For each prime q <= Q,
//   V_q = (q/phi(q)) * sum_{xi in G_a mod q^2} |sum_n a_n xi(n)|^2,
// and for a = 1 orthogonality of the characters mod q collapses this to
//   V_q = q * sum_{n = n' mod q} conj(a_n) a_n' e(inv(n) * ((n'-n)/q) / q),
// with both n, n' coprime to q. The character side and the congruence side
// are computed by unrelated code paths so that their agreement is a check.

#include <complex>
#include <string>
#include <vector>

#include "sievelab/exp_sums.hpp"
#include "sievelab/modular.hpp"

namespace sievelab {

/// a_n for n = M+1 .. M+N.
class CoefficientSequence {
 public:
  CoefficientSequence() = default;
  CoefficientSequence(i64 offset, std::vector<std::complex<double>> values);

  i64 offset() const { return offset_; }
  i64 size() const { return static_cast<i64>(values_.size()); }
  i64 first() const { return offset_ + 1; }
  i64 last() const { return offset_ + size(); }

  const std::complex<double>& at(i64 n) const { return values_[static_cast<std::size_t>(n - offset_ - 1)]; }
  const std::vector<std::complex<double>>& values() const { return values_; }

  double norm2() const;
  /// sum of |a_n|^2 over n coprime to q.
  double norm2_coprime(i64 q) const;
  bool is_zero() const;

 private:
  i64 offset_ = 0;
  std::vector<std::complex<double>> values_;
};

struct ModulusTerm {
  i64 q = 0;
  double value = 0.0;
  double imag_residue = 0.0;
};

/// Per-prime character-side terms V_q for primes q <= Q, ascending.
std::vector<ModulusTerm> character_side_terms(i64 Q, const CoefficientSequence& seq, i64 a = 1,
                                              unsigned threads = 1);
std::vector<ModulusTerm> congruence_side_terms(i64 Q, const CoefficientSequence& seq,
                                               unsigned threads = 1);

/// V_q for a single prime q by direct character evaluation.
ModulusTerm character_side_term(i64 q, const CoefficientSequence& seq, i64 a = 1);
ModulusTerm congruence_side_term(i64 q, const CoefficientSequence& seq);

double lhs_character_side(i64 Q, const CoefficientSequence& seq, i64 a = 1, unsigned threads = 1);
double lhs_congruence_side(i64 Q, const CoefficientSequence& seq, unsigned threads = 1);

/// |character - congruence| / max(1, character), totals over q <= Q.
double identity_check(i64 Q, const CoefficientSequence& seq, unsigned threads = 1);

/// |V_q - q * sum_{(n,q)=1} |a_n|^2| <= 2N * sum |a_n|^2.
/// The report value is the (real) discrepancy.
SumReport trivial_bound_check(i64 q, const CoefficientSequence& seq);

/// Largest number of other indices in an N-window congruent to a given one
/// mod q, i.e. ceil(N/q) - 1; the per-row count behind the trivial bound.
i64 max_congruent_partners(i64 q, i64 N);

/// Dense Hermitian N x N matrix B with seq* B seq equal to the congruence side.
class GramKernel {
 public:
  static constexpr i64 kMaxSize = 4096;

  GramKernel(i64 Q, i64 N, i64 M, unsigned threads = 1);

  i64 Q() const { return Q_; }
  i64 size() const { return N_; }
  i64 offset() const { return M_; }

  /// B[n, n'] stored at row n - M - 1, column n' - M - 1.
  std::complex<double> operator()(i64 row, i64 col) const {
    return entries_[static_cast<std::size_t>(row * N_ + col)];
  }

  std::vector<std::complex<double>> apply(const std::vector<std::complex<double>>& v) const;
  double quadratic_form(const CoefficientSequence& seq) const;
  double max_hermitian_defect() const;

 private:
  i64 Q_;
  i64 N_;
  i64 M_;
  std::vector<std::complex<double>> entries_;
};

struct ExtremalResult {
  double lambda_max = 0.0;
  std::vector<std::complex<double>> witness;  // unit norm
  double residual = 0.0;                      // ||B w - lambda w||
  i64 iterations = 0;
  bool converged = false;
};

struct PowerIterationOptions {
  double tolerance = 1e-9;
  double residual_tolerance = 1e-6;
  i64 max_iterations = 100'000;
  u64 seed = 0x5151'eb0d'1a2b'3c4dULL;
};

/// Top eigenvalue of a Gram kernel by power iteration from a seeded start.
/// Never throws on non-convergence; `converged` is false when the cap is hit.
ExtremalResult power_iteration(const GramKernel& kernel, const PowerIterationOptions& opts = {});

ExtremalResult extremal_delta(i64 Q, i64 N, i64 M, const PowerIterationOptions& opts = {},
                              unsigned threads = 1);

/// Sum over primes q <= Q of (q + 2N).
double trivial_envelope(i64 Q, i64 N);
/// N Q^(1/2) + N^(1/4) Q^2 + N^(3/4) Q^(11/8), constant 1 and epsilon 0.
double theorem_envelope(i64 Q, i64 N);

enum class Regime { Trivial, Intermediate, Theorem };
/// N <= Q is the trivial regime, N >= Q^(3/2) the theorem regime.
Regime classify_regime(i64 Q, i64 N);
std::string to_string(Regime r);

struct SieveReport {
  i64 Q = 0;
  i64 N = 0;
  i64 M = 0;
  std::vector<ModulusTerm> character_terms;   // witness sequence, per q
  std::vector<ModulusTerm> congruence_terms;  // witness sequence, per q
  double character_total = 0.0;
  double congruence_total = 0.0;
  double max_abs_discrepancy = 0.0;
  double lambda_max = 0.0;
  bool converged = false;
  i64 iterations = 0;
  double trivial_envelope = 0.0;
  double theorem_envelope = 0.0;
  double ratio_trivial = 0.0;
  double ratio_theorem = 0.0;
  Regime regime = Regime::Trivial;
  /// sum over Q/2 < q <= Q of V_q / q for the witness (the dyadic block T).
  double dyadic_block_total = 0.0;
  /// q = 2 is among the moduli; its unit group mod 4 has no odd part.
  bool includes_q2 = false;
};

SieveReport bound_report(i64 Q, i64 N, i64 M, unsigned threads = 1);

/// sum over primes q <= Q of (q/phi(q)) sum over non-principal chi mod q of
/// |sum a_n chi(n)|^2.
double classical_mult_lhs(i64 Q, const CoefficientSequence& seq);

}  // namespace sievelab
