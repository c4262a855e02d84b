#pragma once

// Brute-force references for tests. Nothing here touches the closed-form
// construction: the full character group mod p^2 is built from a generator
// found by exhaustive order search, with values assigned through a walked
// discrete-log table, and G_a is carved out by its value at 1 + p.

#include <complex>
#include <vector>

#include "sievelab/modular.hpp"

namespace sievelab {
class CoefficientSequence;
}

namespace sievelab::oracle {

inline constexpr i64 kMaxPrime = 31;

struct FullCharacterTable {
  i64 p = 0;
  i64 modulus = 0;          // p^2
  i64 generator = 0;        // generator of (Z/p^2)^*
  std::vector<i64> units;   // ascending units mod p^2
  /// rows[k][i] is the value of chi_k at units[i].
  std::vector<std::vector<RationalAngle>> rows;

  /// Position of u in `units`, or -1.
  i64 unit_position(i64 u) const;
};

FullCharacterTable all_characters(i64 p);

/// Rows of G_a: those with value e(a/p) at 1 + p.
std::vector<std::vector<RationalAngle>> filter_G_a(const FullCharacterTable& table, i64 a);

/// (q/phi(q)) sum over G_a mod q^2 of |sum a_n xi(n)|^2, summed over primes q <= Q.
double naive_lhs(i64 Q, const CoefficientSequence& seq, i64 a = 1);

/// Single-prime term of naive_lhs.
double naive_term(i64 q, const CoefficientSequence& seq, i64 a = 1);

}  // namespace sievelab::oracle
