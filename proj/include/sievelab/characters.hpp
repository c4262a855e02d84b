#pragma once

// The character families G_a modulo p^2: characters whose restriction to
// the principal units H = {x = 1 mod p} is x -> e(a(x-1)/p^2).
//
// Every unit splits as x = t*h mod p^2 with t = x^p (order dividing p-1)
// and h = x^(1-p) in H. The base member of G_a is
//     xi_a(x) = e(a*(h-1)/p^2),
// and the remaining p-1 members are its twists by the Dirichlet
// characters mod p, chi_j(x) = e(j*ind_g(x)/(p-1)).

#include <memory>
#include <optional>
#include <vector>

#include "sievelab/modular.hpp"

namespace sievelab {

struct UnitDecomposition {
  i64 x = 1;
  i64 t = 1;  // Teichmuller part
  i64 h = 1;  // principal part, h = 1 mod p
};

UnitDecomposition teichmuller_split(i64 x, i64 p);

/// Value of a Dirichlet character: zero off the units, a root of unity on them.
struct CharacterValue {
  bool zero = false;
  RationalAngle angle;

  static CharacterValue vanishing() { return {true, {}}; }
  std::complex<double> to_complex() const { return zero ? std::complex<double>{} : angle.to_complex(); }

  friend bool operator==(const CharacterValue&, const CharacterValue&) = default;
};

/// Discrete logarithms mod p to the smallest primitive root g. Tabulated for
/// p <= kTabulatedPrimeCap, baby-step giant-step above that.
class IndexTable {
 public:
  static constexpr i64 kTabulatedPrimeCap = 10'000;

  explicit IndexTable(i64 p);

  i64 p() const { return p_; }
  i64 generator() const { return g_; }
  /// ind_g(n mod p); n must be coprime to p.
  i64 index(i64 n) const;

 private:
  i64 p_;
  i64 g_;
  std::vector<i64> table_;
};

/// Shared, immutable index table for p; built once per process.
std::shared_ptr<const IndexTable> index_table(i64 p);

CharacterValue dirichlet_char_mod_p(i64 p, i64 j, i64 n);

class SpecialCharacter {
 public:
  SpecialCharacter(i64 p, i64 a, i64 j);

  i64 p() const { return modulus_.p(); }
  i64 modulus() const { return modulus_.p_squared(); }
  i64 a() const { return a_; }
  i64 j() const { return j_; }
  i64 generator() const { return indices_->generator(); }

  CharacterValue operator()(i64 n) const;

 private:
  PrimeModulus modulus_;
  i64 a_;
  i64 j_;
  std::shared_ptr<const IndexTable> indices_;
};

inline CharacterValue xi_eval(const SpecialCharacter& chi, i64 n) { return chi(n); }

/// The phi(p) members of G_a, ordered by twist index j.
std::vector<SpecialCharacter> enumerate_G_a(i64 p, i64 a);

/// Integer-exponent view of G_a for inner loops: every value of every
/// member is e(k/(p(p-1))) for an integer k computed from two per-n
/// quantities, so a sieve loop can evaluate all members from one split.
class CharacterFamily {
 public:
  struct UnitData {
    i64 level;  // (h-1)/p mod p
    i64 index;  // ind_g(n mod p)
  };

  CharacterFamily(i64 p, i64 a);

  i64 p() const { return modulus_.p(); }
  i64 a() const { return a_; }
  i64 size() const { return p() == 2 ? 1 : p() - 1; }
  /// Common denominator p(p-1) of every value.
  i64 denominator() const { return denominator_; }

  std::optional<UnitData> unit_data(i64 n) const;
  /// Numerator k of the value e(k/denominator()) of member j at a unit.
  i64 exponent(i64 j, const UnitData& d) const;

 private:
  PrimeModulus modulus_;
  i64 a_;
  i64 denominator_;
  std::shared_ptr<const IndexTable> indices_;
};

}  // namespace sievelab
