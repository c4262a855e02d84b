#include "sievelab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "sievelab/errors.hpp"
#include "sievelab/sieve.hpp"

namespace sievelab::oracle {

namespace {

i64 order_by_walking(i64 g, i64 m) {
  i64 x = g % m;
  i64 k = 1;
  while (x != 1) {
    x = x * g % m;
    ++k;
  }
  return k;
}

bool trial_prime(i64 p) {
  if (p < 2) return false;
  for (i64 d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::complex<long double> angle_value(const RationalAngle& a) {
  const long double theta = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(a.num()) /
                            static_cast<long double>(a.den());
  return {std::cos(theta), std::sin(theta)};
}

}  // namespace

i64 FullCharacterTable::unit_position(i64 u) const {
  const auto it = std::lower_bound(units.begin(), units.end(), u);
  if (it == units.end() || *it != u) return -1;
  return static_cast<i64>(it - units.begin());
}

FullCharacterTable all_characters(i64 p) {
  if (!trial_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  if (p > kMaxPrime) throw SizeCap("oracle tables are limited to p <= " + std::to_string(kMaxPrime));

  FullCharacterTable t;
  t.p = p;
  t.modulus = p * p;
  for (i64 u = 1; u < t.modulus; ++u) {
    if (u % p != 0) t.units.push_back(u);
  }
  const auto order = static_cast<i64>(t.units.size());
  for (i64 g : t.units) {
    if (order_by_walking(g, t.modulus) == order) {
      t.generator = g;
      break;
    }
  }

  // log[i] = m with generator^m = units[i]
  std::vector<i64> log(t.units.size());
  i64 x = 1;
  for (i64 m = 0; m < order; ++m) {
    log[static_cast<std::size_t>(t.unit_position(x))] = m;
    x = x * t.generator % t.modulus;
  }

  t.rows.resize(static_cast<std::size_t>(order));
  for (i64 k = 0; k < order; ++k) {
    auto& row = t.rows[static_cast<std::size_t>(k)];
    row.reserve(t.units.size());
    for (i64 m : log) row.emplace_back(k * m % order, order);
  }
  return t;
}

std::vector<std::vector<RationalAngle>> filter_G_a(const FullCharacterTable& table, i64 a) {
  const RationalAngle target(a, table.p);
  const i64 pos = table.unit_position(1 + table.p);
  std::vector<std::vector<RationalAngle>> out;
  for (const auto& row : table.rows) {
    if (row[static_cast<std::size_t>(pos)] == target) out.push_back(row);
  }
  return out;
}

double naive_term(i64 q, const CoefficientSequence& seq, i64 a) {
  const auto table = all_characters(q);
  const auto members = filter_G_a(table, a);
  long double total = 0.0L;
  for (const auto& row : members) {
    std::complex<long double> s{};
    for (i64 n = seq.first(); n <= seq.last(); ++n) {
      const i64 r = ((n % table.modulus) + table.modulus) % table.modulus;
      const i64 pos = table.unit_position(r);
      if (pos < 0) continue;
      const auto c = seq.at(n);
      s += std::complex<long double>(c.real(), c.imag()) * angle_value(row[static_cast<std::size_t>(pos)]);
    }
    total += std::norm(s);
  }
  return static_cast<double>(total * static_cast<long double>(q) / static_cast<long double>(q - 1));
}

double naive_lhs(i64 Q, const CoefficientSequence& seq, i64 a) {
  if (Q > kMaxPrime) throw SizeCap("naive_lhs is limited to Q <= " + std::to_string(kMaxPrime));
  long double total = 0.0L;
  for (i64 q = 2; q <= Q; ++q) {
    if (trial_prime(q)) total += naive_term(q, seq, a);
  }
  return static_cast<double>(total);
}

}  // namespace sievelab::oracle
