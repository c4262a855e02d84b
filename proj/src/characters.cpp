#include "sievelab/characters.hpp"

#include <map>
#include <mutex>
#include <string>

#include "sievelab/errors.hpp"

namespace sievelab {

UnitDecomposition teichmuller_split(i64 x, i64 p) {
  const PrimeModulus mod(p);
  const i64 m = mod.p_squared();
  const i64 r = mod_floor(x, m);
  if (r % p == 0) throw NotAUnit(std::to_string(x) + " mod " + std::to_string(p));
  const i64 t = pow_mod(r, static_cast<u64>(p), m);
  const i64 h = mul_mod(r, inv_mod(t, m), m);
  return {r, t, h};
}

IndexTable::IndexTable(i64 p) : p_(PrimeModulus(p).p()), g_(primitive_root(p, 1)) {
  if (p_ > kTabulatedPrimeCap) return;
  table_.assign(static_cast<std::size_t>(p_), -1);
  i64 cur = 1;
  for (i64 e = 0; e < std::max<i64>(p_ - 1, 1); ++e) {
    table_[static_cast<std::size_t>(cur)] = e;
    cur = mul_mod(cur, g_, p_);
  }
}

i64 IndexTable::index(i64 n) const {
  const i64 r = mod_floor(n, p_);
  if (r == 0) throw NotAUnit(std::to_string(n) + " mod " + std::to_string(p_));
  if (!table_.empty()) return table_[static_cast<std::size_t>(r)];
  return discrete_log(g_, r, p_, p_ - 1);
}

std::shared_ptr<const IndexTable> index_table(i64 p) {
  static std::mutex mutex;
  static std::map<i64, std::shared_ptr<const IndexTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[p];
  if (!slot) slot = std::make_shared<const IndexTable>(p);
  return slot;
}

CharacterValue dirichlet_char_mod_p(i64 p, i64 j, i64 n) {
  const auto table = index_table(p);
  const i64 order = std::max<i64>(p - 1, 1);
  if (j < 0 || j >= order) throw InvalidArgument("twist index out of range");
  if (mod_floor(n, p) == 0) return CharacterValue::vanishing();
  return {false, RationalAngle(mul_mod(j, table->index(n), order), order)};
}

SpecialCharacter::SpecialCharacter(i64 p, i64 a, i64 j)
    : modulus_(p), a_(mod_floor(a, p)), j_(j), indices_(index_table(p)) {
  if (j < 0 || j >= std::max<i64>(p - 1, 1)) throw InvalidArgument("twist index out of range");
}

CharacterValue SpecialCharacter::operator()(i64 n) const {
  const i64 p = modulus_.p();
  if (mod_floor(n, p) == 0) return CharacterValue::vanishing();
  const auto split = teichmuller_split(n, p);
  const i64 level = (split.h - 1) / p;
  RationalAngle angle(mul_mod(a_, level, p), p);
  if (j_ != 0) angle += RationalAngle(mul_mod(j_, indices_->index(n), p - 1), p - 1);
  return {false, angle};
}

std::vector<SpecialCharacter> enumerate_G_a(i64 p, i64 a) {
  std::vector<SpecialCharacter> out;
  const i64 count = p == 2 ? 1 : p - 1;
  out.reserve(static_cast<std::size_t>(count));
  for (i64 j = 0; j < count; ++j) out.emplace_back(p, a, j);
  return out;
}

CharacterFamily::CharacterFamily(i64 p, i64 a)
    : modulus_(p), a_(mod_floor(a, p)), denominator_(p * std::max<i64>(p - 1, 1)), indices_(index_table(p)) {}

std::optional<CharacterFamily::UnitData> CharacterFamily::unit_data(i64 n) const {
  const i64 p = modulus_.p();
  const i64 m = modulus_.p_squared();
  const i64 r = mod_floor(n, m);
  if (r % p == 0) return std::nullopt;
  const i64 t = pow_mod(r, static_cast<u64>(p), m);
  const i64 h = mul_mod(r, inv_mod(t, m), m);
  return UnitData{(h - 1) / p, indices_->index(r)};
}

i64 CharacterFamily::exponent(i64 j, const UnitData& d) const {
  const i64 p = modulus_.p();
  const i64 order = std::max<i64>(p - 1, 1);
  const i64 base = mul_mod(mul_mod(a_, d.level, p), order, denominator_);
  const i64 twist = mul_mod(mul_mod(j, d.index, order), p, denominator_);
  return (base + twist) % denominator_;
}

}  // namespace sievelab
