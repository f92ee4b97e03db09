#include "towercert/finite_field.hpp"

#include <string>

#include "towercert/errors.hpp"

namespace towercert::ff {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<UInt128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are sufficient for every n < 3.3 * 10^24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 3 || p % 2 == 0) {
    throw ValidationError("prime field: characteristic must be an odd prime >= 3, got " +
                          std::to_string(p));
  }
  if (p >= kMaxCharacteristic) {
    throw ValidationError("prime field: characteristic " + std::to_string(p) +
                          " exceeds the supported range p < 2^31");
  }
  if (!is_prime(p)) {
    throw ValidationError("prime field: " + std::to_string(p) + " is not prime");
  }
}

Residue PrimeField::pow(Residue base, std::uint64_t exp) const noexcept {
  Residue r = 1;
  while (exp) {
    if (exp & 1) r = mul(r, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return r;
}

Residue PrimeField::inv(Residue a) const {
  if (a % p_ == 0) throw ValidationError("prime field: inverse of zero");
  return pow(a % p_, p_ - 2);
}

int quad_char(Residue a, const PrimeField& field) {
  const Residue r = a % field.characteristic();
  if (r == 0) return 0;
  return field.pow(r, (field.characteristic() - 1) / 2) == 1 ? 1 : -1;
}

QuadCharTable::QuadCharTable(const PrimeField& field)
    : table_(field.characteristic(), std::int8_t{-1}) {
  const std::uint64_t p = field.characteristic();
  table_[0] = 0;
  // Squares of 1..(p-1)/2 hit every nonzero square exactly once.
  for (std::uint64_t y = 1; y <= (p - 1) / 2; ++y) table_[y * y % p] = 1;
}

ExtensionField::ExtensionField(const PrimeField& base, int degree,
                               std::array<Residue, 3> modulus)
    : base_(base), degree_(degree), modulus_(modulus), order_(1) {
  for (int i = 0; i < degree_; ++i) order_ *= base_.characteristic();
  if (degree_ == 1) {
    t_pow_p_ = embed(0);
    t_pow_2p_ = embed(0);
    return;
  }
  ExtElement t = generator_t();
  t_pow_p_ = pow(t, base_.characteristic());
  t_pow_2p_ = mul(t_pow_p_, t_pow_p_);
}

ExtensionField ExtensionField::build(const PrimeField& base, int degree) {
  const std::uint64_t p = base.characteristic();
  switch (degree) {
    case 1:
      return ExtensionField(base, 1, {0, 0, 0});
    case 2:
      // t^2 + c is irreducible iff -c is a non-residue.
      for (Residue c = 1; c < p; ++c) {
        if (quad_char(base.neg(c), base) == -1) return ExtensionField(base, 2, {c, 0, 0});
      }
      break;
    case 3:
      // A cubic is irreducible iff it has no root.
      for (Residue a = 0; a < p; ++a) {
        for (Residue b = 1; b < p; ++b) {
          bool has_root = false;
          for (Residue x = 0; x < p && !has_root; ++x) {
            const Residue v = base.add(base.add(base.mul(base.mul(x, x), x), base.mul(a, x)), b);
            has_root = v == 0;
          }
          if (!has_root) return ExtensionField(base, 3, {b, a, 0});
        }
      }
      break;
    default:
      throw ValidationError("extension field: degree must be 1, 2 or 3, got " +
                            std::to_string(degree));
  }
  throw InconsistencyError("extension field: no irreducible polynomial of degree " +
                           std::to_string(degree) + " found over F_" + std::to_string(p));
}

ExtElement ExtensionField::element_at(std::uint64_t index) const noexcept {
  ExtElement e;
  const std::uint64_t p = base_.characteristic();
  for (int i = 0; i < degree_; ++i) {
    e.c[i] = index % p;
    index /= p;
  }
  return e;
}

ExtElement ExtensionField::generator_t() const noexcept {
  ExtElement e;
  if (degree_ == 1) {
    e.c[0] = 0;
  } else {
    e.c[1] = 1;
  }
  return e;
}

ExtElement ExtensionField::add(const ExtElement& a, const ExtElement& b) const noexcept {
  ExtElement r;
  for (int i = 0; i < degree_; ++i) r.c[i] = base_.add(a.c[i], b.c[i]);
  return r;
}

ExtElement ExtensionField::sub(const ExtElement& a, const ExtElement& b) const noexcept {
  ExtElement r;
  for (int i = 0; i < degree_; ++i) r.c[i] = base_.sub(a.c[i], b.c[i]);
  return r;
}

ExtElement ExtensionField::mul(const ExtElement& a, const ExtElement& b) const noexcept {
  const std::uint64_t p = base_.characteristic();
  ExtElement r;
  switch (degree_) {
    case 1:
      r.c[0] = base_.mul(a.c[0], b.c[0]);
      return r;
    case 2: {
      // t^2 = -m0
      const Residue hi = base_.mul(a.c[1], b.c[1]);
      r.c[0] = base_.sub(base_.mul(a.c[0], b.c[0]), base_.mul(hi, modulus_[0]));
      r.c[1] = (a.c[0] * b.c[1] % p + a.c[1] * b.c[0] % p) % p;
      return r;
    }
    default: {
      std::array<Residue, 5> prod{};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) prod[i + j] = (prod[i + j] + a.c[i] * b.c[j]) % p;
      }
      // t^3 = -(m0 + m1 t + m2 t^2)
      for (int k = 4; k >= 3; --k) {
        const Residue top = prod[k];
        if (top == 0) continue;
        prod[k] = 0;
        for (int i = 0; i < 3; ++i) {
          prod[k - 3 + i] = base_.sub(prod[k - 3 + i], base_.mul(top, modulus_[i]));
        }
      }
      r.c = {prod[0], prod[1], prod[2]};
      return r;
    }
  }
}

ExtElement ExtensionField::pow(ExtElement base, UInt128 exp) const noexcept {
  ExtElement r = embed(1);
  while (exp) {
    if (exp & 1) r = mul(r, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return r;
}

ExtElement ExtensionField::inv(const ExtElement& a) const {
  if (is_zero(a)) throw ValidationError("extension field: inverse of zero");
  return pow(a, order_ - 2);
}

ExtElement ExtensionField::frobenius(const ExtElement& a) const noexcept {
  if (degree_ == 1) return a;
  ExtElement r = embed(a.c[0]);
  for (int i = 0; i < degree_; ++i) {
    r.c[i] = base_.add(r.c[i], base_.mul(a.c[1], t_pow_p_.c[i]));
    r.c[i] = base_.add(r.c[i], base_.mul(a.c[2], t_pow_2p_.c[i]));
  }
  return r;
}

Residue ExtensionField::norm(const ExtElement& a) const noexcept {
  switch (degree_) {
    case 1:
      return a.c[0];
    case 2:
      // (a0 + a1 t)(a0 - a1 t) = a0^2 + m0 a1^2
      return base_.add(base_.mul(a.c[0], a.c[0]),
                       base_.mul(modulus_[0], base_.mul(a.c[1], a.c[1])));
    default: {
      const ExtElement f1 = frobenius(a);
      const ExtElement f2 = frobenius(f1);
      return mul(mul(a, f1), f2).c[0];
    }
  }
}

ExtElement ExtensionField::evaluate(std::span<const Residue> poly,
                                    const ExtElement& x) const noexcept {
  ExtElement acc;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
    acc = mul(acc, x);
    acc.c[0] = base_.add(acc.c[0], *it);
  }
  return acc;
}

int count_square_roots(const ExtensionField& field, const ExtElement& v) {
  if (field.is_zero(v)) return 1;
  const ExtElement e = field.pow(v, (field.order() - 1) / 2);
  return e == field.embed(1) ? 2 : 0;
}

int count_square_roots_by_norm(const ExtensionField& field, const ExtElement& v) {
  if (field.is_zero(v)) return 1;
  // v^((q-1)/2) = N(v)^((p-1)/2) with q = p^r.
  return quad_char(field.norm(v), field.base()) == 1 ? 2 : 0;
}

}  // namespace towercert::ff
