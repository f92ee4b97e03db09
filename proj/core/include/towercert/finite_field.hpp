#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace towercert::ff {

using Residue = std::uint64_t;
__extension__ typedef unsigned __int128 UInt128;
__extension__ typedef __int128 Int128;

/// Largest supported characteristic (exclusive). Products of two residues fit
/// in 64 bits below this bound.
inline constexpr std::uint64_t kMaxCharacteristic = std::uint64_t{1} << 31;

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// The prime field F_p for an odd prime 3 <= p < 2^31. Residues are kept in
/// canonical form [0, p).
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t characteristic() const noexcept { return p_; }

  Residue reduce(std::int64_t a) const noexcept {
    const auto p = static_cast<std::int64_t>(p_);
    std::int64_t r = a % p;
    return static_cast<Residue>(r < 0 ? r + p : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept { return (a * b) % p_; }
  Residue pow(Residue base, std::uint64_t exp) const noexcept;
  /// Inverse of a nonzero residue (Fermat).
  Residue inv(Residue a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

/// Legendre symbol via Euler's criterion: 0, +1 or -1.
int quad_char(Residue a, const PrimeField& field);

/// Precomputed quadratic characters of every residue, for tight counting loops.
class QuadCharTable {
 public:
  explicit QuadCharTable(const PrimeField& field);

  int operator()(Residue a) const noexcept { return table_[a]; }
  std::size_t size() const noexcept { return table_.size(); }

 private:
  std::vector<std::int8_t> table_;
};

/// Element of F_{p^r}, r <= 3, as coordinates on 1, t, t^2. Unused slots are 0.
struct ExtElement {
  std::array<Residue, 3> c{};
  friend bool operator==(const ExtElement&, const ExtElement&) = default;
};

/// F_{p^r} = F_p[t] / (m(t)) for a canonical irreducible monic m of degree
/// r in {1, 2, 3}. Degree 1 is F_p itself with m(t) = t.
///
/// Degree 2 uses the first t^2 + c (c = 1, 2, ...) with -c a non-residue.
/// Degree 3 uses the first t^3 + a t + b in lexicographic (a, b), b != 0,
/// without a root in F_p. Both choices depend only on p.
class ExtensionField {
 public:
  static ExtensionField build(const PrimeField& base, int degree);

  const PrimeField& base() const noexcept { return base_; }
  int degree() const noexcept { return degree_; }
  /// Coefficients m_0 .. m_{r-1} of the monic defining polynomial.
  std::span<const Residue> modulus() const noexcept {
    return {modulus_.data(), static_cast<std::size_t>(degree_)};
  }
  /// p^r, the number of elements.
  UInt128 order() const noexcept { return order_; }

  ExtElement embed(Residue a) const noexcept {
    ExtElement e;
    e.c[0] = a;
    return e;
  }
  /// Enumeration of the field: index in [0, p^r) read as base-p digits.
  ExtElement element_at(std::uint64_t index) const noexcept;
  /// The class of t, a root of the defining polynomial.
  ExtElement generator_t() const noexcept;

  ExtElement add(const ExtElement& a, const ExtElement& b) const noexcept;
  ExtElement sub(const ExtElement& a, const ExtElement& b) const noexcept;
  ExtElement mul(const ExtElement& a, const ExtElement& b) const noexcept;
  ExtElement pow(ExtElement base, UInt128 exp) const noexcept;
  ExtElement inv(const ExtElement& a) const;
  ExtElement frobenius(const ExtElement& a) const noexcept;
  /// Norm down to F_p, i.e. a^((p^r - 1)/(p - 1)).
  Residue norm(const ExtElement& a) const noexcept;
  bool is_zero(const ExtElement& a) const noexcept { return a == ExtElement{}; }
  bool in_prime_field(const ExtElement& a) const noexcept {
    return a.c[1] == 0 && a.c[2] == 0;
  }

  /// Horner evaluation of a polynomial with F_p coefficients (ascending).
  ExtElement evaluate(std::span<const Residue> poly, const ExtElement& x) const noexcept;

 private:
  ExtensionField(const PrimeField& base, int degree, std::array<Residue, 3> modulus);

  PrimeField base_;
  int degree_;
  std::array<Residue, 3> modulus_;
  UInt128 order_;
  // t^p and t^(2p), so Frobenius is a linear map on coordinates.
  ExtElement t_pow_p_;
  ExtElement t_pow_2p_;
};

/// Number of y in F_{p^r} with y^2 = v: 1 if v = 0, 2 if v is a nonzero
/// square, 0 otherwise. Decided by Euler's criterion v^((p^r - 1)/2).
int count_square_roots(const ExtensionField& field, const ExtElement& v);

/// Same answer as count_square_roots, decided through the norm to F_p.
int count_square_roots_by_norm(const ExtensionField& field, const ExtElement& v);

}  // namespace towercert::ff
