#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace towercert::lambda {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kDefaultPrecP = 20;
inline constexpr int kDefaultPrecX = 64;

/// v_p(a), capped at `cap`. Zero has valuation `cap`.
int valuation(const BigInt& a, std::uint64_t p, int cap);

/// A truncated element of Z_p[[x]]: coefficients of x^0 .. x^(prec_x - 1),
/// each known modulo p^prec_p and stored in [0, p^prec_p).
///
/// Binary operations take the smaller of the two precisions in each
/// direction. Nothing beyond x^(prec_x - 1) is ever represented.
class PadicSeries {
 public:
  /// Coefficients may be negative or exceed p^prec_p; they are reduced.
  /// Entries beyond prec_x are dropped, missing ones are zero.
  PadicSeries(std::uint64_t p, int prec_p, int prec_x, std::span<const BigInt> coeffs);
  PadicSeries(std::uint64_t p, int prec_p, int prec_x, std::initializer_list<std::int64_t> coeffs);

  static PadicSeries one(std::uint64_t p, int prec_p, int prec_x);

  std::uint64_t prime() const noexcept { return p_; }
  int prec_p() const noexcept { return prec_p_; }
  int prec_x() const noexcept { return static_cast<int>(coeffs_.size()); }
  const BigInt& modulus() const noexcept { return modulus_; }
  const BigInt& coeff(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

  /// True when every coefficient vanishes at the working precision.
  bool is_indeterminate() const;
  /// Index of the last nonzero coefficient, or -1.
  int degree() const;

  /// Multiplication by p^k. Exact, so the p-adic precision grows by k.
  PadicSeries shifted_by_p(int k) const;
  PadicSeries with_precision(int prec_p, int prec_x) const;

  friend PadicSeries operator+(const PadicSeries& a, const PadicSeries& b);
  friend PadicSeries operator-(const PadicSeries& a, const PadicSeries& b);
  friend PadicSeries operator*(const PadicSeries& a, const PadicSeries& b);
  friend bool operator==(const PadicSeries& a, const PadicSeries& b);

 private:
  PadicSeries(std::uint64_t p, int prec_p, std::vector<BigInt> coeffs);
  void normalize();

  std::uint64_t p_;
  int prec_p_;
  BigInt modulus_;
  std::vector<BigInt> coeffs_;
};

/// Minimum coefficient valuation. Throws PrecisionError when the series is
/// indistinguishable from zero.
int mu_invariant(const PadicSeries& f);

/// Least index whose coefficient has valuation mu. Throws PrecisionError when
/// no such index lies below prec_x.
int lambda_invariant(const PadicSeries& f);

struct PadicValue {
  BigInt residue;  // in [0, p^precision)
  int valuation;   // capped at precision
  int precision;
};

PadicValue evaluate_at_zero(const PadicSeries& f);

/// Monic with every lower coefficient divisible by p.
bool is_distinguished(std::span<const BigInt> poly, std::uint64_t p);

/// f = p^mu * distinguished * unit.
///
/// The factorisation is that of the truncation of f to degree < prec_x, read
/// as a polynomial. `distinguished` and `unit` are known to prec_p - mu digits
/// and p^mu * distinguished * unit agrees with f to the full input precision.
struct WeierstrassFactorization {
  int mu = 0;
  PadicSeries distinguished;
  PadicSeries unit;

  int lambda() const { return distinguished.degree(); }
};

WeierstrassFactorization weierstrass_prepare(const PadicSeries& f);

struct PPowerDivisor {
  int mu = 0;
};
struct DistinguishedDivisor {
  std::vector<BigInt> poly;  // ascending coefficients, monic
};
using ElementaryDivisor = std::variant<PPowerDivisor, DistinguishedDivisor>;

/// p^(sum of mu_i) times the product of the distinguished polynomials,
/// truncated to the given precision. Throws ValidationError for a polynomial
/// entry that is not distinguished or a negative exponent.
PadicSeries char_element(std::span<const ElementaryDivisor> divisors, std::uint64_t p,
                         int prec_p = kDefaultPrecP, int prec_x = kDefaultPrecX);

}  // namespace towercert::lambda
