#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "towercert/finite_field.hpp"

namespace towercert::hyper {

/// Integer polynomial, coefficients in ascending degree, no trailing zeros.
using IntPoly = std::vector<std::int64_t>;

/// A hyperelliptic model y^2 + h(x) y = f(x) over Q.
///
/// Construction validates genus >= 2, the degree limits deg f <= 2g + 2 and
/// deg h <= g + 1, and that F = h^2 + 4f has degree 2g + 1 or 2g + 2 and is
/// squarefree over Q.
class CurveModel {
 public:
  CurveModel(int genus, IntPoly f, IntPoly h, std::string label = {});

  int genus() const noexcept { return genus_; }
  const IntPoly& f() const noexcept { return f_; }
  const IntPoly& h() const noexcept { return h_; }
  const std::string& label() const noexcept { return label_; }
  /// F = h^2 + 4f, so that (2y + h)^2 = F(x).
  const IntPoly& completed_square() const noexcept { return F_; }

 private:
  int genus_;
  IntPoly f_;
  IntPoly h_;
  std::string label_;
  IntPoly F_;
};

/// y^2 = F(x) over F_p.
struct ReducedModel {
  ff::PrimeField field;
  int genus;
  std::vector<ff::Residue> F;  // trimmed; F.size() - 1 is the reduced degree
};

struct Reduction {
  ReducedModel model;
  bool good = false;
  /// Why the model fails, empty when good.
  std::string reason;
};

/// Reduces the completed-square model modulo an odd prime p. Good means the
/// degree is still 2g+1 or 2g+2 and F mod p is squarefree. This is a property
/// of the model: the curve may still have good reduction on another model.
Reduction reduce_mod_p(const CurveModel& curve, std::uint64_t p);

/// Number of projective points of the smooth model over F_{p^r}, r in {1,2,3}.
/// Points at infinity: 1 if deg F is odd; for deg F = 2g+2, 2 when the leading
/// coefficient is a square in F_{p^r} and 0 otherwise.
std::int64_t count_points(const ReducedModel& model, int degree);
std::int64_t count_points(const ReducedModel& model, const ff::ExtensionField& field);

struct LPolynomial {
  std::int64_t c1 = 0;
  std::int64_t c2 = 0;
  friend bool operator==(const LPolynomial&, const LPolynomial&) = default;
};

/// Genus-2 L-polynomial 1 + c1 T + c2 T^2 + p c1 T^3 + p^2 T^4 from N1, N2.
/// Throws InconsistencyError for non-integral c2 or |c1| > 4 sqrt(p).
LPolynomial l_polynomial(std::int64_t n1, std::int64_t n2, std::uint64_t p);

/// N_r = p^r + 1 - s_r, with s_r the r-th power sum of the inverse roots of
/// the L-polynomial obtained from Newton's identities.
ff::Int128 predicted_point_count(const LPolynomial& lp, std::uint64_t p, int r);

/// #J(F_p) = P(1). Throws InconsistencyError outside the Weil interval.
std::uint64_t jacobian_order(const LPolynomial& lp, std::uint64_t p);

/// Exact check of c1^2 <= 16p and (sqrt p - 1)^4 <= order <= (sqrt p + 1)^4.
bool satisfies_weil_bounds(const LPolynomial& lp, std::uint64_t order, std::uint64_t p);

/// Over F_p the genus-2 model is ordinary iff the middle coefficient c2 is a
/// p-adic unit.
bool is_ordinary(std::int64_t c2, std::uint64_t p);

/// Hasse-Witt (Cartier-Manin) matrix: entry (i, j) is the coefficient of
/// x^(i p - j) in F^((p-1)/2), 1 <= i, j <= g.
std::vector<std::vector<ff::Residue>> hasse_witt(const ReducedModel& model);

/// Determinant over F_p by Gaussian elimination.
ff::Residue determinant(std::vector<std::vector<ff::Residue>> matrix, const ff::PrimeField& field);

bool is_anomalous(std::uint64_t jacobian_order, std::uint64_t p);

/// Everything computed at one prime.
struct LocalData {
  std::uint64_t p = 0;
  bool good_reduction = false;
  std::string reduction_note;
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  LPolynomial lpoly;
  std::uint64_t jacobian_order = 0;
  bool ordinary = false;
  bool anomalous = false;
};

/// Reduction, N1, N2, L-polynomial, #J(F_p) and the two flags at p.
/// Genus 2 only when the reduction is good (ValidationError otherwise).
LocalData compute_local_data(const CurveModel& curve, std::uint64_t p);

/// gcd of #J(F_l) over the auxiliary primes. Rational torsion divides it.
/// Primes of bad model reduction are skipped with a warning.
std::uint64_t torsion_multiple(const CurveModel& curve, std::span<const std::uint64_t> aux_primes);

/// The first `count` odd primes at which the model has good reduction.
std::vector<std::uint64_t> first_good_primes(const CurveModel& curve, std::size_t count);

}  // namespace towercert::hyper
