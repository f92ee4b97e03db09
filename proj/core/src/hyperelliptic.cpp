#include "towercert/hyperelliptic.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "towercert/errors.hpp"

namespace towercert::hyper {

namespace {

using ff::Int128;
using ff::PrimeField;
using ff::Residue;
using ModPoly = std::vector<Residue>;
using Rational = boost::multiprecision::cpp_rational;

template <typename T>
void trim(std::vector<T>& poly) {
  while (!poly.empty() && poly.back() == T{0}) poly.pop_back();
}

int degree(const auto& poly) { return static_cast<int>(poly.size()) - 1; }

// --- polynomials over Q, only for the squarefree test ---

std::vector<Rational> rational_rem(std::vector<Rational> a, const std::vector<Rational>& b) {
  trim(a);
  while (a.size() >= b.size()) {
    const Rational factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

bool squarefree_over_q(const IntPoly& poly) {
  std::vector<Rational> a(poly.begin(), poly.end());
  std::vector<Rational> b;
  for (std::size_t i = 1; i < poly.size(); ++i) b.emplace_back(Rational(poly[i]) * i);
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = rational_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.size() == 1;
}

// --- polynomials over F_p ---

ModPoly mod_rem(ModPoly a, const ModPoly& b, const PrimeField& fp) {
  trim(a);
  const Residue lead_inv = fp.inv(b.back());
  while (a.size() >= b.size()) {
    const Residue factor = fp.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = fp.sub(a[shift + i], fp.mul(factor, b[i]));
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

ModPoly mod_gcd(ModPoly a, ModPoly b, const PrimeField& fp) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = mod_rem(a, b, fp);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

ModPoly mod_derivative(const ModPoly& a, const PrimeField& fp) {
  ModPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(fp.mul(a[i], i % fp.characteristic()));
  trim(d);
  return d;
}

std::int64_t narrow_coefficient(Int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw ValidationError("curve model: coefficient of h^2 + 4f overflows 64 bits");
  }
  return static_cast<std::int64_t>(v);
}


}  // namespace

CurveModel::CurveModel(int genus, IntPoly f, IntPoly h, std::string label)
    : genus_(genus), f_(std::move(f)), h_(std::move(h)), label_(std::move(label)) {
  if (genus_ < 2) {
    throw ValidationError("curve model: genus must be at least 2, got " + std::to_string(genus_));
  }
  trim(f_);
  trim(h_);
  if (degree(f_) > 2 * genus_ + 2) {
    throw ValidationError("curve model: deg f = " + std::to_string(degree(f_)) +
                          " exceeds 2g+2 = " + std::to_string(2 * genus_ + 2));
  }
  if (degree(h_) > genus_ + 1) {
    throw ValidationError("curve model: deg h = " + std::to_string(degree(h_)) +
                          " exceeds g+1 = " + std::to_string(genus_ + 1));
  }
  std::vector<Int128> acc(std::max<std::size_t>(f_.size(), h_.empty() ? 0 : 2 * h_.size() - 1), 0);
  for (std::size_t i = 0; i < h_.size(); ++i) {
    for (std::size_t j = 0; j < h_.size(); ++j) acc[i + j] += Int128{h_[i]} * h_[j];
  }
  for (std::size_t i = 0; i < f_.size(); ++i) acc[i] += Int128{4} * f_[i];
  for (Int128 v : acc) F_.push_back(narrow_coefficient(v));
  trim(F_);
  const int d = degree(F_);
  if (d != 2 * genus_ + 1 && d != 2 * genus_ + 2) {
    throw ValidationError("curve model: h^2 + 4f has degree " + std::to_string(d) +
                          ", expected 2g+1 or 2g+2 for genus " + std::to_string(genus_));
  }
  if (!squarefree_over_q(F_)) {
    throw ValidationError("curve model: h^2 + 4f is not squarefree over Q (singular model)");
  }
}

Reduction reduce_mod_p(const CurveModel& curve, std::uint64_t p) {
  if (p == 2) throw ValidationError("reduction: p = 2 is not supported (completing the square)");
  PrimeField fp(p);
  ModPoly F;
  for (std::int64_t c : curve.completed_square()) F.push_back(fp.reduce(c));
  trim(F);
  Reduction out{ReducedModel{fp, curve.genus(), F}, false, {}};
  const int g = curve.genus();
  const int d = degree(F);
  if (d != 2 * g + 1 && d != 2 * g + 2) {
    out.reason = "degree drops to " + std::to_string(d) + " mod " + std::to_string(p);
    return out;
  }
  if (degree(mod_gcd(F, mod_derivative(F, fp), fp)) > 0) {
    out.reason = "h^2 + 4f has a repeated factor mod " + std::to_string(p);
    return out;
  }
  out.good = true;
  return out;
}

std::int64_t count_points(const ReducedModel& model, int degree) {
  return count_points(model, ff::ExtensionField::build(model.field, degree));
}

std::int64_t count_points(const ReducedModel& model, const ff::ExtensionField& field) {
  if (!(field.base() == model.field)) {
    throw ValidationError("count_points: extension field is over a different prime");
  }
  const int deg_f = degree(model.F);
  if (deg_f != 2 * model.genus + 1 && deg_f != 2 * model.genus + 2) {
    throw ValidationError("count_points: model does not have good reduction");
  }
  if (field.order() > (ff::UInt128{1} << 42)) {
    throw ValidationError("count_points: field too large for exhaustive counting");
  }
  const PrimeField& fp = model.field;
  const auto q = static_cast<std::uint64_t>(field.order());
  std::int64_t affine = 0;
  if (field.degree() == 1) {
    const ff::QuadCharTable chi(fp);
    for (Residue x = 0; x < q; ++x) {
      Residue v = 0;
      for (auto it = model.F.rbegin(); it != model.F.rend(); ++it) v = fp.add(fp.mul(v, x), *it);
      affine += 1 + chi(v);
    }
  } else {
    const ff::QuadCharTable chi(fp);
    for (std::uint64_t i = 0; i < q; ++i) {
      const ff::ExtElement v = field.evaluate(model.F, field.element_at(i));
      affine += field.is_zero(v) ? 1 : 1 + chi(field.norm(v));
    }
  }
  std::int64_t at_infinity = 1;
  if (deg_f % 2 == 0) {
    at_infinity = ff::count_square_roots(field, field.embed(model.F.back()));
  }
  return affine + at_infinity;
}

LPolynomial l_polynomial(std::int64_t n1, std::int64_t n2, std::uint64_t p) {
  const Int128 pp = p;
  const Int128 c1 = Int128{n1} - pp - 1;
  const Int128 twice_c2 = Int128{n2} - pp * pp - 1 + c1 * c1;
  if (twice_c2 % 2 != 0) {
    throw InconsistencyError("L-polynomial: c2 is not integral at p = " + std::to_string(p) +
                             " (N1 = " + std::to_string(n1) + ", N2 = " + std::to_string(n2) + ")");
  }
  if (c1 * c1 > 16 * pp) {
    throw InconsistencyError("L-polynomial: |c1| exceeds 4 sqrt(p) at p = " + std::to_string(p));
  }
  return {static_cast<std::int64_t>(c1), static_cast<std::int64_t>(twice_c2 / 2)};
}

Int128 predicted_point_count(const LPolynomial& lp, std::uint64_t p, int r) {
  if (r < 1) throw ValidationError("predicted_point_count: extension degree must be >= 1");
  const Int128 pp = p;
  // Elementary symmetric functions of the inverse roots.
  const std::array<Int128, 5> e{1, -Int128{lp.c1}, Int128{lp.c2}, -pp * lp.c1, pp * pp};
  std::vector<Int128> s(r + 1, 0);
  for (int k = 1; k <= r; ++k) {
    Int128 acc = 0;
    for (int i = 1; i <= std::min(k - 1, 4); ++i) {
      acc += (i % 2 == 1 ? 1 : -1) * e[i] * s[k - i];
    }
    if (k <= 4) acc += (k % 2 == 1 ? 1 : -1) * Int128{k} * e[k];
    s[k] = acc;
  }
  Int128 pr = 1;
  for (int k = 0; k < r; ++k) pr *= pp;
  return pr + 1 - s[r];
}

bool satisfies_weil_bounds(const LPolynomial& lp, std::uint64_t order, std::uint64_t p) {
  const Int128 pp = p;
  if (Int128{lp.c1} * lp.c1 > 16 * pp) return false;
  // (sqrt p +- 1)^4 = p^2 + 6p + 1 +- 4 (p + 1) sqrt p
  const Int128 d = Int128{static_cast<std::int64_t>(order)} - pp * pp - 6 * pp - 1;
  return d * d <= 16 * pp * (pp + 1) * (pp + 1);
}

std::uint64_t jacobian_order(const LPolynomial& lp, std::uint64_t p) {
  const Int128 pp = p;
  const Int128 value = 1 + Int128{lp.c1} + lp.c2 + pp * lp.c1 + pp * pp;
  if (value <= 0 || value > std::numeric_limits<std::int64_t>::max()) {
    throw InconsistencyError("jacobian order: P(1) is not a positive 64-bit value at p = " +
                             std::to_string(p));
  }
  const auto order = static_cast<std::uint64_t>(value);
  if (!satisfies_weil_bounds(lp, order, p)) {
    throw InconsistencyError("jacobian order: " + std::to_string(order) +
                             " violates the Weil bounds at p = " + std::to_string(p));
  }
  return order;
}

bool is_ordinary(std::int64_t c2, std::uint64_t p) {
  return c2 % static_cast<std::int64_t>(p) != 0;
}

std::vector<std::vector<Residue>> hasse_witt(const ReducedModel& model) {
  const PrimeField& fp = model.field;
  const std::uint64_t p = fp.characteristic();
  const int g = model.genus;
  const std::size_t needed = static_cast<std::size_t>(g) * p;  // degrees < g p
  ModPoly power{1};
  for (std::uint64_t k = 0; k < (p - 1) / 2; ++k) {
    ModPoly next(std::min(needed, power.size() + model.F.size() - 1), 0);
    for (std::size_t i = 0; i < power.size(); ++i) {
      if (power[i] == 0) continue;
      for (std::size_t j = 0; j < model.F.size() && i + j < next.size(); ++j) {
        next[i + j] = fp.add(next[i + j], fp.mul(power[i], model.F[j]));
      }
    }
    power = std::move(next);
  }
  std::vector<std::vector<Residue>> m(g, std::vector<Residue>(g, 0));
  for (int i = 1; i <= g; ++i) {
    for (int j = 1; j <= g; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * p - j;
      m[i - 1][j - 1] = idx < power.size() ? power[idx] : 0;
    }
  }
  return m;
}

Residue determinant(std::vector<std::vector<Residue>> m, const PrimeField& fp) {
  const std::size_t n = m.size();
  Residue det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = fp.neg(det);
    }
    det = fp.mul(det, m[col][col]);
    const Residue inv = fp.inv(m[col][col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const Residue factor = fp.mul(m[row][col], inv);
      if (factor == 0) continue;
      for (std::size_t k = col; k < n; ++k) m[row][k] = fp.sub(m[row][k], fp.mul(factor, m[col][k]));
    }
  }
  return det;
}

bool is_anomalous(std::uint64_t jacobian_order, std::uint64_t p) { return jacobian_order % p == 0; }

LocalData compute_local_data(const CurveModel& curve, std::uint64_t p) {
  LocalData out;
  out.p = p;
  const Reduction red = reduce_mod_p(curve, p);
  if (!red.good) {
    out.reduction_note = red.reason;
    return out;
  }
  if (curve.genus() != 2) {
    throw ValidationError("unsupported genus " + std::to_string(curve.genus()) +
                          ": L-polynomial recovery is implemented for genus 2 only");
  }
  out.good_reduction = true;
  out.n1 = count_points(red.model, 1);
  out.n2 = count_points(red.model, 2);
  out.lpoly = l_polynomial(out.n1, out.n2, p);
  out.jacobian_order = jacobian_order(out.lpoly, p);
  out.ordinary = is_ordinary(out.lpoly.c2, p);
  out.anomalous = is_anomalous(out.jacobian_order, p);
  return out;
}

std::uint64_t torsion_multiple(const CurveModel& curve, std::span<const std::uint64_t> aux_primes) {
  if (aux_primes.empty()) throw ValidationError("torsion_multiple: no auxiliary primes given");
  std::uint64_t result = 0;
  for (std::uint64_t ell : aux_primes) {
    if (ell == 2 || !ff::is_prime(ell)) {
      throw ValidationError("torsion_multiple: auxiliary prime " + std::to_string(ell) +
                            " is not an odd prime");
    }
    const LocalData local = compute_local_data(curve, ell);
    if (!local.good_reduction) {
      log_warning("torsion_multiple: skipping " + std::to_string(ell) + " (" +
                  local.reduction_note + ")");
      continue;
    }
    result = std::gcd(result, local.jacobian_order);
  }
  if (result == 0) throw ValidationError("torsion_multiple: no auxiliary prime has good reduction");
  return result;
}

std::vector<std::uint64_t> first_good_primes(const CurveModel& curve, std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t ell = 3; out.size() < count; ell += 2) {
    if (!ff::is_prime(ell)) continue;
    if (reduce_mod_p(curve, ell).good) out.push_back(ell);
  }
  return out;
}

}  // namespace towercert::hyper
