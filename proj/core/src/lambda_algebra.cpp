#include "towercert/lambda_algebra.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "towercert/errors.hpp"
#include "towercert/finite_field.hpp"

namespace towercert::lambda {

namespace {

using Coeffs = std::vector<BigInt>;

BigInt power_of(std::uint64_t p, int k) {
  BigInt r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

BigInt reduce(BigInt a, const BigInt& m) {
  a %= m;
  if (a < 0) a += m;
  return a;
}

BigInt inverse_mod(const BigInt& a, const BigInt& m) {
  BigInt old_r = reduce(a, m), r = m;
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    const BigInt q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  if (old_r != 1) throw InconsistencyError("lambda algebra: inverting a non-unit");
  return reduce(old_s, m);
}

// Truncated product a * b mod (m, x^len).
Coeffs mul_trunc(const Coeffs& a, const Coeffs& b, std::size_t len, const BigInt& m) {
  Coeffs out(len, 0);
  for (std::size_t k = 0; k < len; ++k) {
    BigInt acc = 0;
    const std::size_t lo = k + 1 > b.size() ? k + 1 - b.size() : 0;
    for (std::size_t i = lo; i <= k && i < a.size(); ++i) {
      if (a[i] != 0 && b[k - i] != 0) acc += a[i] * b[k - i];
    }
    out[k] = reduce(std::move(acc), m);
  }
  return out;
}

// Inverse of a series with unit constant term, mod (m, x^len).
Coeffs inverse_trunc(const Coeffs& a, std::size_t len, const BigInt& m) {
  Coeffs out(len, 0);
  const BigInt inv0 = inverse_mod(a.at(0), m);
  out[0] = inv0;
  for (std::size_t k = 1; k < len; ++k) {
    BigInt acc = 0;
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) {
      if (a[j] != 0) acc += a[j] * out[k - j];
    }
    out[k] = reduce(-reduce(std::move(acc), m) * inv0, m);
  }
  return out;
}

void require_prime(std::uint64_t p) {
  if (!ff::is_prime(p)) throw ValidationError("p-adic series: " + std::to_string(p) + " is not prime");
}

}  // namespace

int valuation(const BigInt& a, std::uint64_t p, int cap) {
  if (a == 0) return cap;
  BigInt r = a < 0 ? BigInt(-a) : a;
  int v = 0;
  while (v < cap && r % p == 0) {
    r /= p;
    ++v;
  }
  return v;
}

PadicSeries::PadicSeries(std::uint64_t p, int prec_p, int prec_x, std::span<const BigInt> coeffs)
    : p_(p), prec_p_(prec_p) {
  require_prime(p);
  if (prec_p < 1 || prec_x < 1) {
    throw ValidationError("p-adic series: precisions must be >= 1 (prec_p = " +
                          std::to_string(prec_p) + ", prec_x = " + std::to_string(prec_x) + ")");
  }
  modulus_ = power_of(p, prec_p);
  coeffs_.assign(static_cast<std::size_t>(prec_x), BigInt{0});
  for (std::size_t i = 0; i < coeffs.size() && i < coeffs_.size(); ++i) coeffs_[i] = coeffs[i];
  normalize();
}

PadicSeries::PadicSeries(std::uint64_t p, int prec_p, int prec_x,
                         std::initializer_list<std::int64_t> coeffs)
    : PadicSeries(p, prec_p, prec_x, Coeffs(coeffs.begin(), coeffs.end())) {}

PadicSeries::PadicSeries(std::uint64_t p, int prec_p, Coeffs coeffs)
    : p_(p), prec_p_(prec_p), modulus_(power_of(p, prec_p)), coeffs_(std::move(coeffs)) {
  normalize();
}

PadicSeries PadicSeries::one(std::uint64_t p, int prec_p, int prec_x) {
  return PadicSeries(p, prec_p, prec_x, {1});
}

void PadicSeries::normalize() {
  for (auto& c : coeffs_) c = reduce(std::move(c), modulus_);
}

bool PadicSeries::is_indeterminate() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c == 0; });
}

int PadicSeries::degree() const {
  for (int i = prec_x() - 1; i >= 0; --i) {
    if (coeffs_[static_cast<std::size_t>(i)] != 0) return i;
  }
  return -1;
}

PadicSeries PadicSeries::shifted_by_p(int k) const {
  if (k < 0) throw ValidationError("p-adic series: negative p-power shift");
  const BigInt scale = power_of(p_, k);
  Coeffs out = coeffs_;
  for (auto& c : out) c *= scale;
  return PadicSeries(p_, prec_p_ + k, std::move(out));
}

PadicSeries PadicSeries::with_precision(int prec_p, int prec_x) const {
  if (prec_p > prec_p_ || prec_x > this->prec_x()) {
    throw PrecisionError("p-adic series: cannot raise precision");
  }
  return PadicSeries(p_, prec_p, prec_x, coeffs_);
}

namespace {

void require_compatible(const PadicSeries& a, const PadicSeries& b) {
  if (a.prime() != b.prime()) {
    throw ValidationError("p-adic series: mixing primes " + std::to_string(a.prime()) + " and " +
                          std::to_string(b.prime()));
  }
}

}  // namespace

PadicSeries operator+(const PadicSeries& a, const PadicSeries& b) {
  require_compatible(a, b);
  const int n = std::min(a.prec_p(), b.prec_p());
  const int d = std::min(a.prec_x(), b.prec_x());
  Coeffs out(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) out[i] = a.coeff(i) + b.coeff(i);
  return PadicSeries(a.prime(), n, d, out);
}

PadicSeries operator-(const PadicSeries& a, const PadicSeries& b) {
  require_compatible(a, b);
  const int n = std::min(a.prec_p(), b.prec_p());
  const int d = std::min(a.prec_x(), b.prec_x());
  Coeffs out(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) out[i] = a.coeff(i) - b.coeff(i);
  return PadicSeries(a.prime(), n, d, out);
}

PadicSeries operator*(const PadicSeries& a, const PadicSeries& b) {
  require_compatible(a, b);
  const int n = std::min(a.prec_p(), b.prec_p());
  const int d = std::min(a.prec_x(), b.prec_x());
  const BigInt m = power_of(a.prime(), n);
  return PadicSeries(a.prime(), n, d, mul_trunc(a.coeffs(), b.coeffs(), static_cast<std::size_t>(d), m));
}

bool operator==(const PadicSeries& a, const PadicSeries& b) {
  return a.p_ == b.p_ && a.prec_p_ == b.prec_p_ && a.coeffs_ == b.coeffs_;
}

int mu_invariant(const PadicSeries& f) {
  if (f.is_indeterminate()) {
    throw PrecisionError("mu invariant: series vanishes modulo p^" + std::to_string(f.prec_p()) +
                         " in degrees < " + std::to_string(f.prec_x()) + "; increase precision");
  }
  int mu = f.prec_p();
  for (const auto& c : f.coeffs()) mu = std::min(mu, valuation(c, f.prime(), f.prec_p()));
  return mu;
}

int lambda_invariant(const PadicSeries& f) {
  const int mu = mu_invariant(f);
  for (int i = 0; i < f.prec_x(); ++i) {
    if (valuation(f.coeff(i), f.prime(), f.prec_p()) == mu) return i;
  }
  // Unreachable: mu is attained by some coefficient of the truncation.
  throw PrecisionError("lambda invariant: minimal valuation not attained below prec_x");
}

PadicValue evaluate_at_zero(const PadicSeries& f) {
  return {f.coeff(0), valuation(f.coeff(0), f.prime(), f.prec_p()), f.prec_p()};
}

bool is_distinguished(std::span<const BigInt> poly, std::uint64_t p) {
  std::size_t len = poly.size();
  while (len > 0 && poly[len - 1] == 0) --len;
  if (len == 0 || poly[len - 1] != 1) return false;
  for (std::size_t i = 0; i + 1 < len; ++i) {
    if (poly[i] % p != 0) return false;
  }
  return true;
}

WeierstrassFactorization weierstrass_prepare(const PadicSeries& f) {
  const std::uint64_t p = f.prime();
  const int mu = mu_invariant(f);
  const int lambda = lambda_invariant(f);
  const int out_prec = f.prec_p() - mu;
  const auto len = static_cast<std::size_t>(f.prec_x());
  const BigInt m = power_of(p, out_prec);
  const BigInt scale = power_of(p, mu);

  Coeffs g(len);
  for (std::size_t i = 0; i < len; ++i) g[i] = reduce(f.coeffs()[i] / scale, m);

  if (lambda == 0) {
    return {mu, PadicSeries::one(p, out_prec, f.prec_x()), PadicSeries(p, out_prec, f.prec_x(), g)};
  }

  const auto lam = static_cast<std::size_t>(lambda);
  const Coeffs low(g.begin(), g.begin() + lambda);   // divisible by p
  const Coeffs high(g.begin() + lambda, g.end());    // unit constant term

  // Weierstrass division of x^lambda by g: find q with q*g = x^lambda + r,
  // deg r < lambda, via the contraction q = V (1 - shift(q * low)), V = 1/high.
  // Truncation errors travel down lambda degrees per step while gaining a
  // factor p, so a working length of len + lambda*(out_prec + 1) leaves the
  // first len coefficients exact mod p^out_prec.
  const std::size_t work = len + lam * static_cast<std::size_t>(out_prec + 1);
  const Coeffs v = inverse_trunc(high, work, m);
  Coeffs q = v;
  bool converged = false;
  for (int iter = 0; iter <= out_prec + 1; ++iter) {
    const Coeffs t = mul_trunc(q, low, work + lam, m);
    const Coeffs shifted(t.begin() + lambda, t.end());
    Coeffs correction = mul_trunc(v, shifted, work, m);
    Coeffs next(work);
    for (std::size_t k = 0; k < work; ++k) next[k] = reduce(v[k] - correction[k], m);
    if (next == q) {
      converged = true;
      break;
    }
    q = std::move(next);
  }
  if (!converged) {
    throw InconsistencyError("weierstrass_prepare: division iteration did not converge");
  }

  Coeffs dist = mul_trunc(q, low, lam, m);
  dist.push_back(1);
  const Coeffs unit = inverse_trunc(q, len, m);

  WeierstrassFactorization out{mu, PadicSeries(p, out_prec, f.prec_x(), dist),
                               PadicSeries(p, out_prec, f.prec_x(), unit)};
  if (!(out.distinguished * out.unit == PadicSeries(p, out_prec, f.prec_x(), g))) {
    throw InconsistencyError("weierstrass_prepare: factorisation does not reproduce the input");
  }
  return out;
}

PadicSeries char_element(std::span<const ElementaryDivisor> divisors, std::uint64_t p, int prec_p,
                         int prec_x) {
  PadicSeries acc = PadicSeries::one(p, prec_p, prec_x);
  int total_mu = 0;
  for (const auto& divisor : divisors) {
    if (const auto* pp = std::get_if<PPowerDivisor>(&divisor)) {
      if (pp->mu < 0) throw ValidationError("char_element: negative p-power exponent");
      total_mu += pp->mu;
    } else {
      const auto& poly = std::get<DistinguishedDivisor>(divisor).poly;
      if (!is_distinguished(poly, p)) {
        throw ValidationError("char_element: polynomial entry is not distinguished for p = " +
                              std::to_string(p));
      }
      acc = acc * PadicSeries(p, prec_p, prec_x, poly);
    }
  }
  const BigInt scale = power_of(p, total_mu);
  Coeffs out = acc.coeffs();
  for (auto& c : out) c *= scale;
  return PadicSeries(p, prec_p, prec_x, out);
}

}  // namespace towercert::lambda
