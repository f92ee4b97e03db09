#include "towercert/certify.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "towercert/errors.hpp"

namespace towercert::certify {

namespace {

using ff::Int128;

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

bool checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
  const ff::UInt128 prod = static_cast<ff::UInt128>(a) * b;
  if (prod > kU64Max) return false;
  out = static_cast<std::uint64_t>(prod);
  return true;
}

bool is_power_of(std::uint64_t n, std::uint64_t p) {
  if (n == 0) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

int exponent_of(std::uint64_t p_power, std::uint64_t p, const char* what) {
  if (!is_power_of(p_power, p)) {
    throw ValidationError(std::string("euler_char_valuation: ") + what + " = " +
                          std::to_string(p_power) + " is not a power of " + std::to_string(p));
  }
  int k = 0;
  while (p_power > 1) {
    p_power /= p;
    ++k;
  }
  return k;
}

std::uint64_t tamagawa_product(const std::map<std::uint64_t, std::uint64_t>& tamagawa) {
  std::uint64_t product = 1;
  for (const auto& [v, c] : tamagawa) {
    if (!checked_mul(product, c, product)) {
      throw ValidationError("invariants: Tamagawa product overflows 64 bits");
    }
  }
  return product;
}

const std::string kShaConditional = "Sha(A/Q) taken from its analytic order (conjectural)";
const std::string kN0Conditional = "n0 supplied externally (n0_override)";

Check make_check(std::string_view name, CheckStatus status, Witness witness = {}) {
  return Check{std::string(name), status, std::move(witness)};
}

bool is_ok(CheckStatus s) { return s == CheckStatus::kPass || s == CheckStatus::kConditional; }

}  // namespace

std::string_view to_string(TorsionProvenance v) {
  return v == TorsionProvenance::kProved ? "proved" : "computed-multiple";
}

std::string_view to_string(ShaProvenance v) {
  switch (v) {
    case ShaProvenance::kProved:
      return "proved";
    case ShaProvenance::kAnalyticConjectural:
      return "analytic-conjectural";
    case ShaProvenance::kUnknown:
      break;
  }
  return "unknown";
}

std::string_view to_string(CheckStatus v) {
  switch (v) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kSkipped:
      return "skipped";
    case CheckStatus::kConditional:
      break;
  }
  return "conditional";
}

std::string_view to_string(Conclusion v) {
  switch (v) {
    case Conclusion::kPointsStable:
      return "POINTS_STABLE";
    case Conclusion::kRankStable:
      return "RANK_STABLE";
    case Conclusion::kInconclusive:
      break;
  }
  return "INCONCLUSIVE";
}

const Check* Certificate::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void validate(const ArithmeticInvariants& inv, const hyper::CurveModel& curve) {
  if (inv.torsion_order && *inv.torsion_order == 0) {
    throw ValidationError("invariants.torsion_order: must be positive");
  }
  const bool sha_known = inv.sha_provenance != ShaProvenance::kUnknown;
  if (sha_known && !inv.sha_order) {
    throw ValidationError("invariants.sha_order: required when sha_provenance is " +
                          std::string(to_string(inv.sha_provenance)));
  }
  if (!sha_known && inv.sha_order) {
    throw ValidationError("invariants.sha_order: given without a sha_provenance");
  }
  if (inv.sha_order && *inv.sha_order == 0) throw ValidationError("invariants.sha_order: must be positive");
  if (inv.tamagawa) {
    for (const auto& [v, c] : *inv.tamagawa) {
      const std::string where = "invariants.tamagawa." + std::to_string(v);
      if (!ff::is_prime(v)) throw ValidationError(where + ": key is not a prime");
      if (c == 0) throw ValidationError(where + ": Tamagawa number must be positive");
      if (v != 2 && hyper::reduce_mod_p(curve, v).good) {
        throw ValidationError(where + ": the model has good reduction at this prime");
      }
    }
    tamagawa_product(*inv.tamagawa);
  }
  if (inv.exceptional_primes) {
    std::set<std::uint64_t> seen;
    for (std::size_t i = 0; i < inv.exceptional_primes->size(); ++i) {
      const auto& e = (*inv.exceptional_primes)[i];
      const std::string where = "invariants.exceptional_primes[" + std::to_string(i) + "]";
      if (!ff::is_prime(e.ell)) throw ValidationError(where + ".ell: not a prime");
      if (!seen.insert(e.ell).second) throw ValidationError(where + ".ell: duplicate prime");
      if (!is_power_of(e.torsion_over_division_field, e.ell)) {
        throw ValidationError(where + ".torsion_over_division_field: not a power of " +
                              std::to_string(e.ell));
      }
    }
    alpha_bound(*inv.exceptional_primes);
  }
}

std::uint64_t p_part(std::uint64_t n, std::uint64_t p) {
  if (n == 0) throw ValidationError("p_part: zero has no p-part");
  std::uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

int euler_char_valuation(std::uint64_t p, std::uint64_t sha_p_part,
                         std::span<const std::uint64_t> tamagawa_p_parts,
                         std::span<const std::uint64_t> reduced_orders_p_parts,
                         std::uint64_t rational_torsion_p_part) {
  if (p < 2 || !ff::is_prime(p)) throw ValidationError("euler_char_valuation: p is not prime");
  const int torsion = exponent_of(rational_torsion_p_part, p, "rational torsion p-part");
  std::int64_t v = exponent_of(sha_p_part, p, "sha p-part");
  for (std::uint64_t c : tamagawa_p_parts) v += exponent_of(c, p, "tamagawa p-part");
  for (std::uint64_t r : reduced_orders_p_parts) {
    const int e = exponent_of(r, p, "reduced order p-part");
    // Rational p-power torsion reduces injectively at a good prime above p.
    if (e < torsion) {
      throw InconsistencyError("euler_char_valuation: rational torsion p-part " +
                               std::to_string(rational_torsion_p_part) + " does not divide the reduced order p-part " +
                               std::to_string(r));
    }
    v += 2 * e;
  }
  v -= 2 * torsion;
  if (v < 0) {
    throw InconsistencyError("euler_char_valuation: negative valuation " + std::to_string(v) +
                             " at p = " + std::to_string(p) +
                             " (rational p-torsion larger than the reduction)");
  }
  return static_cast<int>(v);
}

CriterionResult lambda_zero_criterion(std::uint64_t p, const hyper::LocalData& local,
                                      const ArithmeticInvariants& inv) {
  if (!inv.rank) throw InapplicableError("lambda_zero_criterion: rank of A(Q) is unknown");
  if (*inv.rank != 0) {
    throw InapplicableError("lambda_zero_criterion: requires rank 0, got " + std::to_string(*inv.rank));
  }
  if (!local.good_reduction || local.p != p) {
    throw InapplicableError("lambda_zero_criterion: requires good reduction at p = " + std::to_string(p));
  }
  if (inv.torsion_order &&
      local.jacobian_order % p_part(*inv.torsion_order, p) != 0) {
    throw InconsistencyError("lambda_zero_criterion: rational " + std::to_string(p) +
                             "-torsion does not inject into #J(F_p) = " +
                             std::to_string(local.jacobian_order));
  }
  CriterionResult out;
  std::vector<std::string> conditional;
  if (!local.ordinary) out.reasons.emplace_back("not ordinary");
  if (local.anomalous) out.reasons.emplace_back("anomalous");
  if (inv.sha_provenance == ShaProvenance::kUnknown) {
    out.reasons.emplace_back("sha unknown");
  } else if (*inv.sha_order % p == 0) {
    out.reasons.emplace_back("p divides #Sha");
  } else if (inv.sha_provenance == ShaProvenance::kAnalyticConjectural) {
    conditional.push_back(kShaConditional);
  }
  if (!inv.tamagawa) {
    out.reasons.emplace_back("tamagawa unknown");
  } else if (tamagawa_product(*inv.tamagawa) % p == 0) {
    out.reasons.emplace_back("p divides the Tamagawa product");
  }
  if (!out.reasons.empty()) {
    out.status = CriterionStatus::kFails;
  } else if (!conditional.empty()) {
    out.status = CriterionStatus::kConditional;
    out.reasons = std::move(conditional);
  } else {
    out.status = CriterionStatus::kHolds;
  }
  return out;
}

std::uint64_t alpha_bound(std::span<const ExceptionalPrimeEntry> exceptional) {
  std::uint64_t product = 1;
  for (const auto& e : exceptional) {
    if (!checked_mul(product, e.torsion_over_division_field, product)) {
      throw ValidationError("alpha_bound: product overflows 64 bits");
    }
  }
  return product;
}

std::uint64_t m0_bound(std::uint64_t n0, std::uint64_t alpha, std::uint64_t p) {
  if (alpha == 0) throw ValidationError("m0_bound: alpha must be positive");
  if (p < 2) throw ValidationError("m0_bound: p must be prime");
  std::uint64_t k = 0;
  ff::UInt128 power = p;
  while (power <= alpha) {
    ++k;
    power *= p;
  }
  return n0 + k;
}

std::vector<std::uint64_t> exceptional_genera(std::uint64_t bound) {
  std::set<std::uint64_t> out;
  // (2n)^k / 2 = 2^(k-1) n^k; smallest for n = 1, so stop once 2^(k-1) > bound.
  for (unsigned k = 3; k < 64 && (std::uint64_t{1} << (k - 1)) <= bound; k += 2) {
    for (std::uint64_t n = 1;; ++n) {
      ff::UInt128 v = ff::UInt128{1} << (k - 1);
      bool over = false;
      for (unsigned i = 0; i < k && !over; ++i) {
        v *= n;
        over = v > bound;
      }
      if (over) break;
      out.insert(static_cast<std::uint64_t>(v));
    }
  }
  // C(2n, n) / 2 for odd n >= 3; C(2n, n) is increasing in n.
  for (std::uint64_t n = 3;; n += 2) {
    ff::UInt128 c = 1;
    for (std::uint64_t i = 1; i <= n; ++i) c = c * (n + i) / i;
    if (c / 2 > bound) break;
    out.insert(static_cast<std::uint64_t>(c / 2));
  }
  return {out.begin(), out.end()};
}

bool is_genus_exceptional(std::uint64_t g) {
  if (g == 0) throw ValidationError("is_genus_exceptional: genus must be >= 1");
  const auto set = exceptional_genera(g);
  return std::binary_search(set.begin(), set.end(), g);
}

Certificate certify_prime(const hyper::CurveModel& curve, const ArithmeticInvariants& inv,
                          std::uint64_t p) {
  if (!ff::is_prime(p)) throw ValidationError("certify_prime: " + std::to_string(p) + " is not prime");
  if (p < 5 || curve.genus() != 2) {
    hyper::LocalData none;
    none.p = p;
    return certify_prime(curve, inv, none);
  }
  return certify_prime(curve, inv, hyper::compute_local_data(curve, p));
}

Certificate certify_prime(const hyper::CurveModel& curve, const ArithmeticInvariants& inv,
                          const hyper::LocalData& local) {
  namespace n = check_names;
  const std::uint64_t p = local.p;
  Certificate cert;
  cert.p = p;
  if (inv.sha_provenance == ShaProvenance::kAnalyticConjectural) {
    cert.conditionality.push_back(kShaConditional);
  }
  if (p < 5) {
    cert.checks.push_back(make_check(n::kPrimeRange, CheckStatus::kSkipped, std::string("p < 5")));
    return cert;
  }
  cert.checks.push_back(make_check(n::kPrimeRange, CheckStatus::kPass, static_cast<std::int64_t>(p)));
  if (curve.genus() != 2) {
    cert.checks.push_back(make_check(n::kGenus, CheckStatus::kSkipped,
                                     "unsupported genus " + std::to_string(curve.genus())));
    return cert;
  }
  cert.checks.push_back(make_check(n::kGenus, CheckStatus::kPass, std::int64_t{2}));
  if (!local.good_reduction) {
    cert.checks.push_back(make_check(n::kGoodReduction, CheckStatus::kSkipped,
                                     "bad model reduction: " + local.reduction_note));
    return cert;
  }
  cert.checks.push_back(make_check(n::kGoodReduction, CheckStatus::kPass,
                                   std::string("h^2 + 4f squarefree of degree ") +
                                       std::to_string(curve.completed_square().size() - 1) +
                                       " mod p"));

  const bool rank_zero = inv.rank && *inv.rank == 0;
  if (!inv.rank) {
    cert.checks.push_back(make_check(n::kRankZero, CheckStatus::kSkipped, std::string("rank unknown")));
  } else {
    cert.checks.push_back(make_check(n::kRankZero, rank_zero ? CheckStatus::kPass : CheckStatus::kFail,
                                     static_cast<std::int64_t>(*inv.rank)));
  }

  cert.checks.push_back(make_check(n::kOrdinary, local.ordinary ? CheckStatus::kPass : CheckStatus::kFail,
                                   local.lpoly.c2));
  cert.checks.push_back(make_check(n::kNonAnomalous,
                                   local.anomalous ? CheckStatus::kFail : CheckStatus::kPass,
                                   static_cast<std::int64_t>(local.jacobian_order)));

  CheckStatus torsion_status = CheckStatus::kSkipped;
  if (inv.torsion_order) {
    torsion_status = *inv.torsion_order % p == 0 ? CheckStatus::kFail : CheckStatus::kPass;
    cert.checks.push_back(make_check(n::kTorsionPFree, torsion_status,
                                     static_cast<std::int64_t>(*inv.torsion_order)));
  } else {
    cert.checks.push_back(make_check(n::kTorsionPFree, torsion_status, std::string("torsion order unknown")));
  }

  CheckStatus alpha_status = CheckStatus::kSkipped;
  std::optional<std::uint64_t> alpha;
  if (inv.exceptional_primes) {
    alpha = alpha_bound(*inv.exceptional_primes);
    alpha_status = p > *alpha ? CheckStatus::kPass : CheckStatus::kFail;
    cert.checks.push_back(make_check(n::kAlphaBound, alpha_status, static_cast<std::int64_t>(*alpha)));
  } else {
    cert.checks.push_back(make_check(n::kAlphaBound, alpha_status,
                                     std::string("exceptional primes not supplied")));
  }

  if (inv.sha_provenance == ShaProvenance::kUnknown) {
    cert.checks.push_back(make_check(n::kShaPFree, CheckStatus::kSkipped, std::string("sha unknown")));
  } else {
    CheckStatus s = CheckStatus::kFail;
    if (*inv.sha_order % p != 0) {
      s = inv.sha_provenance == ShaProvenance::kProved ? CheckStatus::kPass : CheckStatus::kConditional;
    }
    cert.checks.push_back(make_check(n::kShaPFree, s, static_cast<std::int64_t>(*inv.sha_order)));
  }

  if (!inv.tamagawa) {
    cert.checks.push_back(make_check(n::kTamagawaPFree, CheckStatus::kSkipped, std::string("tamagawa unknown")));
  } else {
    const std::uint64_t product = tamagawa_product(*inv.tamagawa);
    cert.checks.push_back(make_check(n::kTamagawaPFree,
                                     product % p == 0 ? CheckStatus::kFail : CheckStatus::kPass,
                                     static_cast<std::int64_t>(product)));
  }

  std::optional<CriterionResult> criterion;
  if (rank_zero) criterion = lambda_zero_criterion(p, local, inv);
  const bool lambda_zero = criterion && criterion->status != CriterionStatus::kFails;

  // Valuation of f(0) from the Euler characteristic formula (rank 0 only).
  if (rank_zero && inv.sha_provenance != ShaProvenance::kUnknown && inv.tamagawa && inv.torsion_order) {
    std::vector<std::uint64_t> tam_parts;
    for (const auto& [v, c] : *inv.tamagawa) tam_parts.push_back(p_part(c, p));
    const std::uint64_t reduced[] = {p_part(local.jacobian_order, p)};
    const int v = euler_char_valuation(p, p_part(*inv.sha_order, p), tam_parts, reduced,
                                       p_part(*inv.torsion_order, p));
    CheckStatus s = CheckStatus::kFail;
    if (v == 0) {
      s = inv.sha_provenance == ShaProvenance::kProved ? CheckStatus::kPass : CheckStatus::kConditional;
    }
    cert.checks.push_back(make_check(n::kEulerCharacteristic, s, std::int64_t{v}));
  } else {
    cert.checks.push_back(make_check(n::kEulerCharacteristic, CheckStatus::kSkipped,
                                     std::string(rank_zero ? "inputs unknown" : "requires rank 0")));
  }

  // m0 <= n0 + floor(log_p alpha), valid once A(Q)[p] = 0 and the reduction is
  // good ordinary.
  std::optional<std::uint64_t> n0;
  bool n0_external = false;
  if (lambda_zero) {
    n0 = 0;
  } else if (inv.n0_override) {
    n0 = *inv.n0_override;
    n0_external = true;
  }
  if (n0 && alpha && torsion_status == CheckStatus::kPass && local.ordinary) {
    const bool conditional = n0_external || (lambda_zero && criterion->status == CriterionStatus::kConditional);
    cert.checks.push_back(make_check(n::kM0Bound,
                                     conditional ? CheckStatus::kConditional : CheckStatus::kPass,
                                     static_cast<std::int64_t>(m0_bound(*n0, *alpha, p))));
    if (n0_external) cert.conditionality.push_back(kN0Conditional);
  } else {
    cert.checks.push_back(make_check(n::kM0Bound, CheckStatus::kSkipped,
                                     std::string("needs n0, the alpha bound, A(Q)[p] = 0 and ordinary reduction")));
  }

  if (lambda_zero) {
    cert.conclusion = is_ok(torsion_status) && is_ok(alpha_status) ? Conclusion::kPointsStable
                                                                    : Conclusion::kRankStable;
  }
  return cert;
}

}  // namespace towercert::certify
