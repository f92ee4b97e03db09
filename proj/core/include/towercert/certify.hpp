#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "towercert/hyperelliptic.hpp"

namespace towercert::certify {

enum class TorsionProvenance { kProved, kComputedMultiple };
enum class ShaProvenance { kProved, kAnalyticConjectural, kUnknown };

std::string_view to_string(TorsionProvenance v);
std::string_view to_string(ShaProvenance v);

/// (l, #A(Q(A[l]))[l^oo]) for a prime l whose mod-l image misses Sp_2g(F_l).
struct ExceptionalPrimeEntry {
  std::uint64_t ell = 0;
  std::uint64_t torsion_over_division_field = 1;
  friend bool operator==(const ExceptionalPrimeEntry&, const ExceptionalPrimeEntry&) = default;
};

/// Externally known arithmetic of the Jacobian A over Q. Optional fields are
/// unknown when empty.
struct ArithmeticInvariants {
  std::optional<std::uint64_t> rank;
  std::optional<std::uint64_t> torsion_order;
  TorsionProvenance torsion_provenance = TorsionProvenance::kProved;
  std::optional<std::uint64_t> sha_order;
  ShaProvenance sha_provenance = ShaProvenance::kUnknown;
  /// Bad prime -> Tamagawa number c_v. Unknown when empty optional; an empty
  /// map means the product is 1.
  std::optional<std::map<std::uint64_t, std::uint64_t>> tamagawa;
  /// Absent means the exceptional set was not supplied; an empty list means
  /// the set is empty.
  std::optional<std::vector<ExceptionalPrimeEntry>> exceptional_primes;
  std::optional<std::uint64_t> n0_override;

  friend bool operator==(const ArithmeticInvariants&, const ArithmeticInvariants&) = default;
};

/// Checks the internal consistency of the invariants against the model:
/// positive orders, Tamagawa keys are primes of bad model reduction,
/// exceptional entries are prime powers of their prime, Sha order present
/// exactly when its provenance is known. Throws ValidationError.
void validate(const ArithmeticInvariants& inv, const hyper::CurveModel& curve);

enum class CheckStatus { kPass, kFail, kSkipped, kConditional };
enum class Conclusion { kPointsStable, kRankStable, kInconclusive };

std::string_view to_string(CheckStatus v);
std::string_view to_string(Conclusion v);

/// The tested datum: a number, a short explanation, or nothing.
using Witness = std::variant<std::monostate, std::int64_t, std::string>;

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::kSkipped;
  Witness witness;
  friend bool operator==(const Check&, const Check&) = default;
};

struct Certificate {
  std::uint64_t p = 0;
  std::vector<Check> checks;
  Conclusion conclusion = Conclusion::kInconclusive;
  std::vector<std::string> conditionality;

  const Check* find(std::string_view name) const;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Stable check names, in the order certify_prime emits them.
namespace check_names {
inline constexpr std::string_view kPrimeRange = "prime_at_least_5";
inline constexpr std::string_view kGenus = "genus_supported";
inline constexpr std::string_view kGoodReduction = "good_reduction";
inline constexpr std::string_view kRankZero = "rank_zero";
inline constexpr std::string_view kOrdinary = "ordinary";
inline constexpr std::string_view kNonAnomalous = "non_anomalous";
inline constexpr std::string_view kTorsionPFree = "torsion_p_free";
inline constexpr std::string_view kAlphaBound = "p_exceeds_alpha_bound";
inline constexpr std::string_view kShaPFree = "sha_p_free";
inline constexpr std::string_view kTamagawaPFree = "tamagawa_p_free";
inline constexpr std::string_view kEulerCharacteristic = "euler_characteristic_valuation";
inline constexpr std::string_view kM0Bound = "m0_bound";
}  // namespace check_names

/// The p-adic valuation of the leading term of the characteristic element:
/// v(sha) + sum v(c_v) + 2 sum v(#A~(F_v)) - 2 v(#A(Q)[p^oo]).
/// Every argument must be a power of p. Throws ValidationError otherwise and
/// InconsistencyError when the rational torsion p-part does not divide a
/// reduced order p-part (which also rules out a negative result).
int euler_char_valuation(std::uint64_t p, std::uint64_t sha_p_part,
                         std::span<const std::uint64_t> tamagawa_p_parts,
                         std::span<const std::uint64_t> reduced_orders_p_parts,
                         std::uint64_t rational_torsion_p_part);

/// Largest power of p dividing n (n > 0).
std::uint64_t p_part(std::uint64_t n, std::uint64_t p);

enum class CriterionStatus { kHolds, kFails, kConditional };

struct CriterionResult {
  CriterionStatus status = CriterionStatus::kFails;
  std::vector<std::string> reasons;  // failures, or the conditional inputs
};

/// lambda(A/Q_cyc) = 0 when A is ordinary and non-anomalous at p and p divides
/// neither #Sha nor the Tamagawa product. Conditional when the Sha input is
/// analytic. Throws InapplicableError for positive or unknown rank and
/// InconsistencyError when the rational p-torsion does not inject into
/// #J(F_p).
CriterionResult lambda_zero_criterion(std::uint64_t p, const hyper::LocalData& local,
                                      const ArithmeticInvariants& inv);

/// Product of the division-field torsion orders over the exceptional set.
std::uint64_t alpha_bound(std::span<const ExceptionalPrimeEntry> exceptional);

/// n0 + floor(log_p alpha), exact integer arithmetic.
std::uint64_t m0_bound(std::uint64_t n0, std::uint64_t alpha, std::uint64_t p);

/// Genus in {(2n)^k / 2 : n > 0, k >= 3 odd} U {C(2n, n) / 2 : n >= 3 odd}.
bool is_genus_exceptional(std::uint64_t g);

/// Sorted members of the exceptional genus set up to `bound`.
std::vector<std::uint64_t> exceptional_genera(std::uint64_t bound);

/// Runs every condition at p, continuing past failures.
Certificate certify_prime(const hyper::CurveModel& curve, const ArithmeticInvariants& inv,
                          std::uint64_t p);

/// Same, reusing precomputed local data (which must belong to p).
Certificate certify_prime(const hyper::CurveModel& curve, const ArithmeticInvariants& inv,
                          const hyper::LocalData& local);

struct ScanSummary {
  std::size_t points_stable = 0;
  std::size_t rank_stable = 0;
  std::size_t inconclusive = 0;
  std::size_t skipped = 0;
  std::size_t internal_errors = 0;
  std::vector<std::uint64_t> anomalous_primes;
  friend bool operator==(const ScanSummary&, const ScanSummary&) = default;
};

struct ScanReport {
  std::vector<Certificate> certificates;  // ascending p
  ScanSummary summary;
};

/// One certificate per prime in [pmin, pmax], computed on `jobs` workers and
/// returned in ascending order. Per-prime errors become skipped certificates.
ScanReport scan(const hyper::CurveModel& curve, const ArithmeticInvariants& inv,
                std::uint64_t pmin, std::uint64_t pmax, unsigned jobs = 1);

}  // namespace towercert::certify
