#include <algorithm>
#include <atomic>
#include <thread>

#include "towercert/certify.hpp"
#include "towercert/errors.hpp"

namespace towercert::certify {

namespace {

struct Slot {
  Certificate cert;
  bool internal_error = false;
};

Slot certify_or_skip(const hyper::CurveModel& curve, const ArithmeticInvariants& inv, std::uint64_t p) {
  Slot slot;
  try {
    slot.cert = certify_prime(curve, inv, p);
  } catch (const Error& e) {
    slot.internal_error = dynamic_cast<const InconsistencyError*>(&e) != nullptr;
    slot.cert = Certificate{};
    slot.cert.p = p;
    slot.cert.checks.push_back(Check{"evaluation", CheckStatus::kSkipped,
                                     std::string(slot.internal_error ? "internal inconsistency: "
                                                                     : "error: ") +
                                         e.what()});
    if (inv.sha_provenance == ShaProvenance::kAnalyticConjectural) {
      slot.cert.conditionality.emplace_back("Sha(A/Q) taken from its analytic order (conjectural)");
    }
  }
  return slot;
}

bool is_skipped(const Certificate& cert) {
  return std::any_of(cert.checks.begin(), cert.checks.end(), [](const Check& c) {
    return c.status == CheckStatus::kSkipped &&
           (c.name == check_names::kPrimeRange || c.name == check_names::kGenus ||
            c.name == check_names::kGoodReduction || c.name == "evaluation");
  });
}

}  // namespace

ScanReport scan(const hyper::CurveModel& curve, const ArithmeticInvariants& inv, std::uint64_t pmin,
                std::uint64_t pmax, unsigned jobs) {
  if (pmin > pmax) {
    throw ValidationError("scan: empty prime range [" + std::to_string(pmin) + ", " +
                          std::to_string(pmax) + "]");
  }
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = std::max<std::uint64_t>(pmin, 2); p <= pmax; ++p) {
    if (ff::is_prime(p)) primes.push_back(p);
  }

  std::vector<Slot> slots(primes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < primes.size(); i = next++) {
      slots[i] = certify_or_skip(curve, inv, primes[i]);
    }
  };
  const unsigned workers = std::clamp<unsigned>(jobs, 1, std::max<std::size_t>(primes.size(), 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  ScanReport report;
  report.certificates.reserve(slots.size());
  for (auto& slot : slots) {
    auto& s = report.summary;
    switch (slot.cert.conclusion) {
      case Conclusion::kPointsStable:
        ++s.points_stable;
        break;
      case Conclusion::kRankStable:
        ++s.rank_stable;
        break;
      case Conclusion::kInconclusive:
        ++s.inconclusive;
        break;
    }
    if (is_skipped(slot.cert)) ++s.skipped;
    if (slot.internal_error) ++s.internal_errors;
    if (const Check* c = slot.cert.find(check_names::kNonAnomalous); c && c->status == CheckStatus::kFail) {
      s.anomalous_primes.push_back(slot.cert.p);
    }
    report.certificates.push_back(std::move(slot.cert));
  }
  return report;
}

}  // namespace towercert::certify
