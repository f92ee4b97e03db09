#include "towercert/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "towercert/errors.hpp"

namespace towercert::ingest {

namespace {

using nlohmann::ordered_json;
using namespace certify;

ordered_json witness_to_json(const Witness& w) {
  if (const auto* i = std::get_if<std::int64_t>(&w)) return *i;
  if (const auto* s = std::get_if<std::string>(&w)) return *s;
  return nullptr;
}

std::string witness_to_text(const Witness& w) {
  if (const auto* i = std::get_if<std::int64_t>(&w)) return std::to_string(*i);
  if (const auto* s = std::get_if<std::string>(&w)) return *s;
  return "-";
}

template <typename Enum>
Enum enum_from(const std::string& s, std::initializer_list<Enum> values) {
  for (Enum v : values) {
    if (to_string(v) == s) return v;
  }
  throw ValidationError("certificate JSON: unknown value \"" + s + "\"");
}

std::string flag(const Certificate& cert, std::string_view name, const char* yes, const char* no) {
  const Check* c = cert.find(name);
  if (!c || c->status == CheckStatus::kSkipped) return "-";
  return c->status == CheckStatus::kFail ? no : yes;
}

std::string value(const Certificate& cert, std::string_view name) {
  const Check* c = cert.find(name);
  if (!c || !std::holds_alternative<std::int64_t>(c->witness)) return "-";
  return std::to_string(std::get<std::int64_t>(c->witness));
}

}  // namespace

std::string certificates_to_json(std::span<const Certificate> certificates) {
  ordered_json arr = ordered_json::array();
  for (const auto& cert : certificates) {
    ordered_json checks = ordered_json::array();
    for (const auto& c : cert.checks) {
      checks.push_back({{"name", c.name},
                        {"status", std::string(to_string(c.status))},
                        {"witness", witness_to_json(c.witness)}});
    }
    arr.push_back({{"p", cert.p},
                   {"checks", checks},
                   {"conclusion", std::string(to_string(cert.conclusion))},
                   {"conditionality", cert.conditionality}});
  }
  return arr.dump(2) + "\n";
}

std::vector<Certificate> certificates_from_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text.begin(), text.end());
  } catch (const ordered_json::exception& e) {
    throw ValidationError(std::string("certificate JSON: ") + e.what());
  }
  std::vector<Certificate> out;
  try {
    for (const auto& item : doc) {
      Certificate cert;
      cert.p = item.at("p").get<std::uint64_t>();
      for (const auto& c : item.at("checks")) {
        Check check;
        check.name = c.at("name").get<std::string>();
        check.status = enum_from<CheckStatus>(c.at("status").get<std::string>(),
                                              {CheckStatus::kPass, CheckStatus::kFail,
                                               CheckStatus::kSkipped, CheckStatus::kConditional});
        const auto& w = c.at("witness");
        if (w.is_number_integer()) {
          check.witness = w.get<std::int64_t>();
        } else if (w.is_string()) {
          check.witness = w.get<std::string>();
        }
        cert.checks.push_back(std::move(check));
      }
      cert.conclusion = enum_from<Conclusion>(item.at("conclusion").get<std::string>(),
                                              {Conclusion::kPointsStable, Conclusion::kRankStable,
                                               Conclusion::kInconclusive});
      cert.conditionality = item.at("conditionality").get<std::vector<std::string>>();
      out.push_back(std::move(cert));
    }
  } catch (const ordered_json::exception& e) {
    throw ValidationError(std::string("certificate JSON: ") + e.what());
  }
  return out;
}

std::string summary_to_json(const ScanSummary& s, const ReportContext& ctx) {
  ordered_json doc{{"label", ctx.label},
                   {"pmin", ctx.pmin},
                   {"pmax", ctx.pmax},
                   {"torsion_multiple", ctx.torsion_multiple == 0 ? ordered_json(nullptr)
                                                                  : ordered_json(ctx.torsion_multiple)},
                   {"points_stable", s.points_stable},
                   {"rank_stable", s.rank_stable},
                   {"inconclusive", s.inconclusive},
                   {"skipped", s.skipped},
                   {"internal_errors", s.internal_errors},
                   {"anomalous_primes", s.anomalous_primes}};
  return doc.dump(2) + "\n";
}

std::string render_text(const ScanReport& report, const ReportContext& ctx) {
  std::ostringstream out;
  out << "curve: " << (ctx.label.empty() ? "(unlabelled)" : ctx.label) << "\n";
  out << "primes: [" << ctx.pmin << ", " << ctx.pmax << "]\n";
  if (ctx.torsion_multiple != 0) out << "torsion multiple: " << ctx.torsion_multiple << "\n";
  out << "\n";

  out << std::right << std::setw(8) << "p" << "  " << std::left << std::setw(11) << "reduction"
      << std::setw(10) << "ordinary" << std::setw(11) << "anomalous" << std::right << std::setw(22)
      << "#J(F_p)" << "  " << std::left << "conclusion\n";
  for (const auto& cert : report.certificates) {
    std::string reduction = flag(cert, check_names::kGoodReduction, "good", "bad");
    if (const Check* c = cert.find(check_names::kGoodReduction); c && c->status == CheckStatus::kSkipped) {
      reduction = "bad";
    }
    std::string anomalous = flag(cert, check_names::kNonAnomalous, "no", "yes");
    out << std::right << std::setw(8) << cert.p << "  " << std::left << std::setw(11) << reduction
        << std::setw(10) << flag(cert, check_names::kOrdinary, "yes", "no") << std::setw(11) << anomalous
        << std::right << std::setw(22) << value(cert, check_names::kNonAnomalous) << "  " << std::left
        << to_string(cert.conclusion) << "\n";
  }

  for (const auto& cert : report.certificates) {
    out << "\np = " << cert.p << "\n";
    out << "  checks:\n";
    for (const auto& c : cert.checks) {
      out << "    " << std::left << std::setw(32) << c.name << std::setw(12) << to_string(c.status)
          << witness_to_text(c.witness) << "\n";
    }
    out << "  conclusion: " << to_string(cert.conclusion) << "\n";
    out << "  conditionality:";
    if (cert.conditionality.empty()) out << " none";
    out << "\n";
    for (const auto& c : cert.conditionality) out << "    - " << c << "\n";
  }

  const auto& s = report.summary;
  out << "\nsummary: " << s.points_stable << " POINTS_STABLE, " << s.rank_stable << " RANK_STABLE, "
      << s.inconclusive << " INCONCLUSIVE (" << s.skipped << " skipped, " << s.internal_errors
      << " internal errors)\n";
  out << "anomalous primes:";
  if (s.anomalous_primes.empty()) out << " none";
  for (auto p : s.anomalous_primes) out << " " << p;
  out << "\n";
  return out.str();
}

}  // namespace towercert::ingest
