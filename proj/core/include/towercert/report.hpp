#pragma once

#include <span>
#include <string>

#include "towercert/certify.hpp"

namespace towercert::ingest {

/// JSON array of certificates:
/// [{"p", "checks": [{"name", "status", "witness"}], "conclusion", "conditionality"}]
std::string certificates_to_json(std::span<const certify::Certificate> certificates);

/// Parses the output of certificates_to_json.
std::vector<certify::Certificate> certificates_from_json(std::string_view text);

struct ReportContext {
  std::string label;
  std::uint64_t pmin = 0;
  std::uint64_t pmax = 0;
  std::uint64_t torsion_multiple = 0;  // 0 when not computed
};

/// Summary counts as a JSON object.
std::string summary_to_json(const certify::ScanSummary& summary, const ReportContext& context);

/// Aligned per-prime table followed by one block per certificate listing the
/// same fields as the JSON form, then the summary.
std::string render_text(const certify::ScanReport& report, const ReportContext& context);

}  // namespace towercert::ingest
