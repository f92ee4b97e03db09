#pragma once

#include <string>
#include <string_view>

#include "towercert/certify.hpp"
#include "towercert/hyperelliptic.hpp"
#include "towercert/lambda_algebra.hpp"

namespace towercert::ingest {

/// A curve model with its externally supplied invariants.
struct CurveRecord {
  hyper::CurveModel curve;
  certify::ArithmeticInvariants invariants;
};

/// Parses a curve-record JSON document.
///
///   {
///     "label": "...", "genus": 2,
///     "f_coeffs": [0, 1, 1], "h_coeffs": [1, 0, 0, 1],
///     "invariants": {
///       "rank": 0,
///       "torsion_order": 14, "torsion_provenance": "proved",
///       "sha_order": 1, "sha_provenance": "analytic-conjectural",
///       "tamagawa": {"3": 1},
///       "exceptional_primes": [{"ell": 2, "torsion_over_division_field": 16}],
///       "n0_override": 0
///     }
///   }
///
/// Coefficients are ascending. Only the model is required; unknown keys are
/// rejected. Errors are ValidationError with the offending JSON path.
CurveRecord parse_record(std::string_view text);

/// Inverse of parse_record: pretty-printed JSON, keys in schema order.
std::string render_record(const CurveRecord& record);

/// Parses a series literal {"p": 5, "prec_p": 20, "prec_x": 64, "coeffs": [...]}.
/// Coefficients may be JSON integers or decimal strings; missing precisions
/// fall back to the given defaults.
lambda::PadicSeries parse_series(std::string_view text, int default_prec_p = lambda::kDefaultPrecP,
                                 int default_prec_x = lambda::kDefaultPrecX);

}  // namespace towercert::ingest
