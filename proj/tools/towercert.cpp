// towercert: prime-by-prime stability certificates for the rational points of
// a hyperelliptic curve (and the rank of its Jacobian) in cyclotomic Z_p-towers.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "towercert/certify.hpp"
#include "towercert/errors.hpp"
#include "towercert/lambda_algebra.hpp"
#include "towercert/record.hpp"
#include "towercert/report.hpp"

namespace fs = std::filesystem;
using namespace towercert;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInternal = 2;
constexpr std::uint64_t kDefaultPmaxCap = 1'000'000;

struct Options {
  std::string curve_path;
  std::string series_path;
  std::uint64_t pmin = 5;
  std::uint64_t pmax = 100;
  std::size_t aux_primes = 8;
  std::string report = "both";
  std::string out_dir = ".";
  int prec_p = lambda::kDefaultPrecP;
  int prec_x = lambda::kDefaultPrecX;
  unsigned jobs = 1;
  bool allow_large_range = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << content;
}

std::string big_to_string(const lambda::BigInt& v) { return v.str(); }

nlohmann::ordered_json series_json(const lambda::PadicSeries& s) {
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  const int deg = s.degree();
  for (int i = 0; i <= deg; ++i) coeffs.push_back(big_to_string(s.coeff(i)));
  return {{"p", s.prime()}, {"prec_p", s.prec_p()}, {"prec_x", s.prec_x()}, {"coeffs", coeffs}};
}

int run_series(const Options& opt) {
  const auto f = ingest::parse_series(read_file(opt.series_path), opt.prec_p, opt.prec_x);
  const auto at_zero = lambda::evaluate_at_zero(f);
  const auto wf = lambda::weierstrass_prepare(f);
  nlohmann::ordered_json doc{{"input", series_json(f)},
                             {"mu", wf.mu},
                             {"lambda", wf.lambda()},
                             {"f0_valuation", at_zero.valuation},
                             {"distinguished", series_json(wf.distinguished)},
                             {"unit", series_json(wf.unit)}};
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

int run_scan(const Options& opt) {
  if (opt.pmin > opt.pmax) {
    throw ValidationError("--pmin " + std::to_string(opt.pmin) + " exceeds --pmax " +
                          std::to_string(opt.pmax));
  }
  if (opt.pmax > kDefaultPmaxCap && !opt.allow_large_range) {
    throw ValidationError("--pmax above " + std::to_string(kDefaultPmaxCap) +
                          " requires --allow-large-range (counting over F_{p^2} is O(p^2) per prime)");
  }
  auto record = ingest::parse_record(read_file(opt.curve_path));
  const auto& curve = record.curve;
  auto& inv = record.invariants;

  ingest::ReportContext ctx{curve.label(), opt.pmin, opt.pmax, 0};
  if (curve.genus() == 2 && opt.aux_primes > 0) {
    const auto aux = hyper::first_good_primes(curve, opt.aux_primes);
    ctx.torsion_multiple = hyper::torsion_multiple(curve, aux);
    if (inv.torsion_order) {
      if (ctx.torsion_multiple % *inv.torsion_order != 0) {
        throw ValidationError("invariants.torsion_order: " + std::to_string(*inv.torsion_order) +
                              " does not divide the computed torsion multiple " +
                              std::to_string(ctx.torsion_multiple));
      }
    } else {
      inv.torsion_order = ctx.torsion_multiple;
      inv.torsion_provenance = certify::TorsionProvenance::kComputedMultiple;
    }
  }

  const auto report = certify::scan(curve, inv, opt.pmin, opt.pmax, opt.jobs);

  fs::create_directories(opt.out_dir);
  const fs::path out(opt.out_dir);
  if (opt.report == "json" || opt.report == "both") {
    write_file(out / "certificates.json", ingest::certificates_to_json(report.certificates));
    write_file(out / "summary.json", ingest::summary_to_json(report.summary, ctx));
  }
  if (opt.report == "text" || opt.report == "both") {
    write_file(out / "report.txt", ingest::render_text(report, ctx));
  }
  const auto& s = report.summary;
  std::cout << report.certificates.size() << " primes: " << s.points_stable << " POINTS_STABLE, "
            << s.rank_stable << " RANK_STABLE, " << s.inconclusive << " INCONCLUSIVE\n";
  if (s.internal_errors > 0) {
    std::cerr << "error: " << s.internal_errors
              << " prime(s) hit an internal inconsistency; see the skipped certificates\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Certify stability of rational points of a hyperelliptic curve in cyclotomic Z_p-towers"};
  auto* curve_opt = app.add_option("--curve", opt.curve_path, "Curve record (JSON)")->check(CLI::ExistingFile);
  auto* series_opt =
      app.add_option("--series", opt.series_path, "Analyse a p-adic series literal (JSON) instead of scanning")
          ->check(CLI::ExistingFile);
  curve_opt->excludes(series_opt);
  app.add_option("--pmin", opt.pmin, "Smallest prime to certify")->capture_default_str();
  app.add_option("--pmax", opt.pmax, "Largest prime to certify")->capture_default_str();
  app.add_option("--aux-primes", opt.aux_primes, "Number of auxiliary primes for the torsion multiple")
      ->capture_default_str();
  app.add_option("--report", opt.report, "Report format")
      ->check(CLI::IsMember({"json", "text", "both"}))
      ->capture_default_str();
  app.add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
  app.add_option("--prec-p", opt.prec_p, "p-adic precision (digits)")->check(CLI::Range(1, 10000))->capture_default_str();
  app.add_option("--prec-x", opt.prec_x, "Power-series truncation degree")->check(CLI::Range(1, 100000))->capture_default_str();
  app.add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
  app.add_flag("--allow-large-range", opt.allow_large_range, "Permit --pmax above 10^6");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }
  if (opt.curve_path.empty() && opt.series_path.empty()) {
    std::cerr << "error: one of --curve or --series is required\n" << app.help();
    return kExitValidation;
  }

  try {
    return opt.series_path.empty() ? run_scan(opt) : run_series(opt);
  } catch (const InconsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kExitInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
