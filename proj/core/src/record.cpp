#include "towercert/record.hpp"

#include <initializer_list>
#include <limits>

#include <json.hpp>

#include "towercert/errors.hpp"

namespace towercert::ingest {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) fail(path.empty() ? key : path + "." + key, "unknown field");
  }
}

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::int64_t get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    fail(path, "integer out of range");
  }
  return v.get<std::int64_t>();
}

std::uint64_t get_uint(const json& v, const std::string& path) {
  const std::int64_t x = get_int(v, path);
  if (x < 0) fail(path, "expected a nonnegative integer");
  return static_cast<std::uint64_t>(x);
}

std::uint64_t get_positive(const json& v, const std::string& path) {
  const std::uint64_t x = get_uint(v, path);
  if (x == 0) fail(path, "expected a positive integer");
  return x;
}

hyper::IntPoly get_coeffs(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of integers");
  hyper::IntPoly out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_int(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

template <typename Enum>
Enum get_enum(const json& v, const std::string& path,
              std::initializer_list<std::pair<std::string_view, Enum>> options) {
  if (!v.is_string()) fail(path, "expected a string");
  const auto s = v.get<std::string>();
  std::string listing;
  for (const auto& [name, value] : options) {
    if (s == name) return value;
    listing += (listing.empty() ? "" : ", ") + std::string(name);
  }
  fail(path, "unknown value \"" + s + "\" (expected one of: " + listing + ")");
}

certify::ArithmeticInvariants parse_invariants(const json& obj, const std::string& path) {
  using namespace certify;
  reject_unknown_keys(obj, path,
                      {"rank", "torsion_order", "torsion_provenance", "sha_order", "sha_provenance",
                       "tamagawa", "exceptional_primes", "n0_override"});
  ArithmeticInvariants inv;
  if (obj.contains("rank")) inv.rank = get_uint(obj["rank"], join(path, "rank"));
  if (obj.contains("torsion_order")) {
    inv.torsion_order = get_positive(obj["torsion_order"], join(path, "torsion_order"));
    if (!obj.contains("torsion_provenance")) {
      fail(join(path, "torsion_provenance"), "required when torsion_order is given");
    }
  }
  if (obj.contains("torsion_provenance")) {
    if (!inv.torsion_order) fail(join(path, "torsion_provenance"), "given without torsion_order");
    inv.torsion_provenance = get_enum<TorsionProvenance>(
        obj["torsion_provenance"], join(path, "torsion_provenance"),
        {{"proved", TorsionProvenance::kProved}, {"computed-multiple", TorsionProvenance::kComputedMultiple}});
  }
  if (obj.contains("sha_provenance")) {
    inv.sha_provenance = get_enum<ShaProvenance>(obj["sha_provenance"], join(path, "sha_provenance"),
                                                 {{"proved", ShaProvenance::kProved},
                                                  {"analytic-conjectural", ShaProvenance::kAnalyticConjectural},
                                                  {"unknown", ShaProvenance::kUnknown}});
  }
  if (obj.contains("sha_order")) inv.sha_order = get_positive(obj["sha_order"], join(path, "sha_order"));
  if (obj.contains("tamagawa")) {
    const std::string tpath = join(path, "tamagawa");
    const json& t = obj["tamagawa"];
    if (!t.is_object()) fail(tpath, "expected an object mapping primes to Tamagawa numbers");
    std::map<std::uint64_t, std::uint64_t> map;
    for (const auto& [key, value] : t.items()) {
      std::uint64_t v = 0;
      try {
        std::size_t used = 0;
        v = std::stoull(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        fail(join(tpath, key), "key is not a prime number");
      }
      if (!map.emplace(v, get_positive(value, join(tpath, key))).second) {
        fail(join(tpath, key), "duplicate prime");
      }
    }
    inv.tamagawa = std::move(map);
  }
  if (obj.contains("exceptional_primes")) {
    const std::string epath = join(path, "exceptional_primes");
    const json& arr = obj["exceptional_primes"];
    if (!arr.is_array()) fail(epath, "expected an array");
    std::vector<ExceptionalPrimeEntry> entries;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string ipath = epath + "[" + std::to_string(i) + "]";
      reject_unknown_keys(arr[i], ipath, {"ell", "torsion_over_division_field"});
      if (!arr[i].contains("ell") || !arr[i].contains("torsion_over_division_field")) {
        fail(ipath, "requires ell and torsion_over_division_field");
      }
      entries.push_back({get_positive(arr[i]["ell"], join(ipath, "ell")),
                         get_positive(arr[i]["torsion_over_division_field"],
                                      join(ipath, "torsion_over_division_field"))});
    }
    inv.exceptional_primes = std::move(entries);
  }
  if (obj.contains("n0_override")) inv.n0_override = get_uint(obj["n0_override"], join(path, "n0_override"));
  return inv;
}

json invariants_to_json(const certify::ArithmeticInvariants& inv) {
  using namespace certify;
  json out = json::object();
  if (inv.rank) out["rank"] = *inv.rank;
  if (inv.torsion_order) {
    out["torsion_order"] = *inv.torsion_order;
    out["torsion_provenance"] = std::string(to_string(inv.torsion_provenance));
  }
  if (inv.sha_order) out["sha_order"] = *inv.sha_order;
  out["sha_provenance"] = std::string(to_string(inv.sha_provenance));
  if (inv.tamagawa) {
    json t = json::object();
    for (const auto& [v, c] : *inv.tamagawa) t[std::to_string(v)] = c;
    out["tamagawa"] = t;
  }
  if (inv.exceptional_primes) {
    json arr = json::array();
    for (const auto& e : *inv.exceptional_primes) {
      arr.push_back({{"ell", e.ell}, {"torsion_over_division_field", e.torsion_over_division_field}});
    }
    out["exceptional_primes"] = arr;
  }
  if (inv.n0_override) out["n0_override"] = *inv.n0_override;
  return out;
}

}  // namespace

CurveRecord parse_record(std::string_view text) {
  const json doc = parse_json(text);
  reject_unknown_keys(doc, "", {"label", "genus", "f_coeffs", "h_coeffs", "invariants"});
  if (!doc.contains("genus")) fail("genus", "required");
  if (!doc.contains("f_coeffs")) fail("f_coeffs", "required");
  std::string label;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) fail("label", "expected a string");
    label = doc["label"].get<std::string>();
  }
  const std::int64_t genus = get_int(doc["genus"], "genus");
  if (genus < 2) fail("genus", "must be at least 2, got " + std::to_string(genus));
  if (genus > 64) fail("genus", "unreasonably large genus " + std::to_string(genus));
  hyper::IntPoly f = get_coeffs(doc["f_coeffs"], "f_coeffs");
  hyper::IntPoly h = doc.contains("h_coeffs") ? get_coeffs(doc["h_coeffs"], "h_coeffs") : hyper::IntPoly{};

  std::optional<hyper::CurveModel> curve;
  try {
    curve.emplace(static_cast<int>(genus), std::move(f), std::move(h), std::move(label));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("model: ") + e.what());
  }
  certify::ArithmeticInvariants inv;
  if (doc.contains("invariants")) inv = parse_invariants(doc["invariants"], "invariants");
  certify::validate(inv, *curve);
  return CurveRecord{std::move(*curve), std::move(inv)};
}

std::string render_record(const CurveRecord& record) {
  json doc;
  doc["label"] = record.curve.label();
  doc["genus"] = record.curve.genus();
  doc["f_coeffs"] = record.curve.f();
  doc["h_coeffs"] = record.curve.h();
  doc["invariants"] = invariants_to_json(record.invariants);
  return doc.dump(2) + "\n";
}

lambda::PadicSeries parse_series(std::string_view text, int default_prec_p, int default_prec_x) {
  const json doc = parse_json(text);
  reject_unknown_keys(doc, "", {"p", "prec_p", "prec_x", "coeffs"});
  if (!doc.contains("p")) fail("p", "required");
  if (!doc.contains("coeffs")) fail("coeffs", "required");
  const std::uint64_t p = get_uint(doc["p"], "p");
  const int prec_p = doc.contains("prec_p") ? static_cast<int>(get_positive(doc["prec_p"], "prec_p")) : default_prec_p;
  const int prec_x = doc.contains("prec_x") ? static_cast<int>(get_positive(doc["prec_x"], "prec_x")) : default_prec_x;
  const json& arr = doc["coeffs"];
  if (!arr.is_array()) fail("coeffs", "expected an array");
  std::vector<lambda::BigInt> coeffs;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "coeffs[" + std::to_string(i) + "]";
    if (arr[i].is_string()) {
      try {
        coeffs.emplace_back(arr[i].get<std::string>());
      } catch (const std::exception&) {
        fail(path, "not a decimal integer");
      }
    } else {
      coeffs.emplace_back(get_int(arr[i], path));
    }
  }
  return lambda::PadicSeries(p, prec_p, prec_x, coeffs);
}

}  // namespace towercert::ingest
