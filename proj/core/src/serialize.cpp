#include "fracperc/serialize.hpp"

#include <cmath>
#include <sstream>

#include "fracperc/errors.hpp"

namespace fracperc {

namespace {

Json rational_json(const Rational& r) { return to_string(r); }

Json big_json(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::int64_t get_int(const Json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number_integer()) throw InputError(std::string("field \"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

const Json& get_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw InputError(std::string("field \"") + key + "\" must be an array");
  return j.at(key);
}

Json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  return Json(x).dump();
}

Json to_json(const LineIFS& ifs) {
  Json t = Json::array();
  for (const auto& tr : ifs.translations()) t.push_back({tr.offset, tr.multiplicity});
  return {{"kind", "line"}, {"L", ifs.base()}, {"translations", t}};
}

Json to_json(const LatticeIFS& lattice) {
  return {{"kind", "lattice"}, {"d", lattice.dimension()}, {"L", lattice.base()}, {"cells", lattice.cells()}};
}

Json to_json(const TypeSystem& ts) {
  Json mats = Json::array();
  for (const auto& m : ts.matrices()) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(big_json(m(i, j)));
      rows.push_back(row);
    }
    mats.push_back(rows);
  }
  Json nu = Json::array();
  for (const auto& x : ts.nu()) nu.push_back(rational_json(x));
  return {{"basic_offsets", ts.basic_offsets()}, {"matrices", mats}, {"nu", nu}};
}

Json to_json(const SpectralEnclosure& e) {
  return {{"lower", rational_json(e.lower)},
          {"upper", rational_json(e.upper)},
          {"exact", e.exact},
          {"lower_float", to_double(e.lower)},
          {"upper_float", to_double(e.upper)}};
}

Json to_json(const PhaseReport& r) {
  Json thresholds = Json::array();
  for (const auto& t : r.thresholds())
    thresholds.push_back({{"name", t.name},
                          {"theorem", t.theorem},
                          {"value_exact", t.value_exact},
                          {"value_float", t.value_float},
                          {"witness", t.witness},
                          {"side", t.side}});

  Json interval = {{"threshold", r.interval_sufficient.threshold ? rational_json(*r.interval_sufficient.threshold) : Json()},
                   {"row_witness", r.interval_sufficient.search.witness
                                       ? Json(r.interval_sufficient.search.witness->to_string())
                                       : Json()},
                   {"witness_row", r.interval_sufficient.search.row ? Json(*r.interval_sufficient.search.row) : Json()},
                   {"patterns_visited", r.interval_sufficient.search.patterns_visited},
                   {"certified_absent", r.interval_sufficient.search.certified_absent},
                   {"budget_exhausted", r.interval_sufficient.search.budget_exhausted}};

  Json radii = Json::array();
  for (const auto& e : r.no_interval.radii) radii.push_back(to_json(e));
  Json no_interval = {{"threshold", r.no_interval.threshold ? to_json(*r.no_interval.threshold) : Json()},
                      {"digit", r.no_interval.digit ? Json(*r.no_interval.digit) : Json()},
                      {"spectral_radii", radii}};

  Json prods = Json::array();
  for (const auto& v : r.positive_measure.column_products) prods.push_back(big_json(v));
  Json positive = {{"threshold", r.positive_measure.threshold ? Json(r.positive_measure.threshold->to_string()) : Json()},
                   {"threshold_float", r.positive_measure.threshold ? Json(r.positive_measure.threshold->value()) : Json()},
                   {"column_products", prods},
                   {"per_matrix_row_ok", r.positive_measure.per_matrix_row_ok}};

  return {{"representation", r.representation},
          {"ifs", to_json(r.ifs)},
          {"type_count", r.type_count},
          {"p_extinction", rational_json(r.p_extinction)},
          {"p_dim1", rational_json(r.p_dim1)},
          {"thresholds", thresholds},
          {"interval_sufficient", interval},
          {"no_interval", no_interval},
          {"positive_measure", positive},
          {"zero_measure_estimate", r.zero_measure ? to_json(*r.zero_measure) : Json()},
          {"notes", r.notes}};
}

Json to_json(const PressureEstimate& p) {
  Json j = {{"t_float", p.t},
            {"n", p.n},
            {"value_float", p.value},
            {"method", p.method},
            {"std_error_float", p.std_error},
            {"words", p.words}};
  if (p.exact_sum) j["exact_sum"] = p.exact_sum->get_str();
  return j;
}

Json to_json(const LyapunovEstimate& l) {
  return {{"n", l.n},
          {"samples", l.samples},
          {"seed", l.seed},
          {"w_hat", finite_or_null(l.w_hat)},
          {"std_error", l.std_error},
          {"ci_low", finite_or_null(l.ci_low)},
          {"ci_high", finite_or_null(l.ci_high)},
          {"bound_logML", l.bound_log_ml},
          {"one_step_proxy", finite_or_null(l.one_step_proxy)},
          {"zero_norm_samples", l.zero_norm_samples},
          {"ci_method", "normal approximation (heuristic)"}};
}

Json to_json(const ZeroMeasureEstimate& z) {
  return {{"b_hat", z.b_hat},
          {"ci_low", z.ci_low},
          {"ci_high", z.ci_high},
          {"trivial_bound", z.trivial_bound},
          {"consistent", z.consistent},
          {"degenerate", z.degenerate}};
}

Json to_json(const VerificationReport& r) {
  return {{"step", rational_json(r.step)},
          {"points", r.points},
          {"minimum", rational_json(r.minimum)},
          {"minimum_float", to_double(r.minimum)},
          {"argmin", {rational_json(r.argmin.a), rational_json(r.argmin.b), rational_json(r.argmin.c)}},
          {"lipschitz_constant", 15},
          {"certified", r.certified}};
}

Json to_json(const InterfaceResult& r) {
  return {{"p", r.p},
          {"depth", r.depth},
          {"replicas", r.replicas},
          {"extinct", r.extinct},
          {"frequency", r.frequency},
          {"std_error", r.std_error},
          {"fixed_point", r.fixed_point},
          {"finite_depth", r.finite_depth},
          {"mean_offspring", r.mean_offspring}};
}

LineIFS line_ifs_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("IFS document must be a JSON object");
  if (j.value("kind", std::string()) != "line") throw InputError("expected \"kind\":\"line\"");
  const std::int64_t L = get_int(j, "L");
  std::vector<std::int64_t> raw;
  for (const auto& t : get_array(j, "translations")) {
    std::int64_t offset = 0;
    std::int64_t mult = 1;
    if (t.is_number_integer()) {
      offset = t.get<std::int64_t>();
    } else if (t.is_array() && t.size() == 2 && t[0].is_number_integer() && t[1].is_number_integer()) {
      offset = t[0].get<std::int64_t>();
      mult = t[1].get<std::int64_t>();
    } else {
      throw InputError("each translation must be an integer or a pair [offset, multiplicity]");
    }
    if (mult < 1) throw InputError("multiplicities must be >= 1");
    if (mult > 1000000) throw InputError("multiplicity too large");
    raw.insert(raw.end(), static_cast<std::size_t>(mult), offset);
  }
  return normalize(L, raw);
}

LatticeIFS lattice_ifs_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("IFS document must be a JSON object");
  if (j.value("kind", std::string()) != "lattice") throw InputError("expected \"kind\":\"lattice\"");
  const std::int64_t d = get_int(j, "d");
  const std::int64_t L = get_int(j, "L");
  std::vector<LatticeIFS::Cell> cells;
  for (const auto& c : get_array(j, "cells")) {
    if (!c.is_array()) throw InputError("each cell must be an array of integers");
    LatticeIFS::Cell cell;
    for (const auto& x : c) {
      if (!x.is_number_integer()) throw InputError("cell coordinates must be integers");
      cell.push_back(x.get<std::int64_t>());
    }
    cells.push_back(std::move(cell));
  }
  if (d < 1 || d > 16) throw InputError("lattice dimension out of range");
  return LatticeIFS(static_cast<int>(d), L, std::move(cells));
}

IfsDocument ifs_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw InputError("IFS document needs a string \"kind\" field");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "line") return line_ifs_from_json(j);
  if (kind == "lattice") return lattice_ifs_from_json(j);
  throw InputError("unknown IFS kind \"" + kind + "\"");
}

IfsDocument ifs_from_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  return ifs_from_json(j);
}

std::string thresholds_csv(const PhaseReport& report) {
  std::ostringstream os;
  os << "name,theorem,value_exact,value_float,side,witness\n";
  for (const auto& t : report.thresholds())
    os << csv_field(t.name) << ',' << csv_field(t.theorem) << ',' << csv_field(t.value_exact) << ','
       << format_double(t.value_float) << ',' << csv_field(t.side) << ',' << csv_field(t.witness) << '\n';
  return os.str();
}

std::string pressure_csv(const std::vector<PressureEstimate>& rows) {
  std::ostringstream os;
  os << "t,n,value,method,std_error\n";
  for (const auto& p : rows)
    os << format_double(p.t) << ',' << p.n << ',' << format_double(p.value) << ',' << p.method << ','
       << format_double(p.std_error) << '\n';
  return os.str();
}

std::string replicas_csv(const std::vector<ReplicaStats>& rows) {
  std::ostringstream os;
  os << "replica,retained_count,proj_measure,longest_run,extinct_level\n";
  for (const auto& r : rows)
    os << r.replica << ',' << r.retained_count << ',' << format_double(r.proj_measure) << ',' << r.longest_run << ','
       << (r.extinct_level ? std::to_string(*r.extinct_level) : std::string()) << '\n';
  return os.str();
}

}  // namespace fracperc
