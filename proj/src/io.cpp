#include "qcorr/io.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "qcorr/error.hpp"

namespace qcorr {

using nlohmann::json;

TwoQubitState StateDescriptor::state() const {
  if (const auto* w = std::get_if<WernerParams>(&spec)) return werner(*w);
  if (const auto* b = std::get_if<BellDiagonalParams>(&spec)) return bell_diagonal(*b);
  return TwoQubitState::from_matrix(std::get<CMat4>(spec));
}

std::optional<BellDiagonalParams> StateDescriptor::bell_params() const {
  if (const auto* w = std::get_if<WernerParams>(&spec)) return w->as_bell_diagonal();
  if (const auto* b = std::get_if<BellDiagonalParams>(&spec)) return *b;
  return std::nullopt;
}

namespace {

double number_at(const json& j, const char* what) {
  if (!j.is_number()) throw DomainError(std::string("state descriptor: ") + what + " must be a number");
  return j.get<double>();
}

}  // namespace

StateDescriptor parse_state(const json& j) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
    throw DomainError("state descriptor must be an object with a \"family\" string");
  const std::string family = j["family"].get<std::string>();
  if (family == "werner") {
    if (!j.contains("z")) throw DomainError("werner descriptor needs \"z\"");
    return {WernerParams{number_at(j["z"], "z")}};
  }
  if (family == "bell_diagonal") {
    if (!j.contains("c") || !j["c"].is_array() || j["c"].size() != 3)
      throw DomainError("bell_diagonal descriptor needs \"c\": [c1, c2, c3]");
    BellDiagonalParams p;
    for (int i = 0; i < 3; ++i) p.c[i] = number_at(j["c"][i], "c entry");
    return {p};
  }
  if (family == "raw") {
    if (!j.contains("matrix") || !j["matrix"].is_array() || j["matrix"].size() != 16)
      throw DomainError("raw descriptor needs \"matrix\" with 16 [re, im] entries");
    CMat4 m;
    for (std::size_t k = 0; k < 16; ++k) {
      const json& e = j["matrix"][k];
      if (!e.is_array() || e.size() != 2) throw DomainError("raw matrix entries must be [re, im] pairs");
      m.a[k] = cplx(number_at(e[0], "matrix entry"), number_at(e[1], "matrix entry"));
    }
    return {m};
  }
  throw DomainError("unknown state family \"" + family + "\"");
}

StateDescriptor parse_state(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("state descriptor is not valid JSON: ") + e.what());
  }
  return parse_state(j);
}

json to_json(const StateDescriptor& s) {
  if (const auto* w = std::get_if<WernerParams>(&s.spec)) return {{"family", "werner"}, {"z", w->z}};
  if (const auto* b = std::get_if<BellDiagonalParams>(&s.spec))
    return {{"family", "bell_diagonal"}, {"c", {b->c[0], b->c[1], b->c[2]}}};
  json entries = json::array();
  for (const cplx& v : std::get<CMat4>(s.spec).a) entries.push_back({v.real(), v.imag()});
  return {{"family", "raw"}, {"matrix", entries}};
}

json to_json(const MeasureResult& r) {
  json j{{"measure", std::string(to_string(r.kind))},
         {"value", r.value},
         {"method", std::string(to_string(r.method))},
         {"x", r.x ? json(*r.x) : json("inf")},
         {"projective_substituted", r.projective_substituted},
         {"clamped", r.clamped}};
  if (r.optimal_basis) {
    const auto& n = r.optimal_basis->n();
    j["optimal_basis"] = {n[0], n[1], n[2]};
  }
  if (r.trace) {
    j["optimizer"] = {{"grid_evaluations", r.trace->grid_evaluations},
                      {"iterations", r.trace->iterations},
                      {"final_tolerance", r.trace->final_tolerance},
                      {"converged", r.trace->converged}};
  }
  return j;
}

MeasureResult result_from_json(const json& j) {
  try {
    MeasureResult r;
    const auto kind = parse_measure_kind(j.at("measure").get<std::string>());
    if (!kind) throw DomainError("unknown measure in result");
    r.kind = *kind;
    r.value = j.at("value").get<double>();
    const std::string method = j.at("method").get<std::string>();
    if (method == "closed_form")
      r.method = Method::ClosedForm;
    else if (method == "numeric")
      r.method = Method::Numeric;
    else if (method == "fixed_basis")
      r.method = Method::FixedBasis;
    else
      throw DomainError("unknown method \"" + method + "\" in result");
    if (j.at("x").is_number()) r.x = j.at("x").get<double>();
    r.projective_substituted = j.value("projective_substituted", false);
    r.clamped = j.value("clamped", false);
    if (j.contains("optimal_basis")) {
      const auto& n = j["optimal_basis"];
      r.optimal_basis = MeasurementBasis::normalized({n.at(0).get<double>(), n.at(1).get<double>(), n.at(2).get<double>()});
    }
    if (j.contains("optimizer")) {
      const auto& o = j["optimizer"];
      r.trace = OptimizerTrace{o.at("grid_evaluations").get<int>(), o.at("iterations").get<int>(),
                               o.at("final_tolerance").get<double>(), o.at("converged").get<bool>()};
    }
    return r;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed result JSON: ") + e.what());
  }
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
}

namespace {
json number_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}
}  // namespace

json to_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[t.header[i]] = number_json(row[i]);
    rows.push_back(r);
  }
  return {{"columns", t.header}, {"rows", rows}};
}

void write_surface_csv(std::ostream& os, const SurfacePointCloud& cloud, bool with_edges) {
  os << "c1,c2,c3,residual" << (with_edges ? ",i,j,k,axis" : "") << '\n';
  for (const SurfacePoint& p : cloud.points) {
    os << format_number(p.c.c[0]) << ',' << format_number(p.c.c[1]) << ',' << format_number(p.c.c[2]) << ','
       << format_number(p.residual);
    if (with_edges) os << ',' << p.edge.i << ',' << p.edge.j << ',' << p.edge.k << ',' << p.edge.axis;
    os << '\n';
  }
}

json to_json(const SurfacePointCloud& cloud, bool with_edges) {
  json pts = json::array();
  for (const SurfacePoint& p : cloud.points) {
    json e{{"c", {p.c.c[0], p.c.c[1], p.c.c[2]}}, {"residual", p.residual}};
    if (with_edges) e["edge"] = {p.edge.i, p.edge.j, p.edge.k, p.edge.axis};
    pts.push_back(e);
  }
  const auto& d = cloud.diagnostics;
  return {{"points", pts},
          {"diagnostics",
           {{"physical_vertices", d.physical_vertices},
            {"sign_changes", d.sign_changes},
            {"unconverged", d.unconverged},
            {"oracle_checks", d.oracle_checks},
            {"max_oracle_deviation", d.max_oracle_deviation}}}};
}

}  // namespace qcorr
