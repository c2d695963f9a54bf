#include "theta_quartic/json_io.hpp"

#include <fstream>

#include "theta_quartic/errors.hpp"

namespace tq::json_io {

json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const Characteristic& m) { return {{"mp", m.mp()}, {"mpp", m.mpp()}}; }

json to_json(const Vector3c& v) { return json::array({to_json(v(0)), to_json(v(1)), to_json(v(2))}); }

json to_json(const Matrix3c& m) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) rows.push_back(to_json(Vector3c(m.row(r).transpose())));
  return rows;
}

json to_json(const PeriodMatrix& tau) { return {{"tau", to_json(tau.tau())}}; }

json to_json(const QuarticCurve& f) {
  json out = json::array();
  for (const Complex& c : f.coeffs()) out.push_back(to_json(c));
  return out;
}

json to_json(const BitangencyReport& r, QuadForm q) {
  json contacts = json::array();
  for (const Vector3c& p : r.contact_points) contacts.push_back(to_json(p));
  return {{"q", to_json(Characteristic(q))},
          {"is_bitangent", r.is_bitangent},
          {"residual", r.residual},
          {"contacts", contacts},
          {"near_flex", r.near_flex}};
}

json frame_to_json(const PipelineResult& result) {
  const AronholdFrame& f = result.frame;
  json aronhold = json::array();
  for (QuadForm q : f.system.forms()) aronhold.push_back(to_json(Characteristic(q)));
  json lines = json::array();
  for (const LabelledLine& l : result.bitangents)
    lines.push_back({{"q", to_json(Characteristic(l.form))}, {"label", l.label}, {"line", to_json(l.line.covector())}});
  json xi = json::array();
  for (const ProjLine& l : f.xi) xi.push_back(to_json(l.covector()));
  return {{"aronhold", aronhold},         {"eps", f.eps},         {"a", to_json(f.a)},
          {"bitangents", lines},          {"quartic", to_json(result.quartic)},
          {"xi", xi},                     {"k", to_json(f.k)},
          {"lambda", to_json(f.lambda)}};
}

json report_to_json(const PipelineResult& result) {
  json lines = json::array();
  for (std::size_t i = 0; i < result.reports.size(); ++i)
    lines.push_back(to_json(result.reports[i], result.bitangents[i].form));
  return {{"lines", lines},
          {"summary", {{"pass", result.pass}, {"fail", result.fail}, {"max_residual", result.max_residual}}}};
}

namespace {

double number(const json& j, const char* field) {
  if (!j.is_number()) throw InputError(std::string("expected a number for \"") + field + "\"");
  return j.get<double>();
}

Characteristic::Half half(const json& j, const char* field) {
  if (!j.is_array() || j.size() != 3) throw InputError(std::string("\"") + field + "\" must be an array of 3 integers");
  Characteristic::Half h;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number_integer()) throw InputError(std::string("\"") + field + "\" must contain integers");
    h[i] = j[i].get<int>();
  }
  return h;
}

}  // namespace

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw InputError("complex numbers must be objects {\"re\": x, \"im\": y}");
  return {number(j["re"], "re"), number(j["im"], "im")};
}

Characteristic characteristic_from_json(const json& j) {
  if (!j.is_object() || !j.contains("mp") || !j.contains("mpp"))
    throw InputError("characteristics must be objects {\"mp\": [...], \"mpp\": [...]}");
  return Characteristic(half(j["mp"], "mp"), half(j["mpp"], "mpp"));
}

Matrix3c tau_from_json(const json& j) {
  if (!j.is_object() || !j.contains("tau")) throw InputError("missing \"tau\" field");
  const json& rows = j["tau"];
  if (!rows.is_array() || rows.size() != 3) throw InputError("\"tau\" must be a 3x3 array");
  Matrix3c m;
  for (int r = 0; r < 3; ++r) {
    if (!rows[r].is_array() || rows[r].size() != 3) throw InputError("\"tau\" must be a 3x3 array");
    for (int c = 0; c < 3; ++c) m(r, c) = complex_from_json(rows[r][c]);
  }
  return m;
}

Matrix3c read_tau(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return tau_from_json(j);
}

Matrix3c read_tau_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_tau(in);
}

}  // namespace tq::json_io
