#include "hlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace hlab {

namespace {

/// JSON has no infinities; they are written as strings.
Json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

Json vector_json(const RealVector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(number(v(i)));
  return a;
}

}  // namespace

Json to_json(const Region& r) { return Json(r.sites()); }

Json to_json(const Check& c) {
  return Json{{"name", c.name},   {"lhs", number(c.lhs)},     {"rhs", number(c.rhs)},
              {"margin", number(c.margin())}, {"slack", c.slack}, {"ref", c.ref},
              {"asserted", c.asserted}, {"passed", c.passed()}};
}

Json to_json(const CheckList& checks) {
  Json a = Json::array();
  for (const Check& c : checks.items()) a.push_back(to_json(c));
  return a;
}

Json to_json(const EntropyReport& r) {
  Json j{{"region", to_json(r.region)},
         {"s", number(r.s)},
         {"p_x", number(r.p_x)},
         {"schmidt", vector_json(r.schmidt.lambdas)},
         {"max_entropy", number(r.max_entropy)}};
  if (r.bound_rhs) j["bound_rhs"] = number(*r.bound_rhs);
  return j;
}

Json to_json(const EntropyBound& b) {
  return Json{{"n0", b.n0},
              {"ratio", number(b.ratio)},
              {"c3_mid", number(b.c3_mid)},
              {"c3p", number(b.c3p)},
              {"c4p", number(b.c4p)},
              {"c5p", number(b.c5p)},
              {"c4", number(b.c4)},
              {"c3_final", number(b.c3_final)},
              {"m0", b.m0},
              {"with_m0", number(b.with_m0)},
              {"intermediate", number(b.intermediate)},
              {"value", number(b.value)},
              {"final_form_dominates", b.final_form_dominates}};
}

Json to_json(const SigmaVerdict& v) {
  return Json{{"trace", number(v.trace)},       {"overlap", number(v.overlap)}, {"head_sum", number(v.head_sum)},
              {"epsilon", number(v.epsilon)},   {"p_x", number(v.p_x)},         {"checks", to_json(v.checks)},
              {"passed", v.passed()}};
}

const char* to_string(DivisionStatus s) {
  switch (s) {
    case DivisionStatus::Passed: return "passed";
    case DivisionStatus::Failed: return "failed";
    case DivisionStatus::PreconditionNotMet: return "precondition_not_met";
  }
  return "?";
}

Json to_json(const DivisionVerdict& v) {
  return Json{{"status", to_string(v.status)},
              {"reason", v.reason},
              {"s_y", number(v.s_y)},
              {"s_y_in", number(v.s_y_in)},
              {"s_y_out", number(v.s_y_out)},
              {"mutual_information", number(v.mutual_information)},
              {"p_x", number(v.p_x)},
              {"epsilon", number(v.epsilon)},
              {"omega_ob", number(v.omega_ob)},
              {"product_ob", number(v.product_ob)},
              {"pinched", number(v.pinched)},
              {"rhs", number(v.rhs)},
              {"checks", to_json(v.checks)}};
}

Json to_json(const WindowSearch& w) {
  Json c = Json::array();
  for (const auto& k : w.candidates) c.push_back(Json{{"a0", k.a0}, {"b0", k.b0}, {"p", number(k.p)}});
  return Json{{"a0", w.a0}, {"b0", w.b0}, {"p", number(w.p)}, {"threshold", number(w.threshold)},
              {"met", w.met}, {"candidates", c}};
}

Json to_json(const AreaSweep& s) {
  Json r = Json::array();
  for (const auto& e : s.reports) r.push_back(to_json(e));
  return Json{{"cuts", s.cuts}, {"reports", r}, {"saturation", number(s.saturation)}};
}

template <typename Scalar>
Json to_json(const FactorizationResult<Scalar>& r) {
  Json info = Json::object();
  for (const auto& [k, v] : r.info) info[k] = number(v);
  return Json{{"x", to_json(r.x)},
              {"volume", to_json(r.volume.region)},
              {"ell", r.ell},
              {"alpha", number(r.alpha)},
              {"gamma", number(r.gamma)},
              {"xi", number(r.xi)},
              {"eta", number(r.eta)},
              {"defect", number(r.defect)},
              {"defect_pos", number(r.defect_pos)},
              {"positivized", r.positivized},
              {"supports",
               Json{{"m_r", to_json(r.m_r.support())},
                    {"m_b", to_json(r.m_b.support())},
                    {"m_l", to_json(r.m_l.support())},
                    {"o_b", to_json(r.o_b.support())}}},
              {"info", info},
              {"diagnostics", to_json(r.diagnostics)},
              {"passed", r.diagnostics.all_passed()}};
}

template Json to_json<double>(const FactorizationResult<double>&);
template Json to_json<cplx>(const FactorizationResult<cplx>&);

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ConfigInvalid, "cannot write " + path);
  out << j.dump(2) << '\n';
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

std::string CsvTable::format(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw Error(ErrorCode::DimensionMismatch, "row width differs from header");
  rows_.push_back(std::move(cells));
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format(v));
  add_row(std::move(cells));
}

std::string CsvTable::str() const {
  std::string s;
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) s += ',';
      s += cells[i];
    }
    s += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return s;
}

void CsvTable::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ConfigInvalid, "cannot write " + path);
  out << str();
}

}  // namespace hlab
