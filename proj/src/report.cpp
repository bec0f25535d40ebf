#include "pxlap/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace pxlap {

namespace {

using nlohmann::json;

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

// JSON has no inf/nan literals; encode them as strings instead of null.
json num(double v) {
  if (std::isnan(v)) return json("nan");
  if (std::isinf(v)) return json(v > 0 ? "inf" : "-inf");
  return json(v);
}

}  // namespace

std::string field_to_csv(const ScalarField& u) {
  const Grid& g = *u.grid;
  std::string out = g.dimension() == 2 ? "x,y,value\n" : "x,value\n";
  for (int n = 0; n < u.size(); ++n) {
    append_number(out, g.coord(n, 0));
    if (g.dimension() == 2) {
      out += ',';
      append_number(out, g.coord(n, 1));
    }
    out += ',';
    append_number(out, u.values[n]);
    out += '\n';
  }
  return out;
}

ScalarField field_from_csv(const std::string& text, GridPtr grid) {
  const int dim = grid->dimension();
  ScalarField u(grid, false);
  size_t pos = text.find('\n');
  if (pos == std::string::npos) throw std::runtime_error("csv: missing header");
  ++pos;
  int row = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    if (eol > pos) {
      if (row >= u.size()) throw std::runtime_error("csv: more rows than grid nodes");
      const char* s = text.c_str() + pos;
      char* end = nullptr;
      double last = 0.0;
      for (int col = 0; col <= dim; ++col) {
        last = std::strtod(s, &end);
        if (end == s) throw std::runtime_error("csv: malformed number");
        s = end;
        if (col < dim) {
          if (*s != ',') throw std::runtime_error("csv: expected comma");
          ++s;
        }
      }
      while (*s == '\r' || *s == ' ') ++s;
      if (s != text.c_str() + eol)
        throw std::runtime_error("csv: column count does not match the grid");
      u.values[row++] = last;
    }
    pos = eol + 1;
  }
  if (row != u.size()) throw std::runtime_error("csv: row count does not match the grid");
  bool boundary_zero = true;
  for (int n = 0; n < u.size(); ++n)
    if (grid->is_boundary(n) && u.values[n] != 0.0) boundary_zero = false;
  u.dirichlet = boundary_zero;
  return u;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("short write to '" + path + "'");
}

json to_json(const EnergyBreakdown& e) {
  return {{"dirichlet", num(e.dirichlet)},
          {"critical", num(e.critical)},
          {"perturbation", num(e.perturbation)},
          {"total", num(e.total)}};
}

json to_json(const ThresholdInfo& t) {
  return {{"critical_set_empty", t.critical_empty},
          {"q_inf_critical", num(t.q_inf_critical)},
          {"sobolev_constant", num(t.S)},
          {"value", num(t.value)},
          {"degenerate_gap", t.degenerate_gap}};
}

json to_json(const EmbeddingConstants& e) {
  return {{"S", num(e.S)},
          {"E_r", num(e.E_r)},
          {"E_s", num(e.E_s)},
          {"E_q", num(e.E_q)},
          {"warning", e.warning}};
}

json to_json(const F2Report& r) {
  return {{"samples", r.samples},
          {"violations", r.violations},
          {"worst_slack", r.worst_slack},
          {"pass", r.pass}};
}

json to_json(const LemmaAudit& a) {
  return {{"nehari", {{"lhs", num(a.nehari_lhs)},
                      {"rhs", num(a.nehari_rhs)},
                      {"slack", num(a.nehari_slack)},
                      {"ok", a.identity_ok}}},
          {"sandwich", {{"lower", num(a.sandwich_lower)},
                        {"energy", num(a.energy_total)},
                        {"upper", num(a.sandwich_upper)},
                        {"ok", a.sandwich_ok}}},
          {"pairings", {{"phi1", num(a.pairing1)},
                        {"phi2", num(a.pairing2)},
                        {"ok", a.pairing_ok}}},
          {"gradient_lower_bound", {{"c", num(a.lower_bound_c)},
                                    {"norm_pos", num(a.grad_norm_pos)},
                                    {"norm_neg", num(a.grad_norm_neg)},
                                    {"ok", a.lower_bound_ok}}},
          {"pass", a.pass}};
}

json to_json(const CriticalPoint& cp) {
  json j = {{"status", to_string(cp.status)},
            {"sign_signature", to_string(cp.sign_signature)},
            {"iterations", cp.iterations},
            {"residual_norm", num(cp.residual_norm)},
            {"constraint_residuals",
             json::array({num(cp.constraint_residuals.first),
                          num(cp.constraint_residuals.second)})},
            {"energy", to_json(cp.energy)}};
  if (!cp.message.empty()) j["message"] = cp.message;
  return j;
}

json to_json(const ThreeSolutions& s) {
  json runs;
  const CriticalPoint* pts[3] = {&s.k1, &s.k2, &s.k3};
  const char* names[3] = {"K1", "K2", "K3"};
  for (int i = 0; i < 3; ++i) {
    runs[names[i]] = to_json(*pts[i]);
    runs[names[i]]["audit"] = to_json(s.audits[i]);
  }
  return {{"runs", runs},
          {"threshold", to_json(s.threshold)},
          {"embeddings", to_json(s.embeddings)},
          {"f2", to_json(s.f2)},
          {"min_pairwise_distance", num(s.min_pairwise_distance)},
          {"distinct", s.distinct},
          {"ok", s.ok},
          {"seconds", num(s.seconds)}};
}

}  // namespace pxlap
