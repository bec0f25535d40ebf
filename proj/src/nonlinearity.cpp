#include "pxlap/nonlinearity.hpp"

#include <cmath>
#include <stdexcept>

namespace pxlap {

Nonlinearity Nonlinearity::example(ExponentField r, ExponentField s, double p_sup,
                                   bool positive_part_term) {
  Nonlinearity nl{std::move(r), std::move(s), 0, 0, 0, 0, positive_part_term, {}, {}, {}};
  if (!(nl.r.inf() > 2.0) || !(nl.s.inf() > 2.0))
    throw std::invalid_argument("example nonlinearity needs r, s > 2");
  nl.c1 = 1.1 * std::max(1.0 / (nl.r.inf() - 1.0), 1.0 / (nl.s.inf() - 1.0));
  nl.c2 = 0.5 * (p_sup + nl.s.inf());
  nl.c3 = 0.9 * nl.c2 / nl.r.sup();
  nl.c4 = 2.0 * nl.r.sup();

  if (positive_part_term) {
    nl.f_law = [](double u, double rv, double sv) {
      double v = std::pow(std::fabs(u), rv - 2.0) * u;
      if (u > 0.0) v += std::pow(u, sv - 1.0);
      return v;
    };
    nl.F_law = [](double u, double rv, double sv) {
      double v = std::pow(std::fabs(u), rv) / rv;
      if (u > 0.0) v += std::pow(u, sv) / sv;
      return v;
    };
    nl.fu_law = [](double u, double rv, double sv) {
      double v = (rv - 1.0) * std::pow(std::fabs(u), rv - 2.0);
      if (u > 0.0) v += (sv - 1.0) * std::pow(u, sv - 2.0);
      return v;
    };
  } else {
    nl.f_law = [](double u, double rv, double) {
      return std::pow(std::fabs(u), rv - 2.0) * u;
    };
    nl.F_law = [](double u, double rv, double) { return std::pow(std::fabs(u), rv) / rv; };
    nl.fu_law = [](double u, double rv, double) {
      return (rv - 1.0) * std::pow(std::fabs(u), rv - 2.0);
    };
  }
  return nl;
}

double f_eval(const Nonlinearity& nl, int node, double u) {
  return nl.f_law(u, nl.r[node], nl.s[node]);
}

double F_eval(const Nonlinearity& nl, int node, double u) {
  return nl.F_law(u, nl.r[node], nl.s[node]);
}

double f_u_eval(const Nonlinearity& nl, int node, double u) {
  return nl.fu_law(u, nl.r[node], nl.s[node]);
}

}  // namespace pxlap
