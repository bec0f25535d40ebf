#pragma once

#include <functional>

#include "pxlap/exponent_field.hpp"

namespace pxlap {

// Lower order perturbation f(x,u) with primitive F and u-derivative f_u,
// together with the growth constants of the chain
//   c3*rho_r(u) <= c2*int F <= int f u <= c1*int f_u u^2 <= c4*rho_r(u).
// The pointwise laws are pluggable; the default family is
//   f(x,u) = |u|^{r(x)-2} u + (u_+)^{s(x)-1}.
struct Nonlinearity {
  ExponentField r, s;
  double c1, c2, c3, c4;
  bool positive_part_term = true;

  // (u, r(x), s(x)) -> value.  All three must describe the same law.
  std::function<double(double, double, double)> f_law, F_law, fu_law;

  // Default family with constants derived from termwise power bounds:
  //   c1 = 1.1 * max(1/(r^- - 1), 1/(s^- - 1))
  //   c2 = (p^+ + s^-) / 2        (must not exceed s^- or the second
  //                                inequality fails as the s-term dominates)
  //   c3 = 0.9 * c2 / r^+
  //   c4 = 2 * r^+
  static Nonlinearity example(ExponentField r, ExponentField s, double p_sup,
                              bool positive_part_term = true);
};

double f_eval(const Nonlinearity& nl, int node, double u);
double F_eval(const Nonlinearity& nl, int node, double u);
double f_u_eval(const Nonlinearity& nl, int node, double u);

}  // namespace pxlap
