#pragma once

#include "pxlap/discretization.hpp"
#include "pxlap/exponent_field.hpp"
#include "pxlap/fields.hpp"

namespace pxlap {

// Modular of a nodal field: trapezoidal quadrature of |u|^{e(x)}.
double modular(const Discretization& disc, const ScalarField& u, const ExponentField& e);

// Modular of the discrete gradient: corner quadrature of |grad u|^{p(x)}.
// Uses the same gradient rule as the energy, so Nehari identities close.
double gradient_modular(const Discretization& disc, const ScalarField& u,
                        const ExponentField& p);

// Luxemburg norm inf{ s > 0 : modular(u/s) <= 1 }.  The modular is strictly
// decreasing in s, so the norm is the unique root of modular(u/s) = 1;
// bracketed bisection down to rel_tol relative width plus two safeguarded
// secant refinements.  Returns 0 for the zero field.
double luxemburg_norm(const Discretization& disc, const ScalarField& u,
                      const ExponentField& e, double rel_tol = 1e-10);

double gradient_luxemburg_norm(const Discretization& disc, const ScalarField& u,
                               const ExponentField& p, double rel_tol = 1e-10);

struct HolderCheck {
  double lhs;  // integral of |f g|
  double rhs;  // 2 ||f||_p ||g||_{p'}
  bool ok;     // lhs <= rhs
};

// Norm-conjugate Holder inequality with the classical constant
// 1/p^- + 1/(p')^- <= 2.  conj defaults to the pointwise conjugate of p; a
// non-conjugate field may be injected to exercise the violation path.
HolderCheck holder_check(const Discretization& disc, const ScalarField& f,
                         const ScalarField& g, const ExponentField& p,
                         const ExponentField* conj = nullptr);

// ||u||_{p(x)} / ||grad u||_{p(x)}; scale invariant.
double poincare_ratio(const Discretization& disc, const ScalarField& u,
                      const ExponentField& p);

}  // namespace pxlap
