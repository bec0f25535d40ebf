#pragma once

#include <stdexcept>
#include <utility>

#include "pxlap/energy.hpp"
#include "pxlap/problem.hpp"

namespace pxlap {

enum class ManifoldTag { K1 = 1, K2 = 2, K3 = 3 };

class ManifoldDegeneracy : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class FiberingFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::pair<ScalarField, ScalarField> sign_split(const ScalarField& u);

// A = int |grad w|^p, B = int |w|^q, C = int |w|^r for a one-signed profile.
struct FiberCoefficients {
  double A, B, C;
};
FiberCoefficients fiber_coefficients(const Problem& prob, const ScalarField& w);

// Upper bracket seed for the fibering root: with X = A/(c3*lambda*C) the value
// max(X^{1/(r+-p-)}, X^{1/(r--p+)}) puts the constraint below zero; it is
// doubled further if the sign has not flipped yet.
double fiber_bracket_seed(const Problem& prob, const FiberCoefficients& fc);

struct FiberResult {
  double t = 0.0;
  double residual = 0.0;   // constraint value at t
  double scale = 0.0;      // max(A,B), the residual tolerance reference
  int evaluations = 0;
};

// Smallest positive root of phi1(t*w0) = 0 for w0 >= 0, or of phi2(t*w0) = 0
// for w0 <= 0, found by a geometric sweep from zero followed by safeguarded
// bisection/secant.  hint, when positive, seeds the bracket with the root of
// a nearby profile.  Throws FiberingFailure when no root exists on the sweep.
FiberResult fibering_root(const Problem& prob, const ScalarField& w0, double hint = 0.0);

// Independent fibering scales for a pair of nodewise-disjoint one-signed
// profiles; the returned field t_pos*w0 + t_neg*w1 lies on M3.
struct M3Projection {
  double t_pos, t_neg;
  ScalarField u;
  FiberResult pos, neg;
};
M3Projection project_to_M3(const Problem& prob, const ScalarField& w0, const ScalarField& w1);

struct MembershipCheck {
  bool ok = false;
  bool sign_ok = false;
  double phi1 = 0.0, phi2 = 0.0;
  double scale1 = 0.0, scale2 = 0.0;  // max(A,B) of the respective part
  double mass_pos = 0.0, mass_neg = 0.0;
};

// K-membership: the constraint residuals of the active sign parts vanish
// within rel_tol * max(A,B), the parts carry mass, and for K1/K2 the field is
// one-signed.  rel_tol <= 0 uses the configured constraint tolerance.
MembershipCheck membership(const Problem& prob, const ScalarField& u, ManifoldTag tag,
                           double rel_tol = 0.0);

// Nodal dual vector of the constraint gradient, which = 1 for phi1, 2 for phi2.
ScalarField constraint_gradient(const Problem& prob, const ScalarField& u, int which);

// Pairing of the constraint gradient with the radial direction of its sign
// part: <phi1'(u), u+> resp. <phi2'(u), -u->.  Strictly negative at manifold
// points; this is what makes the tangent decomposition solvable.
double constraint_gradient_pairing(const Problem& prob, const ScalarField& u, int which);

// Removes the radial components from v: v1 = v - alpha*u+ (+ beta*u- for K3)
// with the coefficients chosen so <phi_i'(u), v1> = 0 for the active
// constraints.  Throws ManifoldDegeneracy when a radial pairing degenerates.
ScalarField tangent_project(const Problem& prob, const ScalarField& u, const ScalarField& v,
                            ManifoldTag tag);

}  // namespace pxlap
