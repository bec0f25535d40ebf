#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>

#include "pxlap/discretization.hpp"
#include "pxlap/exponent_field.hpp"
#include "pxlap/fields.hpp"
#include "pxlap/nonlinearity.hpp"

namespace pxlap {

struct Tolerances {
  double constraint = 1e-8;           // membership, relative to max(A,B)
  double residual = 1e-6;             // PS residual, absolute
  double energy = 1e-12;              // identity slack in reports
  double fibering = 1e-10;            // fibering residual, relative to max(A,B)
  double critical_set = 1e-9;         // |q - p*| tolerance
  double luxemburg = 1e-10;           // norm root, relative bracket width
  double grad_regularization = 1e-10; // eps in (|g|^2+eps^2)^((p-2)/2)
};

// Validated problem instance shared by the energy, manifold and solver layers.
struct Problem {
  GridPtr grid;
  std::shared_ptr<const Discretization> disc;
  ExponentField p, q;
  Nonlinearity nl;
  double lambda = 1.0;
  Tolerances tol;

  ScalarField seed_pos, seed_neg;

  // NaN requests an estimate by Rayleigh quotient minimization.
  double sobolev_constant = std::numeric_limits<double>::quiet_NaN();

  int max_iterations = 5000;
  int sobolev_starts = 8;
  int sobolev_iterations = 150;
  int f2_samples = 256;
  int suite_pairs = 1000;
  std::uint64_t rng_seed = 42;
  bool concurrent_runs = true;

  // Default seeds: disjoint bumps on the left/right halves of the domain.
  static Problem make(GridPtr grid, ExponentField p, ExponentField q, Nonlinearity nl,
                      double lambda);
};

// Checks the exponent chain p+ < r- <= r+ < q- <= q+, the pointwise orderings
// s < r <= q, the constant ranges, and (2d) q <= p* with p < N.  Throws
// std::invalid_argument carrying all violations found.
void validate(const Problem& prob);

// Smooth compactly supported bump amp * max(0, 1-|x-c|^2/rad^2)^2.
ScalarField bump_field(GridPtr grid, double cx, double cy, double radius, double amplitude);

}  // namespace pxlap
