#pragma once

#include <cstdint>

#include "pxlap/discretization.hpp"
#include "pxlap/exponent_field.hpp"
#include "pxlap/fields.hpp"

namespace pxlap {

struct RayleighEstimate {
  double value = 0.0;      // best quotient found
  ScalarField minimizer;
  int iterations = 0;      // total accepted steps over all starts
  bool warning = false;    // a start hit its iteration cap while still moving
};

// inf ||grad u||_{p(x)} / ||u||_{e(x)} over nonzero Dirichlet fields, by
// projected gradient descent on the quotient from several starts: one smooth
// half-wave profile plus seeded smoothed-noise fields.  The quotient is
// 0-homogeneous; iterates are renormalized to ||u||_e = 1.  The result is an
// upper bound on the discrete infimum; downstream users pad accordingly.
RayleighEstimate rayleigh_minimum(const Discretization& disc, const ExponentField& p,
                                  const ExponentField& e, int starts, int iterations,
                                  std::uint64_t rng_seed);

}  // namespace pxlap
