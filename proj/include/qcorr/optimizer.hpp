#pragma once

// Derivative-free minimization of a smooth function on the unit sphere,
// parameterized by (theta, phi) over the upper hemisphere.

#include <functional>

#include "qcorr/measurements.hpp"

namespace qcorr {

struct OptimizerOptions {
  int n_theta = 64;
  int n_phi = 64;
  double refine_tolerance = 1e-10;
  int max_refine_iters = 2000;

  // Throws DomainError when the grid is smaller than 16 x 8 or the
  // tolerance is not positive.
  void validate() const;
};

struct OptimizerTrace {
  int grid_evaluations = 0;
  int iterations = 0;          // simplex iterations
  double final_tolerance = 0;  // spread of the simplex values at exit
  bool converged = false;
};

struct SphereMinimum {
  double value = 0.0;
  MeasurementBasis argmin;
  OptimizerTrace trace;
};

// Coarse grid over theta in [0, pi/2] (inclusive) and phi in [0, 2pi),
// evaluated in parallel, followed by Nelder-Mead in (theta, phi) from the
// best grid point. Ties on the grid go to the lexicographically smallest
// (theta, phi).
SphereMinimum minimize_on_sphere(const std::function<double(const MeasurementBasis&)>& f,
                                 const OptimizerOptions& opts);

}  // namespace qcorr
