#pragma once

#include <string>
#include <vector>

#include "relforms/phase_space.hpp"

namespace relforms {

// Least-squares slope of log(residual) against log(h); the observed
// convergence order of a refinement family.
double fitted_order(const std::vector<double>& h, const std::vector<double>& resid);

struct SweepCell {
  std::string label;
  double spacing = 0.0;
  double residual = 0.0;
  bool ok = true;
  std::string error;
};

struct SweepSummary {
  std::vector<SweepCell> cells;
  double order = 0.0;   // fitted over the cells that form a refinement family
  bool all_ok() const;
  std::string to_json() const;
};

// Field-sector closure residual (numeric bracket engine against the exact
// kernel commutators) on a lattice refined along axis 0 with a smooth profile
// there and an affine profile along the fixed axes.
double field_sector_closure_residual(int n_axis0, double h_axis0, std::uint64_t seed);

// Deterministic parallel refinement sweep; identical output regardless of the
// worker count (cells are computed independently and merged in index order).
SweepSummary sweep_field_closure(const std::vector<int>& levels, double h0, std::uint64_t seed,
                                 int jobs);

}  // namespace relforms
