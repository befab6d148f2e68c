#pragma once

#include <functional>
#include <vector>

#include "relforms/phase_space.hpp"

namespace relforms {

// Gradient of a phase functional with respect to every canonical coordinate
// (complex entries; mode coordinates are the unit-bracket rescaled pairs).
using PhaseGradient = std::vector<Cxd>;

using PhaseFunctional = std::function<Cxd(const PhaseSpacePoint&)>;

// Canonical bracket [F,G] = sum over pairs dF/dq dG/dp - dF/dp dG/dq.
Cxd bracket_contract(const PhaseGradient& f, const PhaseGradient& g, const CoordLayout& lay);

// Central differences with one Richardson level; relative step 1e-5. Used for
// arbitrary functionals where no forward-mode path exists.
PhaseGradient gradient_fd(const PhaseSpacePoint& pt, const PhaseFunctional& f,
                          double rel_step = 1e-5);

Cxd poisson_bracket(const PhaseFunctional& f, const PhaseFunctional& g, const PhaseSpacePoint& pt);

}  // namespace relforms
