#ifndef LAMBERTW_XYYX_HPP
#define LAMBERTW_XYYX_HPP

#include <optional>

#include "lambertw/certify.hpp"
#include "lambertw/real.hpp"

namespace lambertw {

// Evaluation record for the non-trivial positive solution y(x) of
// x^y = y^x. margin is a guaranteed lower value of
// y(x) - (1 + (e-1)^2/(x-1)); gap is (x^y - x)/ln^2 x, defined for x >= e.
struct XyResult {
  Real x;
  Enclosure y;
  Real margin;
  std::optional<Real> gap;
};

// Certified enclosure of y(x) for x > 1. Uses W0(-ln x/x) past e and
// W_-1(-ln x/x) on (1, e), both wrapped through exp(-w); inputs within
// 10^-digits of e return the window around e dictated by the curve's
// slope -1 there.
Enclosure y_of_x(const Real& x, unsigned digits);

// y(x) - (1 + (e-1)^2/(x-1)), computed from the enclosure's lower endpoint
// so its sign is guaranteed when positive. The working precision is raised
// automatically near e, where the true margin vanishes quadratically.
Real conjecture_margin(const Real& x, unsigned digits);

// (x^y(x) - x)/ln^2(x) for x >= e; approaches 1 as x grows. Diagnostic
// midpoint value, not an enclosure.
Real asymptote_gap(const Real& x, unsigned digits);

// Everything the CLI needs in one call; gap is present for x >= e.
XyResult evaluate_xy(const Real& x, unsigned digits);

}  // namespace lambertw

#endif  // LAMBERTW_XYYX_HPP
