#pragma once

// Central numeric tolerances. Double precision everywhere; these leave
// several digits of headroom over accumulation error at the dimensions
// this library targets (d <= ~8 per subsystem).

namespace qdw {

inline constexpr double HERM_TOL = 1e-10; // hermiticity / trace checks, max-entry norm
inline constexpr double PSD_TOL = 1e-10;  // eigenvalue positivity slack
inline constexpr double EQ_TOL = 1e-9;    // generic equality comparisons

// A pivot below this (relative to the largest entry) is treated as an
// exact rank deficiency by determinant().
inline constexpr double PIVOT_REL_TOL = 1e-14;

} // namespace qdw
