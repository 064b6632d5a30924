#pragma once

// Central table of numerical tolerances used across the library.
namespace gbox::tol {

// Exact-arithmetic comparisons on series coefficients.
inline constexpr double kCoeffEq = 1e-12;

// Grid-then-refine sup bounds (max_deviation, boundedness checks).
inline constexpr double kGridSup = 1e-8;

// Slack on |C| <= 1 when constructing boxes from correlation functions.
inline constexpr double kBoundSlack = 1e-9;

// Allowed negativity of a probability on a dense grid.
inline constexpr double kProbSlack = 1e-10;

// Conditioning marginals below this are treated as undefined.
inline constexpr double kMarginalFloor = 1e-12;

// Bracket width for 1-D golden-section optimization.
inline constexpr double kGolden = 1e-12;

// Cone positivity slack for bilinear-form checks.
inline constexpr double kConeSlack = 1e-9;

}  // namespace gbox::tol
