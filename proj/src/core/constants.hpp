#pragma once

// Central tolerance table. Every geometric / algebraic tolerance used by the
// library lives here so that contracts stay consistent across modules.
namespace pentapath::tol {

// |u1^2+u2^2+u3^2 - 1| bound for a pose considered to lie on the orientation
// cylinder.
inline constexpr double kOnGamma = 1e-12;

// Sphere tangent projection requires a unit anchor within this bound.
inline constexpr double kUnitAnchor = 1e-9;

// Residual bound for a pedal point on its defining equations.
inline constexpr double kVarietyResidual = 1e-9;

// Stationarity residual bound for constrained-extremum pedal points.
inline constexpr double kStationarity = 1e-9;

// Imaginary parts below this (relative) threshold are treated as zero when
// filtering the roots of the pedal multiplier polynomial.
inline constexpr double kComplexRootImag = 1e-10;

// Pedal points closer than this to each other are merged into one.
inline constexpr double kPedalDedupe = 1e-8;

// Relative residual bound for the interior update linear solve.
inline constexpr double kSolveResidual = 1e-9;

// Positive-root cutoff for the step-size search.
inline constexpr double kPositiveRoot = 1e-12;

// A breakpoint with clearance at or below this is treated as singular.
inline constexpr double kMinClearance = 1e-12;

// Relative objective change below this for three consecutive accepted
// iterations declares convergence.
inline constexpr double kObjectivePlateau = 1e-10;

// Absolute floor for the halved step size when the user floor is zero.
inline constexpr double kStepFloor = 1e-16;

// Treat an architecture offset as exactly zero below this.
inline constexpr double kZeroOffset = 1e-12;

// Residual bound for architecture-class consistency checks.
inline constexpr double kDesignResidual = 1e-9;

}  // namespace pentapath::tol
