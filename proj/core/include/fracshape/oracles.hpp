#pragma once

#include "fracshape/fields.hpp"
#include "fracshape/finite_difference.hpp"
#include "fracshape/hadamard.hpp"
#include "fracshape/operators.hpp"

namespace fracshape {

// Finite-difference shape derivatives on exactly deformed balls. None of
// them touches a boundary trace. All throw ConvergenceError (with the
// observed Richardson ratios) when the difference table does not show the
// expected order, and DomainError when t0 leaves the flow's range.

/// d/dt G_{Omega_t}(Phi_t x, Phi_t y) at 0, minus grad_x G . Y(x) + grad_y G . Y(y).
[[nodiscard]] double oracle_green(const ShapeScenario& sc, const Vec& x, const Vec& y, const FDSchedule& fd = {});

/// d/dt u_t(x) at 0 with x fixed. Constant h uses the closed-form torsion of
/// each deformed ball; otherwise solve_dirichlet runs on each deformed ball
/// with the direction count frozen at its t = 0 value.
[[nodiscard]] double oracle_solution(const ShapeScenario& sc, const SourceTerm& h, const Vec& x,
                                     const FDSchedule& fd = {}, const SolveOptions& solve = {});

/// d/dt R_{Omega_t}(Phi_t x) at 0 minus grad R(x) . Y(x), the latter also by
/// central differences of the Robin function along Y(x).
[[nodiscard]] double oracle_robin(const ShapeScenario& sc, const Vec& x, const FDSchedule& fd = {});

}  // namespace fracshape
