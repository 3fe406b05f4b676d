#pragma once

#include <array>
#include <string>
#include <vector>

namespace mphase {

/// Solver history as `iter,energy,grad_residual`, 17 significant digits.
void emit_solver_trace(const std::string& path,
                       const std::vector<std::array<double, 3>>& rows);

/// Outer-iteration history as `step,delta_max,energy`.
void emit_evolution_trace(const std::string& path,
                          const std::vector<std::array<double, 3>>& rows);

} // namespace mphase
