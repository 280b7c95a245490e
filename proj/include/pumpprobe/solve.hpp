// solve.hpp — pseudo-steady-state solution of the harmonic linear system.

#pragma once

#include <stdexcept>
#include <string>

#include "pumpprobe/assemble.hpp"
#include "pumpprobe/harmonics.hpp"
#include "pumpprobe/system_spec.hpp"

namespace pumpprobe {

// Which construction of the linear system backs the solve. The numeric
// builder is the production path; the symbolic (term-algebra) builder exists
// as an independent cross-check and is considerably slower.
enum class BuilderKind { Numeric, Symbolic };

struct SolveOptions {
  // Condition-number estimate above which the reduced system is rejected.
  double condition_limit = 1e12;
  // Scaled-residual limit on the full system. The eliminated equations are
  // only implied for a closed system, so a solution that violates them
  // (e.g. decay with no source channels) is rejected here even when the
  // reduced matrix itself is well conditioned.
  double residual_limit = 1e-6;
  BuilderKind builder = BuilderKind::Numeric;
};

class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_ = 0.0;
};

struct Solution {
  DensityHarmonics rho;
  // ||M a||_inf scaled by ||M||_max * ||a||_inf; machine-epsilon sized for a
  // healthy solve.
  double residual = 0.0;
  // Condition-number estimate of the reduced matrix.
  double condition = 0.0;
};

// Assembles M, folds in the closed-system constraints, solves the reduced
// system with a pivoted dense LU, and reconstructs the full harmonic set
// including the eliminated (N-1,N-1) elements.
Solution solve(const SystemSpec& spec, int max_order,
               const SolveOptions& options = {});

// Same, starting from an already assembled system.
Solution solve_system(const LinearSystem& system,
                      const SolveOptions& options = {});

}  // namespace pumpprobe
