#include "pumpprobe/solve.hpp"

#include <Eigen/LU>
#include <limits>

#include "pumpprobe/term_algebra.hpp"

namespace pumpprobe {

Solution solve_system(const LinearSystem& system,
                      const SolveOptions& options) {
  const int n = system.n_levels;
  const int kmax = system.max_order;
  const ReducedSystem red = reduce(system);

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(red.m);
  const double rcond = lu.rcond();
  const double condition =
      rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(condition < options.condition_limit))
    throw SolveError(
        "solve: reduced system condition estimate " +
            std::to_string(condition) + " exceeds limit " +
            std::to_string(options.condition_limit) +
            " (is the system closed?)",
        condition);

  const Eigen::VectorXcd a_prime = lu.solve(red.b);

  // Reconstruct the eliminated (N-1,N-1) elements from the constraints.
  const int dim = harmonic_count(kmax) * n * n;
  Eigen::VectorXcd a(dim);
  a.head(a_prime.size()) = a_prime;
  for (int k = -kmax; k <= kmax; ++k) {
    std::complex<double> sum = 0.0;
    for (int l = 0; l + 1 < n; ++l)
      sum += a_prime(vec_index(l, l, k, n, kmax));
    a(vec_index(n - 1, n - 1, k, n, kmax)) = (k == 0 ? 1.0 - sum : -sum);
  }

  Solution sol;
  sol.rho = unflatten(a, n, kmax);
  sol.condition = condition;
  const double m_scale = system.m.cwiseAbs().maxCoeff();
  const double a_scale = a.cwiseAbs().maxCoeff();
  sol.residual = (m_scale > 0.0 && a_scale > 0.0)
                     ? (system.m * a).cwiseAbs().maxCoeff() /
                           (m_scale * a_scale)
                     : 0.0;
  if (!(sol.residual <= options.residual_limit))
    throw SolveError(
        "solve: scaled residual " + std::to_string(sol.residual) +
            " exceeds limit " + std::to_string(options.residual_limit) +
            "; the eliminated trace rows are violated (is the system"
            " closed?)",
        condition);
  return sol;
}

Solution solve(const SystemSpec& spec, int max_order,
               const SolveOptions& options) {
  const LinearSystem system = options.builder == BuilderKind::Numeric
                                  ? assemble_m(spec, max_order)
                                  : assemble_m_symbolic(spec, max_order);
  return solve_system(system, options);
}

}  // namespace pumpprobe
