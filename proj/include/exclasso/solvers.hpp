#pragma once

#include <optional>
#include <vector>

#include "exclasso/partition.hpp"
#include "exclasso/prox.hpp"
#include "exclasso/regression.hpp"

namespace exclasso {

/// Configuration shared by the penalized solvers. Exactly one of lambda
/// (norm penalty) or mu (squared-norm penalty) must be set per solve.
struct SolverConfig {
  std::optional<double> lambda;
  std::optional<double> mu;
  int max_iter = 5000;
  double obj_tol = 1e-10;   ///< stationarity residual target (IRLS)
  double gap_tol = 1e-8;    ///< duality-gap target (FISTA-type solvers)
  std::optional<Vector> x0; ///< warm start

  static SolverConfig with_lambda(double lambda) {
    SolverConfig c;
    c.lambda = lambda;
    return c;
  }
  static SolverConfig with_mu(double mu) {
    SolverConfig c;
    c.mu = mu;
    return c;
  }
};

struct SolveReport {
  Vector x_hat;
  double objective = 0.0;
  int iterations = 0;
  double duality_gap = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
};

/// Accelerated proximal gradient for  min L(x) + lambda * Ω(x)  with the
/// exclusive group sparsity norm. Gradient steps are taken at the
/// extrapolated point; the momentum is reset whenever the objective would
/// increase, so the recorded objective sequence is nonincreasing. With
/// lambda = 0 the stopping rule is the gradient norm instead of the gap.
///
/// `objective_trace`, when given, receives the objective after every
/// accepted iterate.
SolveReport fista_solve(const RegressionProblem& problem, const GroupPartition& part,
                        const SolverConfig& config,
                        std::vector<double>* objective_trace = nullptr);

/// Classic Lasso (l1 penalty) by the same accelerated scheme with the
/// entry-wise soft-threshold prox.
SolveReport classic_lasso_solve(const RegressionProblem& problem, const SolverConfig& config);

/// Latent group Lasso with unit group weights, solved as a non-overlapping
/// group Lasso on the covariate-duplicated design (one copy of each column
/// per containing group, block l2 soft-threshold prox). x_hat is the sum of
/// the latent vectors.
SolveReport latent_group_lasso_solve(const RegressionProblem& problem,
                                     const std::vector<std::vector<int>>& latent_groups,
                                     const SolverConfig& config);

/// Iteratively reweighted least squares for the support-restricted problem
///   min L_J(x_J) + (mu/2) * Ω_J(x_J)^2,
/// using the variational form of the squared within-group l1 norm. Returns
/// the zero-extended solution; converged means the subgradient stationarity
/// residual dropped below obj_tol. `gap_trace`, when given, records the
/// duality gap of the restricted problem after every outer iteration.
SolveReport irls_restricted_solve(const RegressionProblem& problem, const RestrictedView& view,
                                  double mu, const SolverConfig& config,
                                  std::vector<double>* gap_trace = nullptr);

/// Fenchel duality gap of  min L + lambda * Ω  at x, using the residual-based
/// dual point rescaled into the dual-norm ball. Nonnegative; zero exactly at
/// an optimum.
double duality_gap_norm(const RegressionProblem& problem, const GroupPartition& part,
                        const Vector& x, double lambda);

/// Duality gap of  min L + (mu/2) * Ω^2  at x with dual point u = grad L(x):
/// (mu/2) Ω(x)^2 + (1/2mu) Ω*(u)^2 + x^T u.
double duality_gap_squared(const RegressionProblem& problem, const GroupPartition& part,
                           const Vector& x, double mu);

/// The same gap for the zero-extension of a restricted optimum, computed by
/// the dual-norm difference of the full and restricted gradients. Valid when
/// xJ solves the restricted problem.
double duality_gap_squared_restricted(const RegressionProblem& problem,
                                      const RestrictedView& view, const Vector& xJ,
                                      double mu);

}  // namespace exclasso
