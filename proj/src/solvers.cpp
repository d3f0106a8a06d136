#include "exclasso/solvers.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <functional>
#include <iostream>
#include <stdexcept>

namespace exclasso {

namespace {

void validate_config(const SolverConfig& config, bool wants_lambda) {
  if (config.lambda.has_value() == config.mu.has_value())
    throw std::invalid_argument("solver: exactly one of lambda/mu must be set");
  if (wants_lambda && !config.lambda)
    throw std::invalid_argument("solver: lambda required");
  if (!wants_lambda && !config.mu)
    throw std::invalid_argument("solver: mu required");
  if (config.max_iter < 1 || config.obj_tol <= 0.0 || config.gap_tol <= 0.0)
    throw std::invalid_argument("solver: bad tolerances");
  if (wants_lambda && *config.lambda < 0.0)
    throw std::invalid_argument("solver: negative lambda");
  if (!wants_lambda && *config.mu <= 0.0)
    throw std::invalid_argument("solver: mu must be positive");
}

// Fenchel gap for  min (1/2n)||y - B v||^2 + lambda * pen(v)  with the dual
// point u = (B v - y)/n scaled into the lambda-ball of the dual norm.
double fenchel_gap(const Matrix& B, const Vector& y, int n, const Vector& v,
                   double lambda, double pen_value, double dual_norm_of_grad) {
  const Vector r = B * v - y;
  const Vector u = r / n;
  double s = 1.0;
  if (lambda <= 0.0)
    s = 0.0;
  else if (dual_norm_of_grad > lambda)
    s = lambda / dual_norm_of_grad;
  const double loss = r.squaredNorm() / (2.0 * n);
  const double gap = loss + lambda * pen_value + s * u.dot(y) + 0.5 * n * s * s * u.squaredNorm();
  return std::max(0.0, gap);
}

struct FistaPieces {
  std::function<Vector(const Vector&, double)> prox;  // prox of scale * penalty
  std::function<double(const Vector&)> penalty;
  std::function<double(const Vector&)> dual_norm;
};

// Accelerated proximal gradient with gradient evaluation at the extrapolated
// point and a monotone restart: if the momentum step would raise the
// objective, the iterate is recomputed as a plain proximal-gradient step
// from the previous point (which cannot ascend for steps of 1/gamma).
SolveReport fista_core(const Matrix& B, const Vector& y, int n, double lambda,
                       const FistaPieces& pieces, const SolverConfig& config,
                       std::vector<double>* objective_trace) {
  if (!B.allFinite() || !y.allFinite())
    throw std::invalid_argument("fista: non-finite data");
  const double gamma = lipschitz_constant(B, n);
  const int p = static_cast<int>(B.cols());

  Vector x = config.x0 && config.x0->size() == p ? *config.x0 : Vector::Zero(p);
  Vector w = x;
  double xi = 1.0;

  auto loss = [&](const Vector& v) { return (y - B * v).squaredNorm() / (2.0 * n); };
  auto grad = [&](const Vector& v) { return B.transpose() * (B * v - y) / n; };
  auto objective = [&](const Vector& v) { return loss(v) + lambda * pieces.penalty(v); };

  SolveReport report;
  double f_prev = objective(x);
  if (objective_trace) objective_trace->push_back(f_prev);

  for (int k = 1; k <= config.max_iter; ++k) {
    Vector x_next = pieces.prox(w - grad(w) / gamma, lambda / gamma);
    double f = objective(x_next);
    if (f > f_prev) {
      x_next = pieces.prox(x - grad(x) / gamma, lambda / gamma);
      f = objective(x_next);
      xi = 1.0;
    }
    const double xi_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * xi * xi));
    w = x_next + ((xi - 1.0) / xi_next) * (x_next - x);
    x = x_next;
    xi = xi_next;
    f_prev = std::min(f_prev, f);
    report.iterations = k;
    if (objective_trace) objective_trace->push_back(f_prev);

    if (k % 5 == 0 || k == config.max_iter) {
      if (lambda == 0.0) {
        if (grad(x).cwiseAbs().maxCoeff() <= config.gap_tol) {
          report.converged = true;
          break;
        }
      } else {
        const double gap =
            fenchel_gap(B, y, n, x, lambda, pieces.penalty(x), pieces.dual_norm(grad(x)));
        report.duality_gap = gap;
        if (gap <= config.gap_tol) {
          report.converged = true;
          break;
        }
      }
    }
  }
  report.x_hat = x;
  report.objective = f_prev;
  if (lambda > 0.0)
    report.duality_gap =
        fenchel_gap(B, y, n, x, lambda, pieces.penalty(x), pieces.dual_norm(grad(x)));
  return report;
}

}  // namespace

SolveReport fista_solve(const RegressionProblem& problem, const GroupPartition& part,
                        const SolverConfig& config, std::vector<double>* objective_trace) {
  validate_config(config, /*wants_lambda=*/true);
  if (problem.dim() != part.dim())
    throw std::invalid_argument("fista: partition dimension mismatch");
  FistaPieces pieces;
  pieces.prox = [&part](const Vector& v, double scale) {
    return scale > 0.0 ? prox_excl_norm_scaled(v, scale, part).z : v;
  };
  pieces.penalty = [&part](const Vector& v) { return excl_norm(v, part); };
  pieces.dual_norm = [&part](const Vector& v) { return excl_dual_norm(v, part); };
  return fista_core(problem.A, problem.y, problem.n, *config.lambda, pieces, config,
                    objective_trace);
}

SolveReport classic_lasso_solve(const RegressionProblem& problem, const SolverConfig& config) {
  validate_config(config, /*wants_lambda=*/true);
  FistaPieces pieces;
  pieces.prox = [](const Vector& v, double scale) { return soft_threshold(v, scale); };
  pieces.penalty = [](const Vector& v) { return v.cwiseAbs().sum(); };
  pieces.dual_norm = [](const Vector& v) { return v.cwiseAbs().maxCoeff(); };
  return fista_core(problem.A, problem.y, problem.n, *config.lambda, pieces, config, nullptr);
}

SolveReport latent_group_lasso_solve(const RegressionProblem& problem,
                                     const std::vector<std::vector<int>>& latent_groups,
                                     const SolverConfig& config) {
  validate_config(config, /*wants_lambda=*/true);
  const int p = problem.dim();
  if (latent_groups.empty())
    throw std::invalid_argument("latent: no groups");

  std::vector<char> covered(p, 0);
  int dup_cols = 0;
  for (const auto& grp : latent_groups) {
    if (grp.empty()) throw std::invalid_argument("latent: empty group");
    for (int i : grp) {
      if (i < 0 || i >= p) throw std::invalid_argument("latent: group index out of range");
      covered[i] = 1;
    }
    dup_cols += static_cast<int>(grp.size());
  }
  if (problem.x_true) {
    for (int i = 0; i < p; ++i)
      if (!covered[i] && std::abs((*problem.x_true)[i]) > 0.0)
        std::cerr << "latent group lasso: index " << i + 1
                  << " of the true support is not covered by any group\n";
  }

  Matrix D(problem.A.rows(), dup_cols);
  std::vector<int> block_start(latent_groups.size() + 1, 0);
  {
    int c = 0;
    for (size_t h = 0; h < latent_groups.size(); ++h) {
      block_start[h] = c;
      for (int i : latent_groups[h]) D.col(c++) = problem.A.col(i);
      block_start[h + 1] = c;
    }
  }

  FistaPieces pieces;
  pieces.prox = [&](const Vector& v, double scale) {
    Vector z = v;
    for (size_t h = 0; h < latent_groups.size(); ++h) {
      auto seg = z.segment(block_start[h], block_start[h + 1] - block_start[h]);
      const double norm = seg.norm();
      seg *= norm > scale ? 1.0 - scale / norm : 0.0;
    }
    return z;
  };
  pieces.penalty = [&](const Vector& v) {
    double s = 0.0;
    for (size_t h = 0; h < latent_groups.size(); ++h)
      s += v.segment(block_start[h], block_start[h + 1] - block_start[h]).norm();
    return s;
  };
  pieces.dual_norm = [&](const Vector& v) {
    double m = 0.0;
    for (size_t h = 0; h < latent_groups.size(); ++h)
      m = std::max(m, v.segment(block_start[h], block_start[h + 1] - block_start[h]).norm());
    return m;
  };

  SolverConfig dup_config = config;
  if (config.x0) dup_config.x0.reset();  // warm starts live in the duplicated space
  SolveReport report = fista_core(D, problem.y, problem.n, *config.lambda, pieces, dup_config,
                                  nullptr);

  Vector x_hat = Vector::Zero(p);
  for (size_t h = 0; h < latent_groups.size(); ++h) {
    int c = block_start[h];
    for (int i : latent_groups[h]) x_hat[i] += report.x_hat[c++];
  }
  report.x_hat = std::move(x_hat);
  return report;
}

SolveReport irls_restricted_solve(const RegressionProblem& problem, const RestrictedView& view,
                                  double mu, const SolverConfig& config) {
  if (config.lambda)
    throw std::invalid_argument("irls: configured with lambda, expected mu");
  if (mu <= 0.0) throw std::invalid_argument("irls: mu must be positive");
  if (view.support_size() == 0) throw std::invalid_argument("irls: empty support");

  const int m = view.support_size();
  Matrix AJ(problem.A.rows(), m);
  for (int j = 0; j < m; ++j) AJ.col(j) = problem.A.col(view.support()[j]);
  const Matrix gram = AJ.transpose() * AJ / problem.n;
  const Vector rhs = AJ.transpose() * problem.y / problem.n;

  Vector xJ = Vector::Zero(m);
  if (config.x0 && config.x0->size() == problem.dim()) {
    for (int j = 0; j < m; ++j) xJ[j] = (*config.x0)[view.support()[j]];
  }

  // Group l1 norms over the support, shared by weights and residuals.
  auto group_l1 = [&](const Vector& v) {
    std::vector<double> l1(view.num_groups(), 0.0);
    for (int g = 0; g < view.num_groups(); ++g)
      for (int j : view.local_group(g)) l1[g] += std::abs(v[j]);
    return l1;
  };

  // Stationarity residual of the restricted problem: on the support of xJ
  // the gradient must cancel mu * ||x_{G}||_1 * sign(x_i); at zeros it must
  // stay within mu * ||x_{G}||_1.
  auto residual = [&](const Vector& v, const Vector& gJ, const std::vector<double>& l1,
                      double ztol) {
    double r = 0.0;
    for (int g = 0; g < view.num_groups(); ++g)
      for (int j : view.local_group(g)) {
        if (std::abs(v[j]) > ztol)
          r = std::max(r, std::abs(gJ[j] + mu * l1[g] * (v[j] > 0.0 ? 1.0 : -1.0)));
        else
          r = std::max(r, std::max(0.0, std::abs(gJ[j]) - mu * l1[g]));
      }
    return r;
  };

  SolveReport report;
  double eps_s = 1e-10;
  double resid = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= config.max_iter; ++it) {
    // variational weights theta_i, normalized per group
    Vector inv_theta(m);
    for (int g = 0; g < view.num_groups(); ++g) {
      double denom = 0.0;
      for (int j : view.local_group(g)) denom += std::abs(xJ[j]) + eps_s;
      for (int j : view.local_group(g))
        inv_theta[j] = denom / (std::abs(xJ[j]) + eps_s);
    }

    Matrix H = gram;
    H.diagonal() += mu * inv_theta;
    H.diagonal().array() += 1e-12;
    Eigen::LDLT<Matrix> ldlt(H);
    if (ldlt.info() != Eigen::Success)
      throw std::runtime_error("irls: reweighted system factorization failed");
    xJ = ldlt.solve(rhs);

    const Vector gJ = gram * xJ - rhs;
    const auto l1 = group_l1(xJ);
    const double ztol = 1e-9 * std::max(1.0, xJ.cwiseAbs().maxCoeff());
    resid = residual(xJ, gJ, l1, ztol);
    report.iterations = it;
    if (resid <= config.obj_tol) {
      report.converged = true;
      break;
    }
    if (it % 10 == 0) eps_s *= 0.1;
  }

  // snap numerically dead entries so downstream supports are exact
  const double ztol = 1e-9 * std::max(1.0, xJ.cwiseAbs().maxCoeff());
  for (int j = 0; j < m; ++j)
    if (std::abs(xJ[j]) <= ztol) xJ[j] = 0.0;

  Vector x = Vector::Zero(problem.dim());
  for (int j = 0; j < m; ++j) x[view.support()[j]] = xJ[j];
  const double omega = excl_norm_restricted(xJ, view);
  report.x_hat = std::move(x);
  report.objective = ls_loss(problem, report.x_hat) + 0.5 * mu * omega * omega;
  report.duality_gap = duality_gap_squared_restricted(problem, view, xJ, mu);
  return report;
}

double duality_gap_norm(const RegressionProblem& problem, const GroupPartition& part,
                        const Vector& x, double lambda) {
  if (!x.allFinite()) throw std::invalid_argument("duality gap: non-finite point");
  const Vector g = ls_grad(problem, x);
  return fenchel_gap(problem.A, problem.y, problem.n, x, lambda, excl_norm(x, part),
                     excl_dual_norm(g, part));
}

double duality_gap_squared(const RegressionProblem& problem, const GroupPartition& part,
                           const Vector& x, double mu) {
  if (!x.allFinite()) throw std::invalid_argument("duality gap: non-finite point");
  if (mu <= 0.0) throw std::invalid_argument("duality gap: mu must be positive");
  const Vector u = ls_grad(problem, x);
  const double omega = excl_norm(x, part);
  const double dual = excl_dual_norm(u, part);
  return std::max(0.0, 0.5 * mu * omega * omega + 0.5 * dual * dual / mu + x.dot(u));
}

double duality_gap_squared_restricted(const RegressionProblem& problem,
                                      const RestrictedView& view, const Vector& xJ,
                                      double mu) {
  if (xJ.size() != view.support_size())
    throw std::invalid_argument("duality gap: support dimension mismatch");
  Vector x = Vector::Zero(problem.dim());
  for (int j = 0; j < view.support_size(); ++j) x[view.support()[j]] = xJ[j];
  const Vector u = ls_grad(problem, x);
  Vector uJ(view.support_size());
  for (int j = 0; j < view.support_size(); ++j) uJ[j] = u[view.support()[j]];
  const double full = excl_dual_norm(u, view.parent());
  const double restricted = excl_dual_norm_restricted(uJ, view);
  return std::max(0.0, (full * full - restricted * restricted) / (2.0 * mu));
}

}  // namespace exclasso
