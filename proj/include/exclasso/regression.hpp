#pragma once

#include <optional>
#include <string>

#include "exclasso/norm.hpp"

namespace exclasso {

/// Linear regression data: observations y, design A, and the sample count n
/// that normalizes the loss (1/2n)||y - A x||^2. n defaults to the row count
/// but may be set explicitly to change the loss scaling.
struct RegressionProblem {
  Matrix A;
  Vector y;
  int n = 0;
  std::optional<Vector> x_true;
  std::optional<double> noise_sigma2;

  RegressionProblem() = default;
  RegressionProblem(Matrix design, Vector obs, int samples = -1);

  int dim() const { return static_cast<int>(A.cols()); }

  /// Text format: header "n p", then y on one line, then A row-major.
  static RegressionProblem from_file(const std::string& path);
  void to_file(const std::string& path) const;
};

/// (1/2n) ||y - A x||^2
double ls_loss(const RegressionProblem& problem, const Vector& x);

/// (1/n) A^T (A x - y)
Vector ls_grad(const RegressionProblem& problem, const Vector& x);

/// Smallest Lipschitz constant of the gradient, sigma_max(A)^2 / n, by power
/// iteration (relative tolerance 1e-10, safety factor 1 + 1e-6).
double lipschitz_constant(const RegressionProblem& problem);

/// sigma_max(B)^2 / n for an arbitrary design block; shares the power
/// iteration with lipschitz_constant.
double lipschitz_constant(const Matrix& B, int n);

}  // namespace exclasso
