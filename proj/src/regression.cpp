#include "exclasso/regression.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace exclasso {

RegressionProblem::RegressionProblem(Matrix design, Vector obs, int samples)
    : A(std::move(design)), y(std::move(obs)) {
  n = samples > 0 ? samples : static_cast<int>(A.rows());
  if (y.size() != A.rows())
    throw std::invalid_argument("regression: observation/design size mismatch");
  if (A.rows() < 1 || A.cols() < 1)
    throw std::invalid_argument("regression: empty design");
}

RegressionProblem RegressionProblem::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("problem file: cannot open " + path);
  int n = 0, p = 0;
  if (!(in >> n >> p) || n < 1 || p < 1)
    throw std::invalid_argument("problem file: bad header");
  Vector y(n);
  for (int i = 0; i < n; ++i)
    if (!(in >> y[i])) throw std::invalid_argument("problem file: truncated y");
  Matrix A(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j)
      if (!(in >> A(i, j))) throw std::invalid_argument("problem file: truncated A");
  return RegressionProblem(std::move(A), std::move(y), n);
}

void RegressionProblem::to_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("problem file: cannot write " + path);
  char buf[64];
  out << A.rows() << ' ' << A.cols() << '\n';
  for (int i = 0; i < y.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", y[i]);
    out << buf << (i + 1 < y.size() ? ' ' : '\n');
  }
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", A(i, j));
      out << buf << (j + 1 < A.cols() ? ' ' : '\n');
    }
}

double ls_loss(const RegressionProblem& problem, const Vector& x) {
  if (x.size() != problem.A.cols())
    throw std::invalid_argument("ls_loss: dimension mismatch");
  return (problem.y - problem.A * x).squaredNorm() / (2.0 * problem.n);
}

Vector ls_grad(const RegressionProblem& problem, const Vector& x) {
  if (x.size() != problem.A.cols())
    throw std::invalid_argument("ls_grad: dimension mismatch");
  return problem.A.transpose() * (problem.A * x - problem.y) / problem.n;
}

double lipschitz_constant(const Matrix& B, int n) {
  const double fro = B.norm();
  if (fro == 0.0) throw std::invalid_argument("lipschitz: zero matrix");

  // Power iteration on B^T B.
  Vector v = Vector::Ones(B.cols());
  v[0] = 1.25;  // avoid starting orthogonal to the top eigenvector for symmetric patterns
  v /= v.norm();
  double lambda = 0.0;
  for (int it = 0; it < 10000; ++it) {
    Vector w = B.transpose() * (B * v);
    const double norm = w.norm();
    if (norm == 0.0) break;
    w /= norm;
    const double next = w.dot(B.transpose() * (B * w));
    const bool done = std::abs(next - lambda) <= 1e-10 * std::max(1.0, std::abs(next));
    lambda = next;
    v = w;
    if (done) break;
  }
  return lambda * (1.0 + 1e-6) / n;
}

double lipschitz_constant(const RegressionProblem& problem) {
  return lipschitz_constant(problem.A, problem.n);
}

}  // namespace exclasso
