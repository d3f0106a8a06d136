#include "exclasso/norm.hpp"

#include <cmath>
#include <stdexcept>

namespace exclasso {

namespace {

void require_dim(const Vector& v, int p, const char* what) {
  if (v.size() != p) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

int SignVector::hamming_distance(const SignVector& other) const {
  if (other.size() != size())
    throw std::invalid_argument("signed support: dimension mismatch");
  int d = 0;
  for (int i = 0; i < size(); ++i) d += entries[i] != other.entries[i];
  return d;
}

double excl_norm(const Vector& x, const GroupPartition& part) {
  require_dim(x, part.dim(), "excl_norm");
  double sum = 0.0;
  for (const auto& grp : part.groups()) {
    double l1 = 0.0;
    for (int i : grp) l1 += std::abs(x[i]);
    sum += l1 * l1;
  }
  return std::sqrt(sum);
}

double excl_dual_norm(const Vector& u, const GroupPartition& part) {
  require_dim(u, part.dim(), "excl_dual_norm");
  double sum = 0.0;
  for (const auto& grp : part.groups()) {
    double linf = 0.0;
    for (int i : grp) linf = std::max(linf, std::abs(u[i]));
    sum += linf * linf;
  }
  return std::sqrt(sum);
}

double excl_norm_restricted(const Vector& xJ, const RestrictedView& view) {
  require_dim(xJ, view.support_size(), "excl_norm_restricted");
  double sum = 0.0;
  for (int g = 0; g < view.num_groups(); ++g) {
    double l1 = 0.0;
    for (int j : view.local_group(g)) l1 += std::abs(xJ[j]);
    sum += l1 * l1;
  }
  return std::sqrt(sum);
}

double excl_dual_norm_restricted(const Vector& uJ, const RestrictedView& view) {
  require_dim(uJ, view.support_size(), "excl_dual_norm_restricted");
  double sum = 0.0;
  for (int g = 0; g < view.num_groups(); ++g) {
    double linf = 0.0;
    for (int j : view.local_group(g)) linf = std::max(linf, std::abs(uJ[j]));
    sum += linf * linf;
  }
  return std::sqrt(sum);
}

SubgradientReport subgradient_check(const Vector& x, const Vector& u,
                                    const GroupPartition& part, double tol) {
  require_dim(x, part.dim(), "subgradient_check");
  require_dim(u, part.dim(), "subgradient_check");
  SubgradientReport report;

  const double omega = excl_norm(x, part);
  if (omega == 0.0) {
    // ∂Ω(0) is the dual unit ball.
    report.max_violation = std::max(0.0, excl_dual_norm(u, part) - 1.0);
    report.ok = report.max_violation <= tol;
    return report;
  }

  for (int g = 0; g < part.num_groups(); ++g) {
    double l1 = 0.0;
    for (int i : part.group(g)) l1 += std::abs(x[i]);
    const double bound = l1 / omega;
    for (int i : part.group(g)) {
      double viol;
      if (x[i] != 0.0) {
        viol = std::abs(std::abs(u[i]) - bound);
        if (u[i] * x[i] < 0.0 || (u[i] == 0.0 && bound > tol))
          viol = std::max(viol, bound + std::abs(u[i]));  // sign mismatch
      } else {
        viol = std::max(0.0, std::abs(u[i]) - bound);
      }
      if (viol > report.max_violation) {
        report.max_violation = viol;
        report.worst_index = i;
      }
    }
  }
  report.ok = report.max_violation <= tol;
  return report;
}

Vector canonical_subgradient(const Vector& x, const GroupPartition& part) {
  require_dim(x, part.dim(), "canonical_subgradient");
  const double omega = excl_norm(x, part);
  if (omega == 0.0)
    throw std::invalid_argument("canonical_subgradient: x must be nonzero");
  Vector u = Vector::Zero(x.size());
  for (int g = 0; g < part.num_groups(); ++g) {
    double l1 = 0.0;
    for (int i : part.group(g)) l1 += std::abs(x[i]);
    const double mag = l1 / omega;
    for (int i : part.group(g))
      if (x[i] != 0.0) u[i] = x[i] > 0.0 ? mag : -mag;
  }
  return u;
}

SignVector signed_support(const Vector& x, double tol) {
  if (tol < 0.0) throw std::invalid_argument("signed_support: negative tolerance");
  SignVector s;
  s.entries.resize(x.size());
  for (int i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) <= tol)
      s.entries[i] = 0;
    else
      s.entries[i] = x[i] > 0.0 ? 1 : -1;
  }
  return s;
}

}  // namespace exclasso
