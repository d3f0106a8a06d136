#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "exclasso/partition.hpp"

namespace exclasso {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Sign pattern in {-1, 0, +1} per coordinate.
struct SignVector {
  std::vector<std::int8_t> entries;

  int size() const { return static_cast<int>(entries.size()); }
  bool operator==(const SignVector&) const = default;
  /// Number of positions where the two patterns differ.
  int hamming_distance(const SignVector& other) const;
};

/// Exclusive group sparsity norm: sqrt of the sum over groups of the squared
/// within-group l1 norms.
double excl_norm(const Vector& x, const GroupPartition& part);

/// Dual norm: sqrt of the sum over groups of the squared within-group
/// l-infinity norms.
double excl_dual_norm(const Vector& u, const GroupPartition& part);

/// Restriction of excl_norm to a support set; equals excl_norm of the
/// zero-padded extension.
double excl_norm_restricted(const Vector& xJ, const RestrictedView& view);

/// Restriction of the dual norm to a support set.
double excl_dual_norm_restricted(const Vector& uJ, const RestrictedView& view);

/// Outcome of the subgradient membership test u ∈ ∂Ω(x).
struct SubgradientReport {
  bool ok = false;
  double max_violation = 0.0;  ///< largest constraint residual found
  int worst_index = -1;        ///< coordinate attaining the residual, or -1
};

/// Checks u ∈ ∂Ω(x): on the support of x, |u_i| must equal
/// ||x_{G_i}||_1 / Ω(x) with matching sign; off the support it must not
/// exceed that bound. For x = 0 the subdifferential is the dual unit ball,
/// so the test falls back to Ω*(u) <= 1 + tol.
SubgradientReport subgradient_check(const Vector& x, const Vector& u,
                                    const GroupPartition& part, double tol);

/// The subgradient with u_i = sign(x_i) ||x_{G_i}||_1 / Ω(x) on the support
/// of x and 0 elsewhere. Requires x != 0.
Vector canonical_subgradient(const Vector& x, const GroupPartition& part);

/// Default absolute tolerance for sign/support decisions.
inline constexpr double kSupportTol = 1e-9;

/// Entry-wise sign with |x_i| <= tol mapped to 0.
SignVector signed_support(const Vector& x, double tol = kSupportTol);

}  // namespace exclasso
