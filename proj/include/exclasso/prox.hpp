#pragma once

#include <vector>

#include "exclasso/norm.hpp"
#include "exclasso/partition.hpp"

namespace exclasso {

/// KKT record of the waterfilling system behind the proximal operator.
///
/// For every group, threshold = (sum of active magnitudes) / (count + eta),
/// and when the input lies outside the dual unit ball the squared thresholds
/// sum to one with eta > 0. Groups of all-zero entries carry threshold 0 and
/// an empty active set.
struct ProxCertificate {
  double eta = 0.0;
  bool eta_applicable = false;        ///< false when the input is inside the dual ball
  std::vector<double> thresholds;     ///< per group
  std::vector<std::vector<int>> active_sets;  ///< entries at or above the threshold
  std::vector<int> counts;            ///< sizes of the active sets
};

struct ProxResult {
  Vector z;                ///< the proximal point
  Vector projection;       ///< x - z, the projection onto the dual unit ball
  ProxCertificate certificate;
};

/// Entry-wise soft thresholding at level t >= 0.
Vector soft_threshold(const Vector& x, double t);

/// Proximal operator of the exclusive group sparsity norm,
/// argmin_z 0.5 ||z - x||^2 + Ω(z), computed by soft thresholding each group
/// at a waterfilled level. Inputs inside the dual unit ball map to zero.
///
/// newton_tol bounds the residual of the threshold budget sum(t_G^2) - 1.
ProxResult prox_excl_norm(const Vector& x, const GroupPartition& part,
                          double newton_tol = 1e-12);

/// prox of scale * Ω via prox_{sΩ}(x) = s * prox_Ω(x / s).
ProxResult prox_excl_norm_scaled(const Vector& x, double scale,
                                 const GroupPartition& part,
                                 double newton_tol = 1e-12);

/// Projection onto the unit ball of the dual norm (Moreau complement of the
/// prox). Fixed point exactly when the dual norm of x is at most one.
Vector project_dual_ball(const Vector& x, const GroupPartition& part);

}  // namespace exclasso
