#include "exclasso/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace exclasso {

namespace {

constexpr int kMaxNewtonIter = 200;

// One group's magnitudes sorted descending (ties by lowest index) plus
// prefix sums, the data behind the piecewise threshold function.
struct GroupLadder {
  std::vector<int> order;      // original indices, by decreasing magnitude
  std::vector<double> prefix;  // prefix[k] = sum of the k largest magnitudes
  int count = 0;               // currently active entries (first `count` of order)

  double sum() const { return prefix[count]; }
  double next_magnitude(const Vector& x) const {
    return count < static_cast<int>(order.size()) ? std::abs(x[order[count]]) : 0.0;
  }
  // Upper end of the current piece: the eta at which one more entry activates.
  double piece_boundary(const Vector& x) const {
    const double nxt = next_magnitude(x);
    if (nxt == 0.0) return std::numeric_limits<double>::infinity();
    return sum() / nxt - count;
  }
};

// Solves sum_G S_G^2/(n_G + eta)^2 = 1 for eta with the counts held fixed.
// The left side is convex and decreasing, so Newton from any point left of
// the root converges monotonically; a bisection fallback guards rounding.
double solve_eta(const std::vector<GroupLadder>& ladders, double eta0, double tol) {
  auto g = [&](double eta) {
    double s = -1.0;
    for (const auto& lad : ladders) {
      const double r = lad.sum() / (lad.count + eta);
      s += r * r;
    }
    return s;
  };
  auto gprime = [&](double eta) {
    double s = 0.0;
    for (const auto& lad : ladders) {
      const double d = lad.count + eta;
      s -= 2.0 * lad.sum() * lad.sum() / (d * d * d);
    }
    return s;
  };

  double eta = eta0;
  double lo = eta0;
  double hi = std::numeric_limits<double>::quiet_NaN();
  for (int it = 0; it < kMaxNewtonIter; ++it) {
    const double val = g(eta);
    if (std::abs(val) <= tol) return eta;
    if (val > 0.0)
      lo = eta;
    else
      hi = eta;
    double next = eta - val / gprime(eta);
    if (!std::isfinite(next) || next < lo || (!std::isnan(hi) && next > hi))
      next = std::isnan(hi) ? 2.0 * lo + 1.0 : 0.5 * (lo + hi);
    eta = next;
  }
  throw std::runtime_error("prox: threshold budget solve did not converge");
}

}  // namespace

Vector soft_threshold(const Vector& x, double t) {
  if (t < 0.0) throw std::invalid_argument("soft_threshold: negative threshold");
  Vector z(x.size());
  for (int i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i]);
    z[i] = a >= t ? (x[i] > 0.0 ? a - t : -(a - t)) : 0.0;
  }
  return z;
}

ProxResult prox_excl_norm(const Vector& x, const GroupPartition& part, double newton_tol) {
  if (x.size() != part.dim()) throw std::invalid_argument("prox: dimension mismatch");
  if (!x.allFinite()) throw std::invalid_argument("prox: non-finite input");

  const int ng = part.num_groups();
  ProxResult res;
  res.certificate.thresholds.assign(ng, 0.0);
  res.certificate.active_sets.resize(ng);
  res.certificate.counts.assign(ng, 0);

  // Inside the dual unit ball the projection is the identity and the prox
  // vanishes; report the degenerate eta = 0 certificate.
  if (excl_dual_norm(x, part) <= 1.0) {
    res.z = Vector::Zero(x.size());
    res.projection = x;
    res.certificate.eta = 0.0;
    res.certificate.eta_applicable = false;
    for (int g = 0; g < ng; ++g) {
      double linf = 0.0;
      for (int i : part.group(g)) linf = std::max(linf, std::abs(x[i]));
      res.certificate.thresholds[g] = linf;
      if (linf > 0.0) {
        for (int i : part.group(g))
          if (std::abs(x[i]) >= linf) res.certificate.active_sets[g].push_back(i);
        res.certificate.counts[g] =
            static_cast<int>(res.certificate.active_sets[g].size());
      }
    }
    return res;
  }

  // Ladders for the nonzero groups; all-zero groups keep threshold 0.
  std::vector<GroupLadder> ladders;
  std::vector<int> ladder_group;
  for (int g = 0; g < ng; ++g) {
    GroupLadder lad;
    lad.order = part.group(g);
    std::stable_sort(lad.order.begin(), lad.order.end(), [&](int a, int b) {
      return std::abs(x[a]) > std::abs(x[b]);
    });
    if (std::abs(x[lad.order.front()]) == 0.0) continue;
    lad.prefix.resize(lad.order.size() + 1, 0.0);
    for (size_t k = 0; k < lad.order.size(); ++k)
      lad.prefix[k + 1] = lad.prefix[k] + std::abs(x[lad.order[k]]);
    lad.count = 1;
    ladder_group.push_back(g);
    ladders.push_back(std::move(lad));
  }

  // Waterfilling: grow one active entry at a time, always in the group whose
  // change-of-piece boundary sits nearest (below) the current multiplier.
  double eta = solve_eta(ladders, 0.0, newton_tol);
  int total_active = static_cast<int>(ladders.size());
  const int max_steps = part.dim() + 1;
  for (int step = 0;; ++step) {
    if (step > max_steps)
      throw std::runtime_error("prox: activation loop exceeded the entry count");
    int pick = -1;
    double best_boundary = -std::numeric_limits<double>::infinity();
    for (size_t l = 0; l < ladders.size(); ++l) {
      const double boundary = ladders[l].piece_boundary(x);
      if (eta >= boundary && boundary > best_boundary) {
        best_boundary = boundary;
        pick = static_cast<int>(l);
      }
    }
    if (pick < 0) break;  // every group satisfies its bracket
    ladders[pick].count += 1;
    ++total_active;
    eta = solve_eta(ladders, eta, newton_tol);
  }
  (void)total_active;

  res.certificate.eta = eta;
  res.certificate.eta_applicable = true;
  res.z = x;
  for (size_t l = 0; l < ladders.size(); ++l) {
    const auto& lad = ladders[l];
    const int g = ladder_group[l];
    const double t = lad.sum() / (lad.count + eta);
    res.certificate.thresholds[g] = t;
    res.certificate.counts[g] = lad.count;
    auto& active = res.certificate.active_sets[g];
    active.assign(lad.order.begin(), lad.order.begin() + lad.count);
    std::sort(active.begin(), active.end());
    for (int i : part.group(g)) {
      const double a = std::abs(x[i]);
      res.z[i] = a >= t ? (x[i] > 0.0 ? a - t : -(a - t)) : 0.0;
    }
  }
  res.projection = x - res.z;
  return res;
}

ProxResult prox_excl_norm_scaled(const Vector& x, double scale,
                                 const GroupPartition& part, double newton_tol) {
  if (scale <= 0.0) throw std::invalid_argument("prox: scale must be positive");
  ProxResult inner = prox_excl_norm(x / scale, part, newton_tol);
  ProxResult res;
  res.z = scale * inner.z;
  res.projection = x - res.z;
  res.certificate = std::move(inner.certificate);
  for (double& t : res.certificate.thresholds) t *= scale;
  return res;
}

Vector project_dual_ball(const Vector& x, const GroupPartition& part) {
  return prox_excl_norm(x, part).projection;
}

}  // namespace exclasso
