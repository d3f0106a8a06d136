#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "exclasso/norm.hpp"
#include "exclasso/partition.hpp"
#include "exclasso/rng.hpp"
#include "test_util.hpp"

using namespace exclasso;
using testutil::random_partition;
using testutil::random_vector;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<int>(v.size()));
  int i = 0;
  for (double e : v) x[i++] = e;
  return x;
}

}  // namespace

TEST_CASE("partition construction validates the grouping") {
  CHECK_THROWS_AS(GroupPartition(4, {{0, 1}, {1, 2, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(GroupPartition(4, {{0, 1}, {2}}), std::invalid_argument);
  CHECK_THROWS_AS(GroupPartition(4, {{0, 1}, {}, {2, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(GroupPartition(2, {{0, 1, 2}}), std::invalid_argument);

  GroupPartition part(4, {{0, 2}, {1, 3}});
  CHECK(part.num_groups() == 2);
  CHECK(part.group_of(0) == 0);
  CHECK(part.group_of(3) == 1);
}

TEST_CASE("partition file format is 1-based and rejects bad groupings") {
  auto part = GroupPartition::from_string("1 3\n2 4\n");
  CHECK(part.dim() == 4);
  CHECK(part.group_of(2) == 0);

  CHECK_THROWS_AS(GroupPartition::from_string("1 2\n2 3\n"), std::invalid_argument);
  CHECK_THROWS_AS(GroupPartition::from_string("1 2\n4\n"), std::invalid_argument);
  CHECK_THROWS_AS(GroupPartition::from_string("0 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(GroupPartition::from_string("1 x\n"), std::invalid_argument);

  auto round = GroupPartition::from_string(part.to_string());
  CHECK(round.dim() == part.dim());
  CHECK(round.groups() == part.groups());
}

TEST_CASE("restricted view induces a partition of the support") {
  GroupPartition part(6, {{0, 2, 4}, {1, 3, 5}});
  RestrictedView view(part, {4, 1, 2});
  CHECK(view.support() == std::vector<int>{1, 2, 4});
  CHECK(view.num_groups() == 2);
  // every induced group lies inside exactly one parent group
  for (int g = 0; g < view.num_groups(); ++g)
    for (int j : view.local_group(g))
      CHECK(part.group_of(view.support()[j]) == view.parent_group(g));
  CHECK(view.off_support() == std::vector<int>{0, 3, 5});
  CHECK(view.inactive().empty());

  RestrictedView odd_only(part, {1, 3});
  CHECK(odd_only.inactive() == std::vector<int>{0, 2, 4});
  CHECK(odd_only.off_support() == std::vector<int>{5});

  CHECK_THROWS_AS(RestrictedView(part, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(RestrictedView(part, {6}), std::invalid_argument);
}

TEST_CASE("norm closed form on worked values") {
  GroupPartition part(4, {{0, 2}, {1, 3}});
  CHECK(excl_norm(vec({1, -2, 3, 0}), part) == doctest::Approx(std::sqrt(20.0)));
  CHECK(excl_norm(Vector::Zero(4), part) == 0.0);

  GroupPartition pairs(4, {{0, 3}, {1, 2}});
  CHECK(excl_norm(vec({1, 1, 1, 1}), pairs) == doctest::Approx(std::sqrt(8.0)));

  CHECK_THROWS_AS(excl_norm(Vector::Zero(3), part), std::invalid_argument);
}

TEST_CASE("dual norm closed form on worked values") {
  GroupPartition part(4, {{0, 2}, {1, 3}});
  CHECK(excl_dual_norm(vec({1, -2, 3, 0}), part) == doctest::Approx(std::sqrt(13.0)));
  CHECK(excl_dual_norm(Vector::Zero(4), part) == 0.0);

  GroupPartition singles = GroupPartition::singletons(2);
  CHECK(excl_dual_norm(vec({0.6, 0.8}), singles) == doctest::Approx(1.0));

  CHECK_THROWS_AS(excl_dual_norm(Vector::Zero(5), part), std::invalid_argument);
}

TEST_CASE("restricted norms equal the zero-padded evaluation") {
  GroupPartition part(2, {{0, 1}});
  RestrictedView single(part, {0});
  CHECK(excl_norm_restricted(vec({3}), single) == doctest::Approx(3.0));

  SplitMix64 rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const int p = 2 + static_cast<int>(rng.next_below(10));
    const int ng = 1 + static_cast<int>(rng.next_below(4));
    auto prt = random_partition(rng, p, std::min(ng, p));
    std::vector<int> support;
    for (int i = 0; i < p; ++i)
      if (rng.next_uniform() < 0.5) support.push_back(i);
    if (support.empty()) support.push_back(0);
    RestrictedView view(prt, support);

    Vector xJ = random_vector(rng, view.support_size(), 2.0);
    Vector padded = Vector::Zero(p);
    for (int j = 0; j < view.support_size(); ++j) padded[view.support()[j]] = xJ[j];
    CHECK(excl_norm_restricted(xJ, view) == doctest::Approx(excl_norm(padded, prt)).epsilon(1e-14));

    // full-support restriction is the identity
    std::vector<int> full(p);
    for (int i = 0; i < p; ++i) full[i] = i;
    RestrictedView all(prt, full);
    Vector x = random_vector(rng, p, 2.0);
    CHECK(excl_norm_restricted(x, all) == doctest::Approx(excl_norm(x, prt)).epsilon(1e-14));
    CHECK(excl_dual_norm_restricted(x, all) == doctest::Approx(excl_dual_norm(x, prt)).epsilon(1e-14));

    // dual-restricted vs padded: the padded dual norm counts empty groups as 0,
    // so it matches the restricted value exactly
    CHECK(excl_dual_norm_restricted(xJ, view) ==
          doctest::Approx(excl_dual_norm(padded, prt)).epsilon(1e-14));
  }
}

TEST_CASE("subgradient membership on worked values") {
  GroupPartition one(2, {{0, 1}});
  CHECK(subgradient_check(vec({2, 0}), vec({1, 0.5}), one, 1e-12).ok);
  auto bad = subgradient_check(vec({2, 0}), vec({1, 1.5}), one, 1e-12);
  CHECK_FALSE(bad.ok);
  CHECK(bad.worst_index == 1);
  CHECK(bad.max_violation == doctest::Approx(0.5));

  // x = 0 falls back to the dual-ball membership test
  GroupPartition singles = GroupPartition::singletons(2);
  CHECK(subgradient_check(Vector::Zero(2), vec({0.6, 0.8}), singles, 1e-12).ok);
  CHECK_FALSE(subgradient_check(Vector::Zero(2), vec({0.8, 0.8}), singles, 1e-12).ok);
}

TEST_CASE("canonical subgradient attains the norm and unit dual norm") {
  SplitMix64 rng(23);
  for (int rep = 0; rep < 100; ++rep) {
    const int p = 2 + static_cast<int>(rng.next_below(12));
    auto part = random_partition(rng, p, 1 + static_cast<int>(rng.next_below(4)));
    Vector x = random_vector(rng, p, 3.0);
    for (int i = 0; i < p; ++i)
      if (rng.next_uniform() < 0.3) x[i] = 0.0;
    if (excl_norm(x, part) == 0.0) x[0] = 1.0;

    Vector u = canonical_subgradient(x, part);
    CHECK(subgradient_check(x, u, part, 1e-12).ok);
    CHECK(u.dot(x) == doctest::Approx(excl_norm(x, part)).epsilon(1e-12));
    CHECK(excl_dual_norm(u, part) == doctest::Approx(1.0).epsilon(1e-12));

    // feasibility in the variational maximization: t_G = ||u_G||_inf^2 sums to 1
    double tsum = 0.0;
    bool box_ok = true;
    for (const auto& grp : part.groups()) {
      double linf = 0.0;
      for (int i : grp) linf = std::max(linf, std::abs(u[i]));
      tsum += linf * linf;
      for (int i : grp)
        if (u[i] * u[i] > linf * linf + 1e-15) box_ok = false;
    }
    CHECK(box_ok);
    CHECK(tsum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("norm axioms and duality bounds on random inputs") {
  SplitMix64 rng(37);
  for (int rep = 0; rep < 200; ++rep) {
    const int p = 1 + static_cast<int>(rng.next_below(16));
    auto part = random_partition(rng, p, 1 + static_cast<int>(rng.next_below(std::min(p, 5))));
    Vector x = random_vector(rng, p, 2.0);
    Vector y = random_vector(rng, p, 2.0);
    const double a = 4.0 * rng.next_uniform() - 2.0;

    const double nx = excl_norm(x, part);
    CHECK(excl_norm(x + y, part) <= nx + excl_norm(y, part) + 1e-12);
    CHECK(excl_norm(a * x, part) == doctest::Approx(std::abs(a) * nx).epsilon(1e-12));
    if (x.cwiseAbs().maxCoeff() > 0.0) CHECK(nx > 0.0);

    // l1 sandwich
    const double l1 = x.cwiseAbs().sum();
    CHECK(nx <= l1 + 1e-12);
    CHECK(nx + 1e-12 >= l1 / std::sqrt(static_cast<double>(part.num_groups())));

    // generalized Cauchy-Schwarz
    CHECK(x.dot(y) <= nx * excl_dual_norm(y, part) + 1e-12);
  }
}

TEST_CASE("degenerate partitions reduce to the classic norms") {
  SplitMix64 rng(41);
  for (int rep = 0; rep < 50; ++rep) {
    const int p = 1 + static_cast<int>(rng.next_below(10));
    Vector x = random_vector(rng, p, 5.0);

    GroupPartition one(p, {[&] {
      std::vector<int> g(p);
      for (int i = 0; i < p; ++i) g[i] = i;
      return g;
    }()});
    CHECK(excl_norm(x, one) == doctest::Approx(x.cwiseAbs().sum()).epsilon(1e-14));
    CHECK(excl_dual_norm(x, one) == doctest::Approx(x.cwiseAbs().maxCoeff()).epsilon(1e-14));

    auto singles = GroupPartition::singletons(p);
    CHECK(excl_norm(x, singles) == doctest::Approx(x.norm()).epsilon(1e-12));
    CHECK(excl_dual_norm(x, singles) == doctest::Approx(x.norm()).epsilon(1e-12));
  }
}

TEST_CASE("signed support with tolerance") {
  auto s = signed_support(vec({3, -0.5, 0}), 0.0);
  CHECK(s.entries == std::vector<std::int8_t>{1, -1, 0});

  auto t = signed_support(vec({1e-12, -1}), 1e-9);
  CHECK(t.entries == std::vector<std::int8_t>{0, -1});

  CHECK(s.hamming_distance(signed_support(vec({2, 1, 0}), 0.0)) == 1);
  CHECK_THROWS_AS(signed_support(vec({1}), -1.0), std::invalid_argument);
}
