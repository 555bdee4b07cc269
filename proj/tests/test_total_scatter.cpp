#include <doctest.h>

#include "support/fixtures.hpp"

#include <cmath>

using namespace nulllda;
using namespace nulllda::testing;

TEST_CASE("two antipodal samples") {
  Mat x = Mat::Zero(3, 2);
  x(0, 0) = 1;
  x(0, 1) = -1;
  const auto e = eigen_total(build_factors(LabeledDataset<double>(x, {"p", "q"})));
  REQUIRE(e.rank() == 1);
  CHECK(e.sigma1(0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK((e.u1.col(0) - Vec::Unit(3, 0)).norm() <= 1e-15);
}

TEST_CASE("identical samples are rejected") {
  const Mat x = Mat::Ones(4, 3);
  const auto f = build_factors(LabeledDataset<double>(x, {"a", "b", "b"}));
  try {
    eigen_total(f);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateDataset);
  }
}

TEST_CASE("generic n = 4 has rank n - 1") {
  CHECK(eigen_total(build_factors(random_dataset(9, 4, 2, 4))).rank() == 3);
}

TEST_CASE("reconstruction against a dense eigendecomposition") {
  const auto f = build_factors(random_dataset(12, 6, 3, 21));
  const auto e = eigen_total(f);
  REQUIRE(e.rank() == 5);
  const Mat st = assemble(f.total);
  const Mat rebuilt = e.u1 * e.sigma1.array().square().matrix().asDiagonal() * e.u1.transpose();
  CHECK((rebuilt - st).norm() <= 1e-10 * st.norm());

  // Independent route: the d x d eigensolver's nonzero spectrum.
  Eigen::SelfAdjointEigenSolver<Mat> dense(st);
  const Vec top = dense.eigenvalues().tail(5).reverse();
  CHECK((top - e.sigma1.array().square().matrix()).norm() <= 1e-10 * top.norm());
}

TEST_CASE("eigenbasis invariants on random instances") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = random_instance(seed);
    const auto f = build_factors(random_dataset(inst.d, inst.n, inst.c, seed));
    const auto e = eigen_total(f);
    REQUIRE(e.rank() == inst.n - 1);
    CHECK((e.u1.transpose() * e.u1 - Mat::Identity(e.rank(), e.rank())).norm() <= 1e-12);
    CHECK(e.sigma1.minCoeff() > 0);
    for (Index i = 1; i < e.rank(); ++i) CHECK(e.sigma1(i) <= e.sigma1(i - 1));

    const Mat lhs = scatter_apply(f, Scatter::Total, e.u1);
    const Mat rhs = e.u1 * e.sigma1.array().square().matrix().asDiagonal();
    CHECK((lhs - rhs).norm() <= 1e-10 * rhs.norm());

    // Sign convention: first non-negligible entry of each column is positive.
    for (Index j = 0; j < e.rank(); ++j) {
      Index i = 0;
      while (std::abs(e.u1(i, j)) <= 1e-8 * e.u1.col(j).cwiseAbs().maxCoeff()) ++i;
      CHECK(e.u1(i, j) > 0);
    }
  }
}

TEST_CASE("pseudo-inverse action matches dense pinv") {
  const auto f = build_factors(random_dataset(12, 6, 3, 8));
  const auto e = eigen_total(f);
  const Mat v = Mat::Random(12, 2);
  const Mat dense = dense_pinv(assemble(f.total)) * v;
  CHECK(rel_err(pinv_apply(e, v), dense) <= 1e-10);
  CHECK((e.u1.transpose() * complement_apply(e, v)).norm() <= 1e-13 * v.norm());
}
