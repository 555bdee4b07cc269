#include <doctest.h>

#include "support/fixtures.hpp"

#include <numbers>

using namespace nulllda;
using namespace nulllda::testing;

namespace {

struct Prepared {
  ScatterFactors<double> f;
  TotalScatterEigen<double> e;
  ProjectorBasis<double> b;
};

Prepared prepare(const LabeledDataset<double>& ds) {
  auto f = build_factors(ds);
  auto e = eigen_total(f);
  auto b = build_projector_basis(e, f);
  return {std::move(f), std::move(e), std::move(b)};
}

}  // namespace

TEST_CASE("Y = M gives the Gram matrix of M") {
  const auto p = prepare(random_dataset(15, 7, 4, 3));
  const Mat& m = p.b.certificate_basis;
  const auto rep = certificate(p.b, m);
  CHECK(rel_err(rep.z_hat1, m.transpose() * m) <= 1e-14);
  CHECK(rep.verdict == Verdict::Nonsingular);

  const auto geo = geometric_check(p.b, m);
  CHECK(geo.largest_angle <= 1e-12);
  CHECK_FALSE(geo.singular);
}

TEST_CASE("counterexample certificate is exactly zero") {
  const auto ce = counterexample<double>(10, 0.5);
  const auto p = prepare(ce.dataset);
  const auto rep = certificate(p.b, ce.sketch);
  CHECK(rep.z_hat1.rows() == 1);
  CHECK(rep.z_hat1(0, 0) == 0.0);
  CHECK(rep.verdict == Verdict::Singular);
}

TEST_CASE("one column orthogonal to span(M)") {
  const auto p = prepare(random_dataset(20, 8, 4, 12));
  const Mat y = mixed_sketch(p.b, 1, 99);
  const auto rep = certificate(p.b, y);
  CHECK(rep.verdict == Verdict::Singular);
  const auto geo = geometric_check(p.b, y);
  CHECK(geo.singular);
  CHECK(std::abs(geo.largest_angle - std::numbers::pi / 2) <= 1e-6);
  // rank(W) drops by exactly one.
  const Mat w = fast_null_lda(p.f, p.e, y);
  CHECK(orientation_rank(p.f, p.e, y, w) == 2);
}

TEST_CASE("random sketches: certificate and geometry agree") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = random_instance(seed);
    const auto p = prepare(random_dataset(inst.d, inst.n, inst.c, seed));
    std::mt19937_64 rng(seed ^ 0xabcdef);
    const Mat y = gaussian_matrix<double>(inst.d, inst.c - 1, rng);
    const auto rep = certificate(p.b, y);
    const auto geo = geometric_check(p.b, y);
    CHECK(rep.verdict == Verdict::Nonsingular);
    CHECK(geo.singular == (rep.verdict == Verdict::Singular));
    CHECK(rep.sigma_min <= rep.sigma_max);
  }
}

TEST_CASE("near-singular verdict sits between the floor and the ratio threshold") {
  const auto p = prepare(random_dataset(20, 8, 3, 4));
  Mat y = p.b.certificate_basis;
  // Shrink one direction of Ẑ1 by 1e-10 relative: not zero, but below 1e-8.
  y.col(1) = y.col(0) + 1e-10 * y.col(1);
  const auto rep = certificate(p.b, y);
  CHECK(rep.verdict == Verdict::NearSingular);
  CHECK(rep.sigma_min > rep.floor);
  CHECK(certificate(p.b, y, 1e-12).verdict == Verdict::Nonsingular);
}

TEST_CASE("geometric check rejects rank-deficient Y") {
  const auto p = prepare(random_dataset(12, 6, 3, 1));
  Mat y = Mat::Random(12, 2);
  y.col(1) = 2 * y.col(0);
  try {
    geometric_check(p.b, y);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RankDeficient);
  }
  CHECK_THROWS_AS(certificate(p.b, Mat::Random(12, 3)), Error);
}
