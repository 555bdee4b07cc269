#include <doctest.h>

#include "support/fixtures.hpp"

using namespace nulllda;
using namespace nulllda::testing;

TEST_CASE("counterexample gives W = 0") {
  for (Index d : {4, 5, 10, 50}) {
    for (double alpha : {0.1, 0.5, 0.9}) {
      const auto ce = counterexample<double>(d, alpha);
      const auto f = build_factors(ce.dataset);
      const auto e = eigen_total(f);
      CHECK(e.rank() == 3);
      CHECK(scatter_apply(f, Scatter::Between, ce.sketch).norm() == 0.0);
      const Mat w = fast_null_lda(f, e, ce.sketch);
      CHECK(w.norm() == 0.0);
      CHECK(scatter_apply(f, Scatter::Between, w).norm() == 0.0);
      CHECK(certificate(build_projector_basis(e, f), ce.sketch).verdict == Verdict::Singular);
    }
  }
  CHECK_THROWS_AS(counterexample<double>(3, 0.5), Error);
  CHECK_THROWS_AS(counterexample<double>(6, 1.0), Error);
  CHECK_THROWS_AS(counterexample<double>(6, 0.0), Error);
}

TEST_CASE("sketches from the null space of S_T give W = 0") {
  const auto f = build_factors(random_dataset(16, 6, 3, 2));
  const auto e = eigen_total(f);
  const Mat y = complement_apply(e, Mat::Random(16, 2).eval());
  CHECK(fast_null_lda(f, e, y).norm() <= 1e-12 * spectral_norm(f.between) * y.norm());
}

TEST_CASE("fast_null_lda matches the dense pseudo-inverse route") {
  const auto f = build_factors(random_dataset(12, 6, 3, 14));
  const auto e = eigen_total(f);
  const Mat y = Mat::Random(12, 2);
  const Mat dense = dense_pinv(assemble(f.total)) * assemble(f.between) * y;
  CHECK(rel_err(fast_null_lda(f, e, y), dense) <= 1e-10);
  CHECK_THROWS_AS(fast_null_lda(f, e, Mat::Random(12, 3)), Error);
}

TEST_CASE("W = Û1 Ẑ1") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = random_instance(seed);
    const auto f = build_factors(random_dataset(inst.d, inst.n, inst.c, seed));
    const auto e = eigen_total(f);
    const auto b = build_projector_basis(e, f);
    std::mt19937_64 rng(seed);
    const Mat y = gaussian_matrix<double>(inst.d, inst.c - 1, rng);
    const auto cert = certificate(b, y);
    CHECK(rel_err(fast_null_lda(f, e, y), b.u_hat1 * cert.z_hat1) <= 1e-8);
  }
}

TEST_CASE("fit_with_retry") {
  const auto ds = random_dataset(30, 10, 3, 77);
  const auto model = fit_with_retry(ds, {.seed = 0});
  CHECK(model.retries == 0);
  CHECK(model.certificate.verdict == Verdict::Nonsingular);
  CHECK(model.orientation.cols() == 2);
  for (Index j = 0; j < 2; ++j) CHECK(model.orientation.col(j).norm() == doctest::Approx(1.0).epsilon(1e-15));

  const auto again = fit_with_retry(ds, {.seed = 0});
  CHECK(again.orientation == model.orientation);
  CHECK(fit_with_retry(ds, {.seed = 1}).orientation != model.orientation);

  const auto f = build_factors(ds);
  const auto e = eigen_total(f);
  CHECK(rel_err(g_apply(f, e, model.orientation), model.orientation) <= 1e-8);
  CHECK(rel_err(model.reduced_centroids, model.orientation.transpose() * f.class_centroids) <= 1e-15);
}

TEST_CASE("rejected sketches and exhausted retries") {
  const auto ce = counterexample<double>(8, 0.25);
  const auto ctx = prepare_fit(ce.dataset);
  try {
    fit_with_sketch(ctx, ce.sketch);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SketchRejected);
  }

  // A threshold above 1 rejects every sketch, so the budget runs out.
  try {
    fit_with_retry(ctx, {.seed = 3, .max_retries = 2, .threshold = 2.0});
    FAIL("expected exhaustion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RetriesExhausted);
  }
}

TEST_CASE("adversarial sketches") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = random_instance(seed + 500);
    const auto f = build_factors(random_dataset(inst.d, inst.n, inst.c, seed));
    const auto e = eigen_total(f);
    const auto b = build_projector_basis(e, f);
    const Mat y = adversarial_sketch(b, e, seed + 9000);
    CHECK(numerical_rank(y) == inst.c - 1);
    const Mat w = fast_null_lda(f, e, y);
    const double hb = spectral_norm(f.between);
    CHECK(w.norm() <= 1e-10 * hb * hb * spectral_norm(y));
    CHECK(orientation_rank(f, e, y, w) == 0);
    CHECK(certificate(b, y).verdict == Verdict::Singular);
    CHECK(geometric_check(b, y).singular);
  }
}

TEST_CASE("adversarial sketch needs room") {
  const auto f = build_factors(random_dataset(6, 6, 5, 1));
  const auto e = eigen_total(f);
  const auto b = build_projector_basis(e, f);
  CHECK_THROWS_AS(adversarial_sketch(b, e, 0), Error);
}

TEST_CASE("works in other scalar types") {
  const auto ce = counterexample<long double>(6, 0.5L);
  const auto ctx = prepare_fit(ce.dataset);
  CHECK(fast_null_lda(ctx.factors, ctx.eigen, ce.sketch).norm() == 0.0L);

  Matrix<float> x = testing::random_dataset(12, 5, 2, 4).data().cast<float>();
  const LabeledDataset<float> ds(x, {"a", "b", "a", "b", "a"});
  const auto model = fit_with_retry(ds, {.seed = 2});
  CHECK(model.certificate.verdict == Verdict::Nonsingular);
}
