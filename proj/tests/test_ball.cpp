#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "psell/ball.hpp"
#include "psell/ellipsoid.hpp"
#include "psell/sampling.hpp"

using namespace psell;

namespace {

// Hyperbolic boost with entries 1.25/0.75 in the (z1, last) plane; fixes z2.
ComplexMatrix boost3() {
  ComplexMatrix m = ComplexMatrix::identity(3);
  m(0, 0) = 1.25;
  m(0, 2) = 0.75;
  m(2, 0) = 0.75;
  m(2, 2) = 1.25;
  return m;
}

// Same boost moved into the (z2, last) plane; does not fix {z2 = 0}.
ComplexMatrix tail_boost3() {
  ComplexMatrix m = ComplexMatrix::identity(3);
  m(1, 1) = 1.25;
  m(1, 2) = 0.75;
  m(2, 1) = 0.75;
  m(2, 2) = 1.25;
  return m;
}

double max_dist(std::span<const cplx> a, std::span<const cplx> b) {
  double w = 0.0;
  for (size_t i = 0; i < a.size(); ++i) w = std::max(w, std::abs(a[i] - b[i]));
  return w;
}

}  // namespace

TEST_CASE("apply: identity, interior image, boundary fixed point") {
  const auto id = BallAutomorphism::identity(2);
  const cvec z{cplx(0.3, 0.0), cplx(0.0, 0.4)};
  CHECK(max_dist(id.apply(z), z) == 0.0);

  const auto f = BallAutomorphism::from_matrix(boost3(), 2);
  const cvec origin{0.0, 0.0};
  const cvec img = f.apply(origin);
  CHECK(std::abs(img[0] - cplx(0.6)) < 1e-15);
  CHECK(std::abs(img[1]) == 0.0);

  const cvec fixed{1.0, 0.0};
  CHECK(max_dist(f.apply(fixed), fixed) < 1e-15);
}

TEST_CASE("apply rejects points far outside the closed ball") {
  const auto id = BallAutomorphism::identity(2);
  const cvec outside{2.0, 0.0};
  CHECK_THROWS_AS((void)id.apply(outside), std::invalid_argument);
}

TEST_CASE("apply flags a corrupted representative") {
  // A zero matrix never certifies; feed it in directly to hit the
  // degenerate homogeneous coordinate guard.
  const BallAutomorphism corrupt{SpecialUnitaryMatrix{2, ComplexMatrix(3, 3), 0.0}};
  const cvec z{0.1, 0.1};
  CHECK_THROWS_AS((void)corrupt.apply(z), std::runtime_error);
}

TEST_CASE("apply preserves interior and sphere") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    const auto f = BallAutomorphism{random_group_element(3, 500 + i, 0.6)};
    const cvec z = random_ball_point(3, rng, 0.97);
    CHECK(norm2(f.apply(z)) < 1.0);

    cvec s = z;
    const double nn = norm2(s);
    for (cplx& c : s) c /= nn;
    CHECK(std::abs(norm2(f.apply(s)) - 1.0) < 1e-10);
  }
}

TEST_CASE("fundamental ball identity on random samples") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_group_element(2, 600 + i, 0.6);
    const BallAutomorphism f{a};
    const cvec z = random_ball_point(2, rng, 0.95);
    const cvec fz = f.apply(z);
    cplx last = a.m(2, 2);
    for (int l = 0; l < 2; ++l) last += a.m(2, l) * z[l];
    const double lhs = 1.0 - norm2(fz) * norm2(fz);
    const double rhs = (1.0 - norm2(z) * norm2(z)) / std::norm(last);
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("compose and invert") {
  const auto f = BallAutomorphism{random_group_element(3, 9, 0.6)};
  const auto g = BallAutomorphism{random_group_element(3, 10, 0.6)};

  CHECK(projectively_equal(f.compose(f.inverse()).rep,
                           BallAutomorphism::identity(3).rep, 1e-9));
  CHECK(projectively_equal(BallAutomorphism::identity(3).compose(g).rep, g.rep, 1e-12));
  CHECK(check_membership(f.rep.m * g.rep.m, 3, 1e-9).accepted);

  std::mt19937_64 rng(17);
  const cvec z = random_ball_point(3, rng, 0.9);
  CHECK(max_dist(f.compose(g).apply(z), f.apply(g.apply(z))) < 1e-9);
}

TEST_CASE("the boost inverse flips the off-diagonal sign") {
  const auto f = BallAutomorphism::from_matrix(boost3(), 2);
  ComplexMatrix expected = ComplexMatrix::identity(3);
  expected(0, 0) = 1.25;
  expected(0, 2) = -0.75;
  expected(2, 0) = -0.75;
  expected(2, 2) = 1.25;
  CHECK(max_abs_diff(f.inverse().rep.m, expected) < 1e-15);
}

TEST_CASE("composition is associative up to projective equality") {
  for (int i = 0; i < 10; ++i) {
    const auto a = BallAutomorphism{random_group_element(2, 700 + i, 0.6)};
    const auto b = BallAutomorphism{random_group_element(2, 800 + i, 0.6)};
    const auto c = BallAutomorphism{random_group_element(2, 900 + i, 0.6)};
    CHECK(projectively_equal(a.compose(b).compose(c).rep,
                             a.compose(b.compose(c)).rep, 1e-8));
  }
}

TEST_CASE("decompose_block on the bordered boost") {
  const auto f = BallAutomorphism::from_matrix(boost3(), 2);
  const BlockResult res = decompose_block(f, 1);
  REQUIRE(res.ok());
  const BlockDecomposition& dec = *res.dec;
  CHECK(std::abs(dec.A(0, 0) - cplx(1.25)) < 1e-12);
  CHECK(std::abs(dec.b(0) - cplx(0.75)) < 1e-12);
  CHECK(std::abs(dec.c(0) - cplx(0.75)) < 1e-12);
  CHECK(std::abs(dec.d() - cplx(1.25)) < 1e-12);
  CHECK(dec.theta[0] == doctest::Approx(0.0));
}

TEST_CASE("decompose_block reports the violating entry") {
  const auto f = BallAutomorphism::from_matrix(tail_boost3(), 2);
  const BlockResult res = decompose_block(f, 1);
  REQUIRE_FALSE(res.ok());
  CHECK(res.violation == doctest::Approx(0.75));
  CHECK(res.row == 2);
  CHECK(res.col == 3);
  // Cross-check through the action: the slice center leaves the hyperplane.
  const cvec origin{0.0, 0.0};
  CHECK(std::abs(f.apply(origin)[1] - cplx(0.6)) < 1e-15);
}

TEST_CASE("decompose_block on the identity for every protected block") {
  const auto id = BallAutomorphism::identity(3);
  for (int k = 1; k <= 3; ++k) {
    const BlockResult res = decompose_block(id, k);
    REQUIRE(res.ok());
    CHECK(std::abs(res.dec->d() - cplx(1.0)) < 1e-15);
    for (double th : res.dec->theta) CHECK(th == doctest::Approx(0.0));
    for (int i = 0; i < res.dec->head_dim(); ++i) {
      CHECK(std::abs(res.dec->b(i)) == 0.0);
      CHECK(std::abs(res.dec->c(i)) == 0.0);
    }
  }
}

TEST_CASE("decompose_block validates the protected index set") {
  const auto id = BallAutomorphism::identity(3);
  CHECK_NOTHROW((void)decompose_block(id, std::vector<int>{2, 3}));
  CHECK_THROWS_AS((void)decompose_block(id, std::vector<int>{1, 3}),
                  std::invalid_argument);
}

TEST_CASE("denominator values and lower bound") {
  BlockDecomposition triv;
  triv.n = 2;
  triv.k = 1;
  triv.core = ComplexMatrix::identity(2);
  triv.theta = {0.0};
  const cvec any{cplx(0.3, 0.2), 0.0};
  CHECK(triv.denominator(any) == cplx(1.0));

  const auto f = BallAutomorphism::from_matrix(boost3(), 2);
  const BlockDecomposition dec = *decompose_block(f, 1).dec;
  const cvec z0{0.0, 0.0};
  const cvec zneg{-1.0, 0.0};
  CHECK(std::abs(dec.denominator(z0) - cplx(1.25)) < 1e-12);
  CHECK(std::abs(dec.denominator(zneg) - cplx(0.5)) < 1e-12);
}

TEST_CASE("block equivalence with hyperplane preservation, both directions") {
  const PseudoEllipsoid domain(3, {2, 2});
  std::mt19937_64 rng(23);
  for (int i = 0; i < 10; ++i) {
    const BallAutomorphism f = random_block_automorphism(domain, 1000 + i);
    REQUIRE(decompose_block(f, 2).ok());
    for (int t = 1; t <= 2; ++t)
      for (int s = 0; s < 100; ++s) {
        cvec z = random_ball_point(3, rng, 0.9);
        z[t] = 0.0;
        CHECK(std::abs(f.apply(z)[t]) < 1e-9);
      }
  }
  // A generic member moves hyperplane points off the hyperplane.
  const BallAutomorphism g{random_group_element(3, 31, 0.5)};
  REQUIRE_FALSE(decompose_block(g, 2).ok());
  bool moved = false;
  for (int s = 0; s < 100 && !moved; ++s) {
    cvec z = random_ball_point(3, rng, 0.9);
    z[1] = 0.0;
    moved = std::abs(g.apply(z)[1]) > 1e-9;
  }
  CHECK(moved);
}

TEST_CASE("block data reproduces the action and satisfies |d|^2 - |c|^2 = 1") {
  const PseudoEllipsoid domain(3, {2, 2});
  std::mt19937_64 rng(29);
  for (int i = 0; i < 10; ++i) {
    const BallAutomorphism f = random_block_automorphism(domain, 1100 + i);
    const BlockDecomposition dec = *decompose_block(f, 2).dec;

    double c2 = 0.0;
    for (int l = 0; l < dec.head_dim(); ++l) c2 += std::norm(dec.c(l));
    CHECK(std::abs(std::norm(dec.d()) - c2 - 1.0) < 1e-9);

    // The core preserves the lower-signature form with unit determinant.
    const int m = dec.head_dim();
    CHECK(check_membership(dec.core, m, 1e-9).accepted);

    for (int s = 0; s < 20; ++s) {
      const cvec z = random_ball_point(3, rng, 0.9);
      CHECK(max_dist(dec.apply(z), f.apply(z)) < 1e-10);
    }
  }
}
