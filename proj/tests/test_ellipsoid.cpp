#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "psell/ellipsoid.hpp"
#include "psell/json_io.hpp"
#include "psell/sampling.hpp"

using namespace psell;

TEST_CASE("domain validation") {
  CHECK_NOTHROW(PseudoEllipsoid(2, {}));
  CHECK_NOTHROW(PseudoEllipsoid(3, {2, 3}));
  CHECK_THROWS_AS(PseudoEllipsoid(2, {1}), std::invalid_argument);
  CHECK_THROWS_AS(PseudoEllipsoid(1, {2, 2}), std::invalid_argument);
}

TEST_CASE("rho on pinned points") {
  const PseudoEllipsoid ball(2, {});
  const cvec sphere{cplx(0.6), cplx(0.8)};
  CHECK(ball.rho(sphere) == doctest::Approx(0.0).epsilon(1e-15));

  const PseudoEllipsoid e22(2, {2});
  const cvec mid{cplx(0.5), cplx(0.5)};
  CHECK(e22.rho(mid) == doctest::Approx(-0.6875));
  const cvec pole{cplx(0.0), cplx(1.0)};
  CHECK(e22.rho(pole) == 0.0);
}

TEST_CASE("covering on pinned points") {
  const PseudoEllipsoid e22(2, {2});
  const cvec z{cplx(0.5), cplx(0.5)};
  const cvec w = e22.covering(z);
  CHECK(w[0] == cplx(0.5));
  CHECK(w[1] == cplx(0.25));

  const PseudoEllipsoid e323(3, {2, 3});
  const cvec z3{cplx(0.1), cplx(0.2), cplx(0.3)};
  const cvec w3 = e323.covering(z3);
  CHECK(std::abs(w3[0] - cplx(0.1)) == 0.0);
  CHECK(std::abs(w3[1] - cplx(0.04)) < 1e-16);
  CHECK(std::abs(w3[2] - cplx(0.027)) < 1e-16);

  const cvec ztail0{cplx(0.4, 0.1), cplx(0.0), cplx(0.0)};
  const cvec wt = e323.covering(ztail0);
  CHECK(wt[0] == ztail0[0]);
  CHECK(wt[1] == cplx(0.0));
  CHECK(wt[2] == cplx(0.0));
}

TEST_CASE("rho equals the squared norm of the covering minus one") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> g;
  const PseudoEllipsoid e323(3, {2, 3});
  for (int i = 0; i < 100; ++i) {
    cvec z(3);
    for (cplx& c : z) c = 0.6 * cplx(g(rng), g(rng));
    const cvec w = e323.covering(z);
    CHECK(std::abs(e323.rho(z) - (norm2(w) * norm2(w) - 1.0)) < 1e-12);
  }
}

TEST_CASE("covering jacobian closed form and finite differences") {
  const PseudoEllipsoid e22(2, {2});
  const cvec z{cplx(0.5), cplx(0.5)};
  CHECK(std::abs(e22.covering_jacobian(z) - cplx(1.0)) < 1e-15);
  const cvec z0{cplx(0.9), cplx(0.0)};
  CHECK(e22.covering_jacobian(z0) == cplx(0.0));

  const PseudoEllipsoid e323(3, {2, 3});
  const cvec z3{cplx(0.0), cplx(0.2), cplx(0.3)};
  CHECK(std::abs(e323.covering_jacobian(z3) - cplx(0.108)) < 1e-15);

  // Central differences of the covering, column by column.
  const double h = 1e-5;
  ComplexMatrix jac(3, 3);
  for (int col = 0; col < 3; ++col) {
    cvec zp = z3, zm = z3;
    zp[col] += h;
    zm[col] -= h;
    const cvec wp = e323.covering(zp);
    const cvec wm = e323.covering(zm);
    for (int row = 0; row < 3; ++row) jac(row, col) = (wp[row] - wm[row]) / (2 * h);
  }
  CHECK(std::abs(det(jac) - e323.covering_jacobian(z3)) /
            std::abs(e323.covering_jacobian(z3)) <
        1e-6);
}

TEST_CASE("jacobian zero set is exactly the union of trailing hyperplanes") {
  std::mt19937_64 rng(43);
  const PseudoEllipsoid e323(3, {2, 3});
  for (int i = 0; i < 200; ++i) {
    cvec z = random_interior_point(e323, rng, 0.9);
    if (i % 3 != 2) z[1 + i % 3] = 0.0;
    double min_tail = std::min(std::abs(z[1]), std::abs(z[2]));
    const bool jac_zero = std::abs(e323.covering_jacobian(z)) <= 1e-12;
    CHECK(jac_zero == (min_tail <= 1e-12));
  }
}

TEST_CASE("hermitian eigenvalues by Jacobi rotations") {
  ComplexMatrix h(2, 2);
  h(0, 0) = 2.0;
  h(1, 1) = 2.0;
  h(0, 1) = cplx(0.0, 1.0);
  h(1, 0) = cplx(0.0, -1.0);
  const std::vector<double> ev = hermitian_eigenvalues(h);
  REQUIRE(ev.size() == 2);
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[1] == doctest::Approx(3.0));

  ComplexMatrix d(3, 3);
  d(0, 0) = 5.0;
  d(1, 1) = -1.0;
  d(2, 2) = 0.5;
  const std::vector<double> dv = hermitian_eigenvalues(d);
  CHECK(dv[0] == doctest::Approx(-1.0));
  CHECK(dv[1] == doctest::Approx(0.5));
  CHECK(dv[2] == doctest::Approx(5.0));
}

TEST_CASE("boundary classification at the pinned points") {
  const PseudoEllipsoid e22(2, {2});

  const cvec pole{cplx(0.0), cplx(1.0)};
  const BoundaryPointReport strong = classify_boundary(e22, pole);
  CHECK(strong.classification == BoundaryClass::StronglyPseudoconvex);
  REQUIRE(strong.levi_eigenvalues.size() == 1);
  // Hessian diag(1, 4|z2|^2), complex tangent spanned by e1.
  CHECK(strong.levi_eigenvalues[0] == doctest::Approx(1.0));

  const cvec flat{cplx(1.0), cplx(0.0)};
  const BoundaryPointReport degen = classify_boundary(e22, flat);
  CHECK(degen.classification == BoundaryClass::LeviDegenerate);
  REQUIRE(degen.levi_eigenvalues.size() == 1);
  CHECK(degen.levi_eigenvalues[0] == doctest::Approx(0.0));
}

TEST_CASE("sphere points are strongly pseudoconvex with unit eigenvalues") {
  const PseudoEllipsoid ball(3, {});
  for (const cvec& z : sample_boundary(ball, 7, 10)) {
    const BoundaryPointReport rep = classify_boundary(ball, z);
    CHECK(rep.classification == BoundaryClass::StronglyPseudoconvex);
    REQUIRE(rep.levi_eigenvalues.size() == 2);
    for (double e : rep.levi_eigenvalues) CHECK(e == doctest::Approx(1.0));
  }
}

TEST_CASE("classification rejects off-boundary points") {
  const PseudoEllipsoid e22(2, {2});
  const cvec inside{cplx(0.1), cplx(0.1)};
  CHECK_THROWS_AS((void)classify_boundary(e22, inside), std::invalid_argument);
}

TEST_CASE("levi eigenvalues are real symmetric data") {
  const PseudoEllipsoid e323(3, {2, 3});
  for (const cvec& z : sample_boundary(e323, 11, 40)) {
    const BoundaryPointReport rep = classify_boundary(e323, z);
    // The restricted form is Hermitian positive semidefinite here.
    for (double e : rep.levi_eigenvalues) CHECK(e > -1e-12);
  }
}

TEST_CASE("degeneracy matches vanishing trailing coordinates on mixed samples") {
  const PseudoEllipsoid e323(3, {2, 3});
  std::mt19937_64 rng(47);
  std::normal_distribution<double> g;
  int degenerate_seen = 0;
  for (int i = 0; i < 120; ++i) {
    cvec dir(3);
    for (cplx& c : dir) c = cplx(g(rng), g(rng));
    if (i % 3 == 1) dir[1] = 0.0;
    if (i % 3 == 2) dir[2] = 0.0;
    const cvec z = boundary_point_in_direction(e323, dir);
    const BoundaryPointReport rep = classify_boundary(e323, z);
    const bool tail_zero = std::abs(z[1]) <= 1e-12 || std::abs(z[2]) <= 1e-12;
    CHECK((rep.classification == BoundaryClass::LeviDegenerate) == tail_zero);
    degenerate_seen += tail_zero;
    // Cross-check against the smallest restricted eigenvalue.
    CHECK((rep.levi_eigenvalues.front() <= 1e-10) == tail_zero);
  }
  CHECK(degenerate_seen > 30);
}

TEST_CASE("boundary sampling: determinism, residual, sphere radius") {
  const PseudoEllipsoid e22(2, {2});
  const auto a = sample_boundary(e22, 99, 5);
  const auto b = sample_boundary(e22, 99, 5);
  REQUIRE(a.size() == 5);
  for (size_t i = 0; i < a.size(); ++i)
    for (int j = 0; j < 2; ++j) CHECK(a[i][j] == b[i][j]);
  for (const cvec& z : a) CHECK(std::abs(e22.rho(z)) <= 1e-12);

  const PseudoEllipsoid ball(2, {});
  for (const cvec& z : sample_boundary(ball, 3, 5))
    CHECK(std::abs(norm2(z) - 1.0) <= 1e-12);

  CHECK_THROWS_AS((void)sample_boundary(e22, 1, 0), std::invalid_argument);
}

TEST_CASE("domain JSON: round-trip and exponent rejection") {
  const PseudoEllipsoid e323(3, {2, 3});
  const PseudoEllipsoid back = domain_from_json(domain_to_json(e323));
  CHECK(back.n == 3);
  CHECK(back.p == std::vector<int>{2, 3});

  CHECK_THROWS_AS((void)domain_from_json(json{{"n", 2}, {"p", {1}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)domain_from_json(json{{"n", 2}}), std::invalid_argument);
}
