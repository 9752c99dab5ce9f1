#include "psell/ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace psell {

PseudoEllipsoid::PseudoEllipsoid(int ambient_dim, std::vector<int> exponents)
    : n(ambient_dim), p(std::move(exponents)) {
  if (n < 1) throw std::invalid_argument("domain: ambient dimension must be >= 1");
  if (static_cast<int>(p.size()) > n)
    throw std::invalid_argument("domain: more exponents than coordinates");
  for (int e : p)
    if (e < 2) throw std::invalid_argument("domain: every exponent must be >= 2");
}

double PseudoEllipsoid::rho(std::span<const cplx> z) const {
  if (static_cast<int>(z.size()) != n)
    throw std::invalid_argument("rho: point dimension mismatch");
  const int m = head_dim();
  double s = -1.0;
  for (int i = 0; i < m; ++i) s += std::norm(z[i]);
  for (int j = 0; j < k(); ++j) s += std::pow(std::norm(z[m + j]), exponent(j));
  return s;
}

cvec PseudoEllipsoid::covering(std::span<const cplx> z) const {
  if (static_cast<int>(z.size()) != n)
    throw std::invalid_argument("covering: point dimension mismatch");
  const int m = head_dim();
  cvec w(z.begin(), z.end());
  for (int j = 0; j < k(); ++j) w[m + j] = std::pow(z[m + j], exponent(j));
  return w;
}

cplx PseudoEllipsoid::covering_jacobian(std::span<const cplx> z) const {
  if (static_cast<int>(z.size()) != n)
    throw std::invalid_argument("covering_jacobian: point dimension mismatch");
  const int m = head_dim();
  cplx j = 1.0;
  for (int t = 0; t < k(); ++t) {
    const int e = exponent(t);
    j *= static_cast<double>(e) * std::pow(z[m + t], e - 1);
  }
  return j;
}

std::vector<double> hermitian_eigenvalues(ComplexMatrix h) {
  if (!h.square()) throw std::invalid_argument("hermitian_eigenvalues: not square");
  const int n = h.rows;
  if (n == 0) return {};

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += std::norm(h(i, j));
    if (off < 1e-28) break;

    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const cplx g = h(p, q);
        const double ag = std::abs(g);
        if (ag < 1e-300) continue;
        // Phase so the pivot becomes real, then a classic 2x2 rotation.
        const cplx u = std::polar(1.0, -std::arg(g));
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        const double tau = (aqq - app) / (2.0 * ag);
        double t;
        if (tau == 0.0)
          t = 1.0;
        else
          t = (tau > 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Columns: col_p' = c col_p - s u col_q ; col_q' = s col_p + c u col_q.
        for (int i = 0; i < n; ++i) {
          const cplx hip = h(i, p), hiq = h(i, q);
          h(i, p) = c * hip - s * (u * hiq);
          h(i, q) = s * hip + c * (u * hiq);
        }
        // Rows with the adjoint rotation.
        for (int j = 0; j < n; ++j) {
          const cplx hpj = h(p, j), hqj = h(q, j);
          h(p, j) = c * hpj - s * (std::conj(u) * hqj);
          h(q, j) = s * hpj + c * (std::conj(u) * hqj);
        }
      }
  }

  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = h(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

BoundaryPointReport classify_boundary(const PseudoEllipsoid& domain,
                                      std::span<const cplx> z) {
  const double r = domain.rho(z);
  if (std::abs(r) > 1e-10)
    throw std::invalid_argument("classify_boundary: point is not on the boundary");

  const int n = domain.n;
  const int m = domain.head_dim();

  BoundaryPointReport rep;
  rep.point.assign(z.begin(), z.end());
  rep.rho = r;

  // Holomorphic gradient and the (diagonal) complex Hessian of rho.
  rep.gradient.resize(n);
  std::vector<double> hess(n);
  for (int i = 0; i < m; ++i) {
    rep.gradient[i] = std::conj(z[i]);
    hess[i] = 1.0;
  }
  for (int j = 0; j < domain.k(); ++j) {
    const int e = domain.exponent(j);
    const cplx zt = z[m + j];
    rep.gradient[m + j] =
        static_cast<double>(e) * std::pow(zt, e - 1) * std::pow(std::conj(zt), e);
    hess[m + j] = static_cast<double>(e) * e * std::pow(std::norm(zt), e - 1);
  }

  // Orthonormal basis of the complex tangent space: the Hermitian-orthogonal
  // complement of conj(gradient).
  cvec normal(n);
  for (int i = 0; i < n; ++i) normal[i] = std::conj(rep.gradient[i]);
  const double nn = norm2(normal);
  for (cplx& v : normal) v /= nn;

  std::vector<cvec> basis;
  for (int i = 0; i < n && static_cast<int>(basis.size()) < n - 1; ++i) {
    cvec v(n, cplx(0.0));
    v[i] = 1.0;
    cplx proj = 0.0;
    for (int l = 0; l < n; ++l) proj += v[l] * std::conj(normal[l]);
    for (int l = 0; l < n; ++l) v[l] -= proj * normal[l];
    for (const cvec& b : basis) {
      cplx pb = 0.0;
      for (int l = 0; l < n; ++l) pb += v[l] * std::conj(b[l]);
      for (int l = 0; l < n; ++l) v[l] -= pb * b[l];
    }
    const double vn = norm2(v);
    if (vn < 1e-8) continue;
    for (cplx& c : v) c /= vn;
    basis.push_back(std::move(v));
  }

  const int tdim = static_cast<int>(basis.size());
  ComplexMatrix levi(tdim, tdim);
  for (int a = 0; a < tdim; ++a)
    for (int b = 0; b < tdim; ++b) {
      cplx s = 0.0;
      for (int l = 0; l < n; ++l) s += hess[l] * basis[a][l] * std::conj(basis[b][l]);
      levi(a, b) = s;
    }
  rep.levi_eigenvalues = hermitian_eigenvalues(levi);

  bool degenerate = false;
  for (int j = 0; j < domain.k(); ++j)
    if (std::abs(z[m + j]) <= 1e-12) degenerate = true;
  rep.classification =
      degenerate ? BoundaryClass::LeviDegenerate : BoundaryClass::StronglyPseudoconvex;
  return rep;
}

cvec boundary_point_in_direction(const PseudoEllipsoid& domain,
                                 std::span<const cplx> direction) {
  if (static_cast<int>(direction.size()) != domain.n)
    throw std::invalid_argument("boundary solve: direction dimension mismatch");
  if (norm2(direction) < 1e-12)
    throw std::invalid_argument("boundary solve: zero direction");

  auto at = [&](double t) {
    cvec z(direction.begin(), direction.end());
    for (cplx& c : z) c *= t;
    return z;
  };

  double hi = 1.0;
  int guard = 0;
  while (domain.rho(at(hi)) < 0.0) {
    hi *= 2.0;
    if (++guard > 300) throw std::runtime_error("boundary solve: no bracket found");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (domain.rho(at(mid)) < 0.0 ? lo : hi) = mid;
  }
  return at(0.5 * (lo + hi));
}

std::vector<cvec> sample_boundary(const PseudoEllipsoid& domain, std::uint64_t seed,
                                  int count) {
  if (count < 1) throw std::invalid_argument("sample_boundary: count must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cvec> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    cvec dir(domain.n);
    for (cplx& c : dir) {
      const double re = g(rng);
      const double im = g(rng);
      c = cplx(re, im);
    }
    if (norm2(dir) < 1e-6) continue;
    out.push_back(boundary_point_in_direction(domain, dir));
  }
  return out;
}

}  // namespace psell
