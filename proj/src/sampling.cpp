#include "psell/sampling.hpp"

#include <cmath>
#include <numbers>

#include "psell/lift.hpp"

namespace psell {

cvec random_ball_point(int n, std::mt19937_64& rng, double max_radius) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  cvec z(n);
  double nn = 0.0;
  do {
    for (cplx& c : z) {
      const double re = g(rng);
      const double im = g(rng);
      c = cplx(re, im);
    }
    nn = norm2(z);
  } while (nn < 1e-9);
  const double r = max_radius * std::pow(u(rng), 1.0 / (2.0 * n));
  for (cplx& c : z) c *= r / nn;
  return z;
}

cvec random_interior_point(const PseudoEllipsoid& domain, std::mt19937_64& rng,
                           double max_radial) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  cvec dir(domain.n);
  double nn = 0.0;
  do {
    for (cplx& c : dir) {
      const double re = g(rng);
      const double im = g(rng);
      c = cplx(re, im);
    }
    nn = norm2(dir);
  } while (nn < 1e-9);
  cvec z = boundary_point_in_direction(domain, dir);
  const double r = max_radial * std::pow(u(rng), 1.0 / (2.0 * domain.n));
  for (cplx& c : z) c *= r;
  return z;
}

BallAutomorphism random_block_automorphism(const PseudoEllipsoid& domain,
                                           std::uint64_t seed, double scale) {
  const int n = domain.n;
  const int m = domain.head_dim();

  std::mt19937_64 rng(seed ^ 0xda3e39cb94b95bdbull);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);

  BlockDecomposition dec;
  dec.n = n;
  dec.k = domain.k();
  if (m > 0) {
    dec.core = random_group_element(m, seed, scale).m;
  } else {
    dec.core = ComplexMatrix::identity(1);
  }
  dec.theta.resize(domain.k());
  for (double& th : dec.theta) th = angle(rng);
  return BallAutomorphism::from_matrix(dec.bordered(), n, 1e-9);
}

BallAutomorphism random_extendible_automorphism(const PseudoEllipsoid& domain,
                                                std::uint64_t seed, double scale) {
  const BallAutomorphism block = random_block_automorphism(domain, seed, scale);
  const std::vector<PermutationCertificate> certs = enumerate_certificates(domain);
  if (certs.size() <= 1) return block;
  std::mt19937_64 rng(seed ^ 0xc2b2ae3d27d4eb4full);
  std::uniform_int_distribution<size_t> pick(0, certs.size() - 1);
  const PermutationCertificate& cert = certs[pick(rng)];
  // The permutation straightens the result back into block form, so this
  // map is extendible but not hyperplane-preserving as it stands.
  const ComplexMatrix rep =
      su_normalize(permutation_matrix(cert.inverse()) * block.rep.m, domain.n);
  return BallAutomorphism::from_matrix(rep, domain.n, 1e-9);
}

}  // namespace psell
