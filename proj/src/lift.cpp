#include "psell/lift.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace psell {

bool PermutationCertificate::is_identity() const {
  for (size_t i = 0; i < sigma.size(); ++i)
    if (sigma[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<int> PermutationCertificate::inverse() const {
  std::vector<int> inv(sigma.size());
  for (size_t i = 0; i < sigma.size(); ++i) inv[sigma[i]] = static_cast<int>(i);
  return inv;
}

std::vector<PermutationCertificate> enumerate_certificates(const PseudoEllipsoid& domain) {
  const int n = domain.n;
  const int m = domain.head_dim();

  // Trailing indices grouped by exponent value.
  std::map<int, std::vector<int>> groups;
  for (int j = 0; j < domain.k(); ++j) groups[domain.exponent(j)].push_back(m + j);

  std::vector<std::vector<int>> sigmas;
  std::vector<int> base(n);
  for (int i = 0; i < n; ++i) base[i] = i;
  sigmas.push_back(base);

  for (auto& [exp, idx] : groups) {
    std::vector<int> arrangement = idx;
    std::sort(arrangement.begin(), arrangement.end());
    std::vector<std::vector<int>> grown;
    do {
      for (const std::vector<int>& s : sigmas) {
        std::vector<int> t = s;
        for (size_t a = 0; a < idx.size(); ++a) t[idx[a]] = arrangement[a];
        grown.push_back(std::move(t));
      }
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    sigmas = std::move(grown);
  }

  std::sort(sigmas.begin(), sigmas.end());
  std::vector<PermutationCertificate> out;
  out.reserve(sigmas.size());
  for (std::vector<int>& s : sigmas) out.push_back(PermutationCertificate{std::move(s)});
  return out;
}

namespace {

BallAutomorphism permuted(const PermutationCertificate& cert, const BallAutomorphism& f) {
  const ComplexMatrix m = su_normalize(permutation_matrix(cert.sigma) * f.rep.m, f.dim());
  return BallAutomorphism::from_matrix(m, f.dim(), 1e-8);
}

// A violating sample on a protected hyperplane slice: the slice center
// first, then random slice points.
std::optional<HyperplaneWitness> find_witness(const PseudoEllipsoid& domain,
                                              const BallAutomorphism& f, double tol) {
  const int n = domain.n;
  const int m = domain.head_dim();
  HyperplaneWitness best;
  best.violation = -1.0;
  for (int t = m; t < n; ++t) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(t));
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 64; ++trial) {
      cvec s(n, cplx(0.0));
      if (trial > 0) {
        for (cplx& c : s) c = cplx(g(rng), g(rng));
        const double nn = norm2(s);
        if (nn < 1e-9) continue;
        const double r = 0.15 + 0.7 * (trial / 64.0);
        for (cplx& c : s) c *= r / nn;
        s[t] = 0.0;
      }
      const double v = std::abs(f.apply(s)[t]);
      if (v > best.violation) best = HyperplaneWitness{t, s, v};
      if (v > tol) return best;
    }
  }
  if (best.violation >= 0.0) return best;
  return std::nullopt;
}

}  // namespace

ExtendibilityVerdict check_extendible(const PseudoEllipsoid& domain,
                                      const BallAutomorphism& ftilde) {
  if (ftilde.dim() != domain.n)
    throw std::invalid_argument("check_extendible: dimension mismatch");

  ExtendibilityVerdict verdict;
  for (const PermutationCertificate& cert : enumerate_certificates(domain)) {
    const BallAutomorphism candidate =
        cert.is_identity() ? ftilde : permuted(cert, ftilde);
    if (decompose_block(candidate, domain.k(), 1e-9).ok()) {
      verdict.extendible = true;
      verdict.certificate = cert;
      return verdict;
    }
  }
  verdict.extendible = false;
  verdict.witness = find_witness(domain, ftilde, 1e-8);
  if (!verdict.witness)
    verdict.witness = HyperplaneWitness{domain.head_dim(), cvec(domain.n, cplx(0.0)), 0.0};
  return verdict;
}

cvec EllipsoidAutomorphism::apply(std::span<const cplx> z) const {
  const int n = domain.n;
  const int m = domain.head_dim();
  if (static_cast<int>(z.size()) != n)
    throw std::invalid_argument("lift apply: point dimension mismatch");
  if (domain.rho(z) > 1e-12)
    throw std::invalid_argument("lift apply: point lies outside the closed domain");

  const cplx den = block.denominator(z);
  const cplx dd = block.d();
  const std::vector<int> inv = sigma.inverse();

  cvec out(n);
  for (int i = 0; i < m; ++i) {
    cplx num = block.b(i);
    for (int l = 0; l < m; ++l) num += block.A(i, l) * z[l];
    out[i] = num / den;
  }
  for (int j = 0; j < domain.k(); ++j) {
    const int src = inv[m + j];
    const int slot = src - m;
    const int e = domain.exponent(j);
    // Branch of (c.z_head + d)^{-1/p}: seed root of d times the principal
    // log of den/d, which stays in the right half plane on the closed
    // domain because |c| < |d|.
    const cplx inv_root =
        std::exp(-std::log(den / dd) / static_cast<double>(e)) / root_seed[slot];
    const cplx rot = std::exp(cplx(0.0, block.theta[slot] / e + phases[j]));
    out[m + j] = rot * z[src] * inv_root;
  }
  return out;
}

BallAutomorphism EllipsoidAutomorphism::associated() const {
  const int n = domain.n;
  const int m = domain.head_dim();
  ComplexMatrix full = block.bordered();
  // Free rotations enter the covering image with exponent p_j; apply them
  // on the target side, then undo the permutation.
  ComplexMatrix phase = ComplexMatrix::identity(n + 1);
  for (int j = 0; j < domain.k(); ++j)
    phase(m + j, m + j) = std::polar(1.0, phases[j] * domain.exponent(j));
  const ComplexMatrix perm_back = permutation_matrix(sigma.inverse());
  const ComplexMatrix rep = su_normalize(phase * (perm_back * full), n);
  return BallAutomorphism::from_matrix(rep, n, 1e-8);
}

EllipsoidAutomorphism build_lift(const PseudoEllipsoid& domain,
                                 const ExtendibilityVerdict& verdict,
                                 const BallAutomorphism& ftilde,
                                 const std::optional<std::vector<double>>& theta) {
  if (!verdict.extendible || !verdict.certificate)
    throw std::invalid_argument("build_lift: verdict is not extendible");
  if (ftilde.dim() != domain.n)
    throw std::invalid_argument("build_lift: dimension mismatch");
  if (theta && static_cast<int>(theta->size()) != domain.k())
    throw std::invalid_argument("build_lift: phase vector length must equal k");

  const PermutationCertificate& cert = *verdict.certificate;
  const BallAutomorphism straightened =
      cert.is_identity() ? ftilde : BallAutomorphism::from_matrix(
          su_normalize(permutation_matrix(cert.sigma) * ftilde.rep.m, domain.n), domain.n,
          1e-8);
  BlockResult res = decompose_block(straightened, domain.k(), 1e-9);
  if (!res.ok())
    throw std::invalid_argument("build_lift: certificate does not straighten the map");

  EllipsoidAutomorphism lift{domain, std::move(*res.dec), cert, {}, {}};
  lift.root_seed.resize(domain.k());
  for (int j = 0; j < domain.k(); ++j)
    lift.root_seed[j] = principal_root(lift.block.d(), domain.exponent(j));
  lift.phases = theta ? *theta : std::vector<double>(domain.k(), 0.0);
  return lift;
}

EllipsoidAutomorphism compose_lifts(const EllipsoidAutomorphism& f,
                                    const EllipsoidAutomorphism& g) {
  if (f.domain.n != g.domain.n || f.domain.p != g.domain.p)
    throw std::invalid_argument("compose_lifts: domain mismatch");
  const PseudoEllipsoid& domain = f.domain;
  const int m = domain.head_dim();

  const BallAutomorphism assoc = f.associated().compose(g.associated());
  const ExtendibilityVerdict verdict = check_extendible(domain, assoc);
  if (!verdict.extendible)
    throw std::logic_error("compose_lifts: composite drives a non-extendible map");
  EllipsoidAutomorphism h = build_lift(domain, verdict, assoc);

  if (domain.k() == 0) return h;

  // Both maps cover the same ball automorphism, so on each trailing
  // coordinate they differ by a constant root of unity; read it off at an
  // interior point with nonvanishing trailing coordinates.
  cvec probe(domain.n, cplx(0.0));
  for (int j = 0; j < domain.k(); ++j) probe[m + j] = 0.2;
  const cvec want = f.apply(g.apply(probe));
  const cvec got = h.apply(probe);
  for (int j = 0; j < domain.k(); ++j)
    h.phases[j] = std::arg(want[m + j] / got[m + j]);
  return h;
}

}  // namespace psell
