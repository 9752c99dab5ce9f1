#include "psell/charts.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace psell {

namespace {

constexpr double kLocusTol = 1e-10;

// Displacement bounds for the trailing components of driver ∘ covering over
// a ball of the given radius: the covering stretches by at most max p_j on
// the closed domain, and each Moebius component is bounded through the
// quotient rule with numerator and denominator localized around the image
// of the center. Returns one margin per trailing coordinate; empty when the
// radius is too large to control the denominator.
std::vector<double> image_margins(const PseudoEllipsoid& domain,
                                  const BallAutomorphism& driver,
                                  std::span<const cplx> center, double radius) {
  const int n = domain.n;
  const int m = domain.head_dim();
  const ComplexMatrix& a = driver.rep.m;
  const cvec w = domain.covering(center);

  int pmax = 1;
  for (int j = 0; j < domain.k(); ++j) pmax = std::max(pmax, domain.exponent(j));
  const double stretch = pmax * radius;

  auto row_head_norm = [&](int i) {
    double s = 0.0;
    for (int l = 0; l < n; ++l) s += std::norm(a(i, l));
    return std::sqrt(s);
  };
  auto row_value = [&](int i) {
    cplx s = a(i, n);
    for (int l = 0; l < n; ++l) s += a(i, l) * w[l];
    return s;
  };

  const double den_head = row_head_norm(n);
  const double den_center = std::abs(row_value(n));
  const double den_min = den_center - den_head * stretch;
  if (den_min <= 1e-6) return {};
  const double den_max = den_center + den_head * stretch;

  std::vector<double> margins(domain.k());
  for (int j = 0; j < domain.k(); ++j) {
    const int t = m + j;
    const double num_head = row_head_norm(t);
    const double num_max = std::abs(row_value(t)) + num_head * stretch;
    const double grad = (num_head * den_max + num_max * den_head) / (den_min * den_min);
    margins[j] = pmax * grad * radius;
  }
  return margins;
}

cvec driver_image(const LocalAutomorphismChart& chart, std::span<const cplx> z) {
  return chart.driver.apply(chart.domain.covering(z));
}

cplx nearest_root(const cplx& value, int order, const cplx& previous) {
  const cplx base = principal_root(value, order);
  cplx best = base;
  double best_dist = std::abs(base - previous);
  for (int m = 1; m < order; ++m) {
    const cplx cand =
        base * std::polar(1.0, 2.0 * std::numbers::pi * m / order);
    const double d = std::abs(cand - previous);
    if (d < best_dist) {
      best_dist = d;
      best = cand;
    }
  }
  return best;
}

}  // namespace

LocalAutomorphismChart make_chart(const PseudoEllipsoid& domain,
                                  const BallAutomorphism& driver,
                                  std::span<const cplx> base, double radius) {
  if (driver.dim() != domain.n)
    throw std::invalid_argument("make_chart: dimension mismatch");
  if (static_cast<int>(base.size()) != domain.n)
    throw std::invalid_argument("make_chart: base dimension mismatch");
  if (!(radius > 0.0))
    throw std::invalid_argument("make_chart: radius must be positive");
  if (domain.rho(base) > 1e-12)
    throw std::invalid_argument("make_chart: base lies outside the closed domain");

  const int m = domain.head_dim();
  LocalAutomorphismChart chart{domain, driver, cvec(base.begin(), base.end()), radius,
                               {}, {}};
  chart.base_image = driver.apply(domain.covering(base));

  for (int j = 0; j < domain.k(); ++j) {
    if (std::abs(base[m + j]) <= std::max(1e-8, radius)) {
      std::ostringstream os;
      os << "make_chart: chart ball meets the covering branch locus {z_" << m + j + 1
         << " = 0}";
      throw ChartError(os.str());
    }
  }
  const std::vector<double> margins = image_margins(domain, driver, base, radius);
  if (domain.k() > 0 && margins.empty())
    throw ChartError("make_chart: radius too large to bound the image displacement");
  for (int j = 0; j < domain.k(); ++j) {
    if (std::abs(chart.base_image[m + j]) <= std::max(1e-8, margins[j])) {
      std::ostringstream os;
      os << "make_chart: chart ball meets the image branch locus {w_" << m + j + 1
         << " = 0}";
      throw ChartError(os.str());
    }
  }

  chart.branch_state.resize(domain.k());
  for (int j = 0; j < domain.k(); ++j)
    chart.branch_state[j] =
        principal_root(chart.base_image[m + j], domain.exponent(j));
  return chart;
}

cvec eval_local(const LocalAutomorphismChart& chart, std::span<const cplx> z) {
  const PseudoEllipsoid& domain = chart.domain;
  const int n = domain.n;
  const int m = domain.head_dim();
  if (static_cast<int>(z.size()) != n)
    throw std::invalid_argument("eval_local: point dimension mismatch");
  cvec diff(n);
  for (int i = 0; i < n; ++i) diff[i] = z[i] - chart.base[i];
  if (norm2(diff) >= chart.radius)
    throw std::invalid_argument("eval_local: point lies outside the chart");
  if (domain.rho(z) > 1e-12)
    throw std::invalid_argument("eval_local: point lies outside the closed domain");

  const cvec w = driver_image(chart, z);
  cvec out(n);
  for (int i = 0; i < m; ++i) out[i] = w[i];
  for (int j = 0; j < domain.k(); ++j) {
    const int e = domain.exponent(j);
    // Within the chart the image stays in a disk around the base image that
    // excludes 0, so the principal log of the ratio is the continuous branch.
    const cplx ratio = w[m + j] / chart.base_image[m + j];
    out[m + j] = chart.branch_state[j] * std::exp(std::log(ratio) / static_cast<double>(e));
  }
  return out;
}

std::vector<MonodromyResult> continue_along_loop(const LocalAutomorphismChart& chart,
                                                 const std::vector<cvec>& loop,
                                                 int steps) {
  const PseudoEllipsoid& domain = chart.domain;
  const int n = domain.n;
  const int m = domain.head_dim();
  const int k = domain.k();
  if (loop.size() < 2)
    throw std::invalid_argument("continue_along_loop: loop needs at least two points");
  if (steps < 1) throw std::invalid_argument("continue_along_loop: steps must be >= 1");
  for (const cvec& pt : loop)
    if (static_cast<int>(pt.size()) != n)
      throw std::invalid_argument("continue_along_loop: loop point dimension mismatch");
  auto close_to_base = [&](const cvec& pt) {
    cvec d(n);
    for (int i = 0; i < n; ++i) d[i] = pt[i] - chart.base[i];
    return norm2(d) <= 1e-9;
  };
  if (!close_to_base(loop.front()) || !close_to_base(loop.back()))
    throw std::invalid_argument("continue_along_loop: loop must start and end at the base");

  // Sample the polyline at `steps` points by arc length; steps is the
  // resolution budget for the whole loop, so a small cap genuinely coarsens
  // the continuation.
  const int nseg = static_cast<int>(loop.size()) - 1;
  std::vector<double> cumulative(nseg + 1, 0.0);
  for (int s = 0; s < nseg; ++s) {
    cvec d(n);
    for (int i = 0; i < n; ++i) d[i] = loop[s + 1][i] - loop[s][i];
    cumulative[s + 1] = cumulative[s] + norm2(d);
  }
  const double total = cumulative[nseg];
  if (total <= 0.0)
    throw std::invalid_argument("continue_along_loop: loop has zero length");

  cvec roots = chart.branch_state;
  cvec w_prev(chart.base_image.begin() + m, chart.base_image.end());
  std::vector<double> accum(k, 0.0);

  auto advance_to = [&](const cvec& z) {
    if (domain.rho(z) > 1e-9)
      throw std::invalid_argument("continue_along_loop: loop leaves the closed domain");
    for (int j = 0; j < k; ++j)
      if (std::abs(z[m + j]) <= kLocusTol)
        throw LocusHitError("continue_along_loop: loop touches the covering branch locus");
    const cvec w_full = driver_image(chart, z);
    for (int j = 0; j < k; ++j) {
      const cplx w = w_full[m + j];
      if (std::abs(w) <= kLocusTol)
        throw LocusHitError("continue_along_loop: loop touches the image branch locus");
      const double jump = std::arg(w / w_prev[j]);
      if (std::abs(jump) >= std::numbers::pi / 2.0)
        throw ResolutionError("continue_along_loop: argument step >= pi/2, raise steps");
      accum[j] += jump;
      roots[j] = nearest_root(w, domain.exponent(j), roots[j]);
      w_prev[j] = w;
    }
  };

  int seg = 0;
  for (int t = 1; t <= steps; ++t) {
    const double target = total * t / steps;
    while (seg + 1 < nseg && cumulative[seg + 1] < target) ++seg;
    const double span = cumulative[seg + 1] - cumulative[seg];
    const double u = span > 0.0 ? (target - cumulative[seg]) / span : 1.0;
    cvec z(n);
    for (int i = 0; i < n; ++i)
      z[i] = loop[seg][i] + u * (loop[seg + 1][i] - loop[seg][i]);
    advance_to(z);
  }

  std::vector<MonodromyResult> out(k);
  for (int j = 0; j < k; ++j) {
    out[j].tail_index = m + j;
    out[j].factor = roots[j] / chart.branch_state[j];
    out[j].winding = static_cast<int>(std::lround(accum[j] / (2.0 * std::numbers::pi)));
  }
  return out;
}

cvec polynomial_roots(const cvec& coeffs) {
  int deg = static_cast<int>(coeffs.size()) - 1;
  while (deg > 0 && std::abs(coeffs[deg]) == 0.0) --deg;
  if (deg < 1) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[i] / coeffs[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
  cvec roots(deg);
  for (int i = 0; i < deg; ++i) roots[i] = solver.eigenvalues()(i);
  return roots;
}

namespace {

struct LoopCandidate {
  cvec center;       // point with coordinate `coord` at the zero
  int coord = 0;     // varying coordinate (0-based)
  double radius = 0.0;
};

std::vector<cvec> circle_polyline(const LoopCandidate& cand, int vertices, int turns) {
  std::vector<cvec> loop;
  loop.reserve(static_cast<size_t>(vertices) * turns + 1);
  for (int t = 0; t < turns; ++t)
    for (int v = 0; v < vertices; ++v) {
      const double phi = 2.0 * std::numbers::pi * v / vertices;
      cvec z = cand.center;
      z[cand.coord] += std::polar(cand.radius, phi);
      loop.push_back(std::move(z));
    }
  cvec closing = cand.center;
  closing[cand.coord] += cand.radius;
  loop.push_back(std::move(closing));
  return loop;
}

bool loop_is_usable(const PseudoEllipsoid& domain, const BallAutomorphism& driver,
                    const LoopCandidate& cand) {
  const int m = domain.head_dim();
  for (int v = 0; v < 96; ++v) {
    const double phi = 2.0 * std::numbers::pi * v / 96;
    cvec z = cand.center;
    z[cand.coord] += std::polar(cand.radius, phi);
    if (domain.rho(z) > -1e-3) return false;
    for (int j = 0; j < domain.k(); ++j)
      if (std::abs(z[m + j]) < 1e-3) return false;
    const cvec w = driver.apply(domain.covering(z));
    for (int j = 0; j < domain.k(); ++j)
      if (std::abs(w[m + j]) < 1e-7) return false;
  }
  return true;
}

}  // namespace

MonodromyWitness non_extendibility_witness(const PseudoEllipsoid& domain,
                                           const BallAutomorphism& driver,
                                           const WitnessSearchOptions& opts) {
  MonodromyWitness report;
  report.verdict = check_extendible(domain, driver);
  if (report.verdict.extendible) {
    report.outcome = WitnessOutcome::NotNeeded;
    return report;
  }

  const int n = domain.n;
  const int m = domain.head_dim();
  const ComplexMatrix& M = driver.rep.m;
  const double fill = 0.15;

  // Zeros of the trailing image components restricted to complex lines
  // where only one trailing coordinate varies; there the component is the
  // binomial beta zeta^p + alpha over the nonvanishing denominator.
  for (int i = m; i < n; ++i) {
    for (int t = m; t < n; ++t) {
      const int pt = domain.exponent(t - m);
      const cplx beta = M(i, t);
      if (std::abs(beta) < 1e-9) continue;

      double head_norm = 0.0;
      for (int l = 0; l < m; ++l) head_norm += std::norm(M(i, l));
      head_norm = std::sqrt(head_norm);

      cplx alpha0 = M(i, n);
      for (int s = m; s < n; ++s)
        if (s != t) alpha0 += M(i, s) * std::pow(cplx(fill), domain.exponent(s - m));

      // Candidate head offsets pulling the constant term toward zero so a
      // root lands inside the domain.
      std::vector<cvec> heads;
      heads.emplace_back(m, cplx(0.0));
      if (head_norm > 1e-9 && std::abs(alpha0) > 1e-12) {
        for (double fac : {1.0, 0.7, 0.4}) {
          const double tau = std::min(0.5, std::abs(alpha0) / head_norm) * fac;
          cvec h(m);
          const cplx dir = -(alpha0 / std::abs(alpha0)) * (tau / head_norm);
          for (int l = 0; l < m; ++l) h[l] = dir * std::conj(M(i, l));
          heads.push_back(std::move(h));
        }
      }

      for (const cvec& head : heads) {
        cplx alpha = alpha0;
        for (int l = 0; l < m; ++l) alpha += M(i, l) * head[l];

        cvec coeffs(pt + 1, cplx(0.0));
        coeffs[0] = alpha;
        coeffs[pt] = beta;
        cvec zeros = polynomial_roots(coeffs);
        std::sort(zeros.begin(), zeros.end(), [](const cplx& a, const cplx& b) {
          const double ma = std::abs(a), mb = std::abs(b);
          return ma != mb ? ma < mb : std::arg(a) < std::arg(b);
        });
        // Zeros sitting on (or next to) the coordinate axis collapse into a
        // single loop around the axis itself; it picks up the full winding
        // of the component, which obstructs exactly when the exponents of
        // source and target slot disagree modulo each other.
        bool axis_candidate = false;
        cvec spaced;
        for (const cplx& zeta : zeros) {
          if (std::abs(zeta) < 0.05)
            axis_candidate = true;
          else
            spaced.push_back(zeta);
        }
        if (axis_candidate) spaced.push_back(0.0);

        for (const cplx& zeta : spaced) {
          const double mz = std::abs(zeta);
          if (mz > 0.97) continue;

          LoopCandidate cand;
          cand.center.assign(n, cplx(0.0));
          for (int l = 0; l < m; ++l) cand.center[l] = head[l];
          for (int s = m; s < n; ++s) cand.center[s] = fill;
          cand.center[t] = zeta;
          cand.coord = t;
          cand.radius =
              mz == 0.0
                  ? 0.3
                  : 0.35 * std::min(mz, 2.0 * mz * std::sin(std::numbers::pi / pt));

          bool usable = false;
          for (int shrink = 0; shrink < 6; ++shrink) {
            if (loop_is_usable(domain, driver, cand)) {
              usable = true;
              break;
            }
            cand.radius *= 0.5;
          }
          if (!usable) continue;

          std::vector<cvec> loop = circle_polyline(cand, 64, 1);

          std::optional<LocalAutomorphismChart> chart;
          double chart_radius = std::min(0.02, 0.25 * cand.radius);
          for (int shrink = 0; shrink < 8 && !chart; ++shrink) {
            try {
              chart = make_chart(domain, driver, loop.front(), chart_radius);
            } catch (const ChartError&) {
              chart_radius *= 0.5;
            }
          }
          if (!chart) continue;

          int steps = opts.initial_steps;
          while (steps <= opts.max_steps) {
            try {
              std::vector<MonodromyResult> results =
                  continue_along_loop(*chart, loop, steps);
              for (const MonodromyResult& r : results) {
                if (std::abs(r.factor - cplx(1.0)) > 1e-6) {
                  report.outcome = WitnessOutcome::Found;
                  report.chart = std::move(chart);
                  report.loop = std::move(loop);
                  report.results = std::move(results);
                  report.nontrivial_index = r.tail_index;
                  return report;
                }
              }
              break;  // continuation clean but trivial; next candidate
            } catch (const ResolutionError&) {
              steps *= 2;
            } catch (const LocusHitError&) {
              break;
            }
          }
        }
      }
    }
  }

  report.outcome = WitnessOutcome::Inconclusive;
  return report;
}

}  // namespace psell
