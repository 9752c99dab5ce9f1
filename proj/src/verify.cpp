#include "psell/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>

#include "psell/charts.hpp"
#include "psell/lift.hpp"
#include "psell/sampling.hpp"

namespace psell {

namespace {

using clock_type = std::chrono::steady_clock;

struct Budget {
  int pairs;
  int points;
  int blocks;
  int slice_samples;
  int jacobian_points;
  int levi_samples;
  int lifts;
  int lift_samples;
  int battery;
};

Budget budget_for(const VerifyOptions& opts) {
  Budget b = opts.full ? Budget{1000, 1000, 200, 100, 100, 500, 50, 200, 20}
                       : Budget{200, 200, 40, 25, 50, 150, 10, 60, 8};
  if (opts.samples > 0) {
    b.pairs = b.points = b.levi_samples = opts.samples;
    b.lift_samples = opts.samples;
  }
  return b;
}

SuiteResult run_suite(const std::string& name, double tolerance,
                      const std::function<void(SuiteResult&)>& body) {
  SuiteResult res;
  res.name = name;
  res.tolerance = tolerance;
  const auto t0 = clock_type::now();
  try {
    body(res);
    res.passed = res.vacuous || res.worst <= tolerance;
  } catch (const std::exception& e) {
    res.passed = false;
    res.note = e.what();
  }
  res.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
  return res;
}

double functional_equation_residual(const PseudoEllipsoid& domain,
                                    const EllipsoidAutomorphism& lift,
                                    const BallAutomorphism& assoc,
                                    std::span<const cplx> z) {
  const cvec lhs = domain.covering(lift.apply(z));
  const cvec rhs = assoc.apply(domain.covering(z));
  double worst = 0.0;
  for (size_t i = 0; i < lhs.size(); ++i)
    worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
  return worst;
}

}  // namespace

std::vector<SuiteResult> run_verification(const PseudoEllipsoid& domain,
                                          const VerifyOptions& opts) {
  const Budget budget = budget_for(opts);
  const int n = domain.n;
  const int m = domain.head_dim();
  const int k = domain.k();
  std::vector<SuiteResult> out;

  out.push_back(run_suite("group-closure-inverse", 1e-9, [&](SuiteResult& r) {
    for (int i = 0; i < budget.pairs; ++i) {
      const auto a = random_group_element(n, opts.seed * 1000003 + 2 * i, 0.6);
      const auto b = random_group_element(n, opts.seed * 1000003 + 2 * i + 1, 0.6);
      const MembershipReport rep = check_membership(a.m * b.m, n, 1.0);
      r.worst = std::max(r.worst, std::max(rep.unitarity_defect, rep.det_defect));
      const BallAutomorphism fa{a};
      const BallAutomorphism round = fa.compose(fa.inverse());
      if (!projectively_equal(round.rep, BallAutomorphism::identity(n).rep, 1e-9))
        r.worst = std::max(r.worst, 1.0);
    }
  }));

  out.push_back(run_suite("ball-preservation-identity", 1e-9, [&](SuiteResult& r) {
    std::mt19937_64 rng(opts.seed * 7 + 1);
    for (int i = 0; i < budget.points; ++i) {
      const auto a = random_group_element(n, opts.seed * 31 + i, 0.6);
      const cvec z = random_ball_point(n, rng, 0.95);
      const BallAutomorphism f{a};
      const cvec fz = f.apply(z);
      cplx last = a.m(n, n);
      for (int l = 0; l < n; ++l) last += a.m(n, l) * z[l];
      const double lhs = (1.0 - norm2(fz) * norm2(fz)) * std::norm(last);
      const double rhs = 1.0 - norm2(z) * norm2(z);
      r.worst = std::max(r.worst, std::abs(lhs - rhs));
    }
  }));

  out.push_back(run_suite("hyperplane-block-equivalence", 1e-9, [&](SuiteResult& r) {
    if (k == 0) {
      r.vacuous = true;
      r.note = "no protected hyperplanes";
      return;
    }
    std::mt19937_64 rng(opts.seed * 11 + 3);
    for (int i = 0; i < budget.blocks; ++i) {
      const BallAutomorphism f = random_block_automorphism(domain, opts.seed * 97 + i);
      if (!decompose_block(f, k, 1e-9).ok()) {
        r.worst = std::max(r.worst, 1.0);
        r.note = "block test rejected a bordered member";
        continue;
      }
      for (int t = m; t < n; ++t)
        for (int s = 0; s < budget.slice_samples; ++s) {
          cvec z = random_ball_point(n, rng, 0.9);
          z[t] = 0.0;
          r.worst = std::max(r.worst, std::abs(f.apply(z)[t]));
        }
    }
  }));

  out.push_back(run_suite("covering-jacobian", 1e-6, [&](SuiteResult& r) {
    std::mt19937_64 rng(opts.seed * 13 + 5);
    const double h = 1e-5;
    for (int i = 0; i < budget.jacobian_points; ++i) {
      cvec z = random_interior_point(domain, rng, 0.9);
      for (int j = 0; j < k; ++j)
        if (std::abs(z[m + j]) < 0.1) z[m + j] += 0.15;
      // Central finite differences of the covering, determinant of the
      // numerical Jacobian against the closed form.
      ComplexMatrix jac(n, n);
      for (int col = 0; col < n; ++col) {
        cvec zp = z, zm = z;
        zp[col] += h;
        zm[col] -= h;
        const cvec wp = domain.covering(zp);
        const cvec wm = domain.covering(zm);
        for (int row = 0; row < n; ++row) jac(row, col) = (wp[row] - wm[row]) / (2 * h);
      }
      const cplx numeric = det(jac);
      const cplx exact = domain.covering_jacobian(z);
      r.worst = std::max(r.worst, std::abs(numeric - exact) / std::abs(exact));

      // Zero-set equivalence of the closed form.
      cvec z0 = z;
      if (k > 0) {
        z0[m] = 0.0;
        if (std::abs(domain.covering_jacobian(z0)) > 1e-12) {
          r.worst = std::max(r.worst, 1.0);
          r.note = "jacobian nonzero on the branch locus";
        }
      }
    }
  }));

  out.push_back(run_suite("levi-classification", 0.0, [&](SuiteResult& r) {
    if (k == 0) {
      // Unit ball: every boundary point must come out strongly pseudoconvex.
      const auto pts = sample_boundary(domain, opts.seed * 17 + 7, budget.levi_samples / 2);
      for (const cvec& z : pts) {
        const BoundaryPointReport rep = classify_boundary(domain, z);
        if (rep.classification != BoundaryClass::StronglyPseudoconvex) {
          r.worst = 1.0;
          r.note = "degenerate point reported on the sphere";
          return;
        }
      }
      r.vacuous = true;
      r.note = "no degenerate points exist on this domain";
      return;
    }
    int mis = 0;
    const auto generic = sample_boundary(domain, opts.seed * 17 + 7, budget.levi_samples / 2);
    std::vector<cvec> forced;
    {
      std::mt19937_64 rng(opts.seed * 19 + 9);
      std::normal_distribution<double> g(0.0, 1.0);
      int t = 0;
      while (static_cast<int>(forced.size()) < budget.levi_samples / 2) {
        cvec dir(n);
        for (cplx& c : dir) c = cplx(g(rng), g(rng));
        dir[m + (t++ % k)] = 0.0;
        if (norm2(dir) < 1e-6) continue;
        forced.push_back(boundary_point_in_direction(domain, dir));
      }
    }
    auto check = [&](const cvec& z) {
      const BoundaryPointReport rep = classify_boundary(domain, z);
      bool tail_zero = false;
      for (int j = 0; j < k; ++j)
        if (std::abs(z[m + j]) <= 1e-12) tail_zero = true;
      const bool flagged = rep.classification == BoundaryClass::LeviDegenerate;
      if (flagged != tail_zero) ++mis;
      // Eigenvalue cross-check.
      if (!rep.levi_eigenvalues.empty()) {
        const double lo = rep.levi_eigenvalues.front();
        if ((lo <= 1e-10) != flagged) ++mis;
      }
    };
    for (const cvec& z : generic) check(z);
    for (const cvec& z : forced) check(z);
    r.worst = mis;
    r.note = "misclassifications: " + std::to_string(mis);
  }));

  out.push_back(run_suite("lift-functional-equation", 1e-9, [&](SuiteResult& r) {
    std::mt19937_64 rng(opts.seed * 23 + 11);
    for (int i = 0; i < budget.lifts; ++i) {
      const BallAutomorphism f = random_extendible_automorphism(domain, opts.seed * 101 + i);
      const ExtendibilityVerdict verdict = check_extendible(domain, f);
      if (!verdict.extendible) {
        r.worst = std::max(r.worst, 1.0);
        r.note = "generator produced a non-extendible map";
        continue;
      }
      const EllipsoidAutomorphism lift = build_lift(domain, verdict, f);
      for (int s = 0; s < budget.lift_samples; ++s) {
        const cvec z = random_interior_point(domain, rng, 0.95);
        r.worst = std::max(r.worst, functional_equation_residual(domain, lift, f, z));
      }
    }
  }));

  out.push_back(run_suite("lift-boundary-preservation", 1e-8, [&](SuiteResult& r) {
    std::mt19937_64 rng(opts.seed * 29 + 13);
    const int nlifts = std::max(1, budget.lifts / 5);
    for (int i = 0; i < nlifts; ++i) {
      const BallAutomorphism f = random_extendible_automorphism(domain, opts.seed * 103 + i);
      const ExtendibilityVerdict verdict = check_extendible(domain, f);
      if (!verdict.extendible) continue;
      const EllipsoidAutomorphism lift = build_lift(domain, verdict, f);
      const auto boundary = sample_boundary(domain, opts.seed * 107 + i, budget.lift_samples);
      for (const cvec& z : boundary)
        r.worst = std::max(r.worst, std::abs(domain.rho(lift.apply(z))));
      for (int s = 0; s < budget.lift_samples; ++s) {
        const cvec z = random_interior_point(domain, rng, 0.95);
        if (domain.rho(lift.apply(z)) >= 0.0) {
          r.worst = std::max(r.worst, 1.0);
          r.note = "interior point mapped outside";
        }
      }
    }
  }));

  out.push_back(run_suite("lift-roundtrip", 1e-9, [&](SuiteResult& r) {
    for (int i = 0; i < budget.lifts; ++i) {
      const BallAutomorphism f = random_extendible_automorphism(domain, opts.seed * 109 + i);
      const ExtendibilityVerdict verdict = check_extendible(domain, f);
      if (!verdict.extendible) {
        r.worst = std::max(r.worst, 1.0);
        continue;
      }
      const EllipsoidAutomorphism lift = build_lift(domain, verdict, f);
      if (!projectively_equal(lift.associated().rep, f.rep, 1e-9))
        r.worst = std::max(r.worst, 1.0);
    }
  }));

  out.push_back(run_suite("witness-consistency", 0.0, [&](SuiteResult& r) {
    if (k == 0) {
      r.vacuous = true;
      r.note = "every ball automorphism extends";
      return;
    }
    int bad = 0;
    for (int i = 0; i < budget.battery; ++i) {
      const bool expect_extendible = i % 2 == 0;
      BallAutomorphism f = expect_extendible
                               ? random_extendible_automorphism(domain, opts.seed * 113 + i)
                               : BallAutomorphism{random_group_element(n, opts.seed * 127 + i, 0.5)};
      const MonodromyWitness w = non_extendibility_witness(domain, f);
      const bool extendible = w.verdict.extendible;
      if (extendible && w.outcome != WitnessOutcome::NotNeeded) ++bad;
      if (!extendible && w.outcome != WitnessOutcome::Found) ++bad;
      if (!extendible && w.outcome == WitnessOutcome::Found) {
        for (const MonodromyResult& res : w.results) {
          const int slot = res.tail_index - m;
          const cplx pw = std::pow(res.factor, domain.exponent(slot));
          if (std::abs(pw - cplx(1.0)) > 1e-9) ++bad;
        }
      }
    }
    r.worst = bad;
    r.note = "violations: " + std::to_string(bad);
  }));

  return out;
}

}  // namespace psell
