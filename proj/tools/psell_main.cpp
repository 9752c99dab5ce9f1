// Command-line front end: membership checks, extendibility verdicts, lifts,
// boundary classification, monodromy witnesses, and verification sweeps.
// JSON lines go to stdout, human-readable summaries to stderr.
//
// Exit codes: 0 success/affirmative, 1 negative verdict, 2 input error,
// 3 inconclusive search.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "psell/json_io.hpp"
#include "psell/sampling.hpp"
#include "psell/verify.hpp"

namespace {

using namespace psell;

struct Emitter {
  std::vector<std::string> lines;

  void emit(const json& j) {
    lines.push_back(j.dump());
    std::cout << lines.back() << "\n";
  }
  void save(const std::string& path) const {
    if (path.empty()) return;
    std::ofstream out(path);
    for (const std::string& l : lines) out << l << "\n";
  }
};

int run_check_su(const std::string& matrix_path, double tol, Emitter& out) {
  const auto [m, n] = matrix_from_json(load_json_file(matrix_path));
  const MembershipReport rep = check_membership(m, n, tol);
  out.emit(json{{"accepted", rep.accepted},
                {"unitarity_defect", rep.unitarity_defect},
                {"determinant_defect", rep.det_defect}});
  if (rep.accepted)
    std::cerr << "member accepted (unitarity defect " << rep.unitarity_defect
              << ", determinant defect " << rep.det_defect << ")\n";
  else
    std::cerr << "rejected: " << rep.reason << "\n";
  return rep.accepted ? 0 : 1;
}

int run_extendible(const std::string& domain_path, const std::string& matrix_path,
                   double tol, Emitter& out) {
  const PseudoEllipsoid domain = domain_from_json(load_json_file(domain_path));
  const auto [m, n] = matrix_from_json(load_json_file(matrix_path));
  const BallAutomorphism f = BallAutomorphism::from_matrix(m, n, tol);
  if (n != domain.n) throw std::invalid_argument("matrix dimension does not match domain");
  const ExtendibilityVerdict verdict = check_extendible(domain, f);
  out.emit(verdict_to_json(verdict));
  std::cerr << (verdict.extendible ? "extendible" : "not extendible") << "\n";
  return verdict.extendible ? 0 : 1;
}

int run_lift(const std::string& domain_path, const std::string& matrix_path,
             const std::string& point_text, const std::vector<double>& theta,
             double tol, Emitter& out) {
  const PseudoEllipsoid domain = domain_from_json(load_json_file(domain_path));
  const auto [m, n] = matrix_from_json(load_json_file(matrix_path));
  const BallAutomorphism f = BallAutomorphism::from_matrix(m, n, tol);
  if (n != domain.n) throw std::invalid_argument("matrix dimension does not match domain");
  const cvec z = point_from_json(json::parse(point_text));

  const ExtendibilityVerdict verdict = check_extendible(domain, f);
  if (!verdict.extendible) {
    std::cerr << "not extendible; no lift exists\n";
    out.emit(verdict_to_json(verdict));
    return 1;
  }
  std::optional<std::vector<double>> phases;
  if (!theta.empty()) phases = theta;
  const EllipsoidAutomorphism lift = build_lift(domain, verdict, f, phases);
  const cvec image = lift.apply(z);

  const BallAutomorphism assoc = lift.associated();
  const cvec lhs = domain.covering(image);
  const cvec rhs = assoc.apply(domain.covering(z));
  double residual = 0.0;
  for (size_t i = 0; i < lhs.size(); ++i)
    residual = std::max(residual, std::abs(lhs[i] - rhs[i]));

  out.emit(json{{"image", point_to_json(image)},
                {"functional_equation_residual", residual},
                {"sigma", verdict_to_json(verdict)["sigma"]}});
  std::cerr << "lift evaluated; functional equation residual " << residual << "\n";
  return 0;
}

int run_classify(const std::string& domain_path, const std::string& point_text,
                 int samples, std::uint64_t seed, Emitter& out) {
  const PseudoEllipsoid domain = domain_from_json(load_json_file(domain_path));
  std::vector<cvec> pts;
  if (!point_text.empty())
    pts.push_back(point_from_json(json::parse(point_text)));
  else
    pts = sample_boundary(domain, seed, samples);
  int degenerate = 0;
  for (const cvec& z : pts) {
    const BoundaryPointReport rep = classify_boundary(domain, z);
    const bool dg = rep.classification == BoundaryClass::LeviDegenerate;
    degenerate += dg;
    json eig = json::array();
    for (double e : rep.levi_eigenvalues) eig.push_back(e);
    out.emit(json{{"point", point_to_json(rep.point)},
                  {"rho", rep.rho},
                  {"levi_eigenvalues", std::move(eig)},
                  {"classification", dg ? "levi-degenerate" : "strongly-pseudoconvex"}});
  }
  std::cerr << pts.size() << " point(s) classified, " << degenerate
            << " Levi-degenerate\n";
  return 0;
}

int run_witness(const std::string& domain_path, const std::string& matrix_path,
                int steps, double tol, Emitter& out) {
  const PseudoEllipsoid domain = domain_from_json(load_json_file(domain_path));
  const auto [m, n] = matrix_from_json(load_json_file(matrix_path));
  const BallAutomorphism f = BallAutomorphism::from_matrix(m, n, tol);
  if (n != domain.n) throw std::invalid_argument("matrix dimension does not match domain");

  WitnessSearchOptions opts;
  if (steps > 0) {
    opts.initial_steps = std::min(opts.initial_steps, steps);
    opts.max_steps = steps;
  }
  const MonodromyWitness w = non_extendibility_witness(domain, f, opts);
  out.emit(witness_to_json(w));
  switch (w.outcome) {
    case WitnessOutcome::NotNeeded:
      std::cerr << "extendible: no obstruction exists\n";
      return 0;
    case WitnessOutcome::Found: {
      cplx factor = 1.0;
      for (const MonodromyResult& r : w.results)
        if (r.tail_index == w.nontrivial_index) factor = r.factor;
      std::cerr << "monodromy obstruction on coordinate " << w.nontrivial_index + 1
                << ": factor (" << factor.real() << ", " << factor.imag() << ")\n";
      return 0;
    }
    case WitnessOutcome::Inconclusive:
      std::cerr << "search inconclusive under the current step cap\n";
      return 3;
  }
  return 3;
}

int run_verify(const std::string& domain_path, bool full, std::uint64_t seed,
               int samples, Emitter& out) {
  const PseudoEllipsoid domain = domain_from_json(load_json_file(domain_path));
  VerifyOptions opts;
  opts.full = full;
  opts.seed = seed;
  opts.samples = samples;
  const std::vector<SuiteResult> results = run_verification(domain, opts);
  bool all = true;
  for (const SuiteResult& r : results) {
    all = all && r.passed;
    out.emit(json{{"suite", r.name},
                  {"passed", r.passed},
                  {"vacuous", r.vacuous},
                  {"worst_residual", r.worst},
                  {"tolerance", r.tolerance},
                  {"note", r.note},
                  {"seconds", r.seconds}});
    std::cerr << (r.passed ? "[PASS] " : "[FAIL] ") << r.name
              << (r.vacuous ? " (vacuous)" : "") << "  worst " << r.worst << "  ("
              << r.seconds << " s)\n";
  }
  std::cerr << (all ? "all suites passed" : "some suites FAILED") << "\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"automorphisms of pseudoellipsoids: checks, lifts, witnesses"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may appear after the subcommand name

  double tol = kMembershipTol;
  std::uint64_t seed = 1;
  int samples = 0;
  int steps = 0;
  bool full = false;
  std::string out_path;
  std::string domain_path, matrix_path, point_text;
  std::vector<double> theta;

  app.add_option("--tol", tol, "membership tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for every random draw");
  app.add_option("--out", out_path, "copy emitted JSON lines to a file");

  auto* check_su = app.add_subcommand("check-su", "certify a matrix file");
  check_su->add_option("matrix", matrix_path, "matrix JSON file")->required();

  auto* extendible = app.add_subcommand("extendible", "extendibility verdict");
  extendible->add_option("domain", domain_path, "domain JSON file")->required();
  extendible->add_option("matrix", matrix_path, "matrix JSON file")->required();

  auto* lift = app.add_subcommand("lift", "evaluate the lifted automorphism");
  lift->add_option("domain", domain_path)->required();
  lift->add_option("matrix", matrix_path)->required();
  lift->add_option("--point", point_text, "point as [[re,im],...]")->required();
  lift->add_option("--theta", theta, "free rotation phases");

  auto* classify = app.add_subcommand("classify", "Levi classification of boundary points");
  classify->add_option("domain", domain_path)->required();
  classify->add_option("--point", point_text, "boundary point as [[re,im],...]");
  classify->add_option("--samples", samples, "number of seeded boundary samples");

  auto* witness = app.add_subcommand("witness", "monodromy obstruction search");
  witness->add_option("domain", domain_path)->required();
  witness->add_option("matrix", matrix_path)->required();
  witness->add_option("--steps", steps, "continuation step cap");

  auto* verify = app.add_subcommand("verify", "run the property battery");
  verify->add_option("domain", domain_path)->required();
  verify->add_flag("--full", full, "acceptance-scale sample counts");
  verify->add_option("--samples", samples, "override per-suite sample counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Emitter out;
  int code = 2;
  try {
    if (check_su->parsed()) code = run_check_su(matrix_path, tol, out);
    else if (extendible->parsed()) code = run_extendible(domain_path, matrix_path, tol, out);
    else if (lift->parsed())
      code = run_lift(domain_path, matrix_path, point_text, theta, tol, out);
    else if (classify->parsed()) {
      if (point_text.empty() && samples < 1)
        throw std::invalid_argument("classify needs --point or --samples");
      code = run_classify(domain_path, point_text, samples, seed, out);
    } else if (witness->parsed())
      code = run_witness(domain_path, matrix_path, steps, tol, out);
    else if (verify->parsed())
      code = run_verify(domain_path, full, seed, samples, out);
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  out.save(out_path);
  return code;
}
