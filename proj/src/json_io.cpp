#include "psell/json_io.hpp"

#include <fstream>

namespace psell {

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("complex value must be a [re, im] pair");
  return cplx(j[0].get<double>(), j[1].get<double>());
}

json point_to_json(std::span<const cplx> z) {
  json a = json::array();
  for (const cplx& c : z) a.push_back(complex_to_json(c));
  return a;
}

cvec point_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("point must be an array of [re, im] pairs");
  cvec z;
  z.reserve(j.size());
  for (const json& c : j) z.push_back(complex_from_json(c));
  return z;
}

json matrix_to_json(const ComplexMatrix& m, int n) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"n", n}, {"entries", std::move(rows)}};
}

std::pair<ComplexMatrix, int> matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw std::invalid_argument("matrix file must carry \"n\" and \"entries\"");
  if (!j["n"].is_number_integer())
    throw std::invalid_argument("matrix file: \"n\" must be an integer");
  const int n = j["n"].get<int>();
  if (n < 1) throw std::invalid_argument("matrix file: n must be >= 1");
  const json& rows = j["entries"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != n + 1)
    throw std::invalid_argument("matrix file: expected n+1 rows");
  ComplexMatrix m(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n + 1)
      throw std::invalid_argument("matrix file: expected n+1 entries per row");
    for (int c = 0; c <= n; ++c) m(i, c) = complex_from_json(rows[i][c]);
  }
  if (!m.finite()) throw std::invalid_argument("matrix file: non-finite entry");
  return {m, n};
}

json domain_to_json(const PseudoEllipsoid& domain) {
  return json{{"n", domain.n}, {"p", domain.p}};
}

PseudoEllipsoid domain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("p"))
    throw std::invalid_argument("domain file must carry \"n\" and \"p\"");
  if (!j["n"].is_number_integer())
    throw std::invalid_argument("domain file: \"n\" must be an integer");
  if (!j["p"].is_array())
    throw std::invalid_argument("domain file: \"p\" must be an array of integers");
  std::vector<int> p;
  for (const json& e : j["p"]) {
    if (!e.is_number_integer())
      throw std::invalid_argument("domain file: exponents must be integers");
    p.push_back(e.get<int>());
  }
  return PseudoEllipsoid(j["n"].get<int>(), std::move(p));
}

json verdict_to_json(const ExtendibilityVerdict& verdict) {
  json j;
  j["extendible"] = verdict.extendible;
  if (verdict.certificate) {
    json sigma = json::array();
    for (int s : verdict.certificate->sigma) sigma.push_back(s + 1);
    j["sigma"] = std::move(sigma);
  } else {
    j["sigma"] = nullptr;
  }
  if (verdict.witness) {
    j["witness"] = json{{"index", verdict.witness->index + 1},
                        {"point", point_to_json(verdict.witness->point)},
                        {"violation", verdict.witness->violation}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

json monodromy_to_json(const MonodromyResult& r) {
  return json{{"tail_index", r.tail_index + 1},
              {"factor", complex_to_json(r.factor)},
              {"winding", r.winding}};
}

json witness_to_json(const MonodromyWitness& w) {
  json j;
  switch (w.outcome) {
    case WitnessOutcome::NotNeeded:
      j["witness"] = nullptr;
      j["status"] = "none";
      return j;
    case WitnessOutcome::Inconclusive:
      j["witness"] = nullptr;
      j["status"] = "inconclusive";
      return j;
    case WitnessOutcome::Found:
      break;
  }
  j["status"] = "found";
  json loop = json::array();
  for (const cvec& pt : w.loop) loop.push_back(point_to_json(pt));
  json results = json::array();
  cplx factor = 1.0;
  for (const MonodromyResult& r : w.results) {
    if (r.tail_index == w.nontrivial_index) factor = r.factor;
    results.push_back(monodromy_to_json(r));
  }
  j["witness"] = json{{"chart", json{{"base", point_to_json(w.chart->base)},
                                     {"radius", w.chart->radius}}},
                      {"loop", std::move(loop)},
                      {"monodromy", std::move(results)},
                      {"factor", complex_to_json(factor)},
                      {"tail_index", w.nontrivial_index + 1}};
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace psell
