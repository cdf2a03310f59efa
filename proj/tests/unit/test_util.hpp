#pragma once

#include <cstdlib>
#include <fstream>
#include <string>

#include "json.hpp"
#include "qpmut/path_algebra.hpp"
#include "qpmut/qp.hpp"
#include "qpmut/quiver.hpp"

// Frozen reference values generated by tools/oracle/qp_oracle.py.
inline const nlohmann::json& oracle() {
  static nlohmann::json j = [] {
    const char* env = std::getenv("QPMUT_EXPECTED");
    const std::string path = env ? env : "tests/expected/oracle.json";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path +
                                      " (run tests from the repository root)");
    nlohmann::json out;
    in >> out;
    return out;
  }();
  return j;
}

// --- small shared fixtures -------------------------------------------------

// Linear A3: 1 -a-> 2 -b-> 3.
inline qpmut::Quiver a3_quiver() {
  qpmut::Quiver q;
  q.add_vertex("1");
  q.add_vertex("2");
  q.add_vertex("3");
  q.add_arrow("a", "1", "2");
  q.add_arrow("b", "2", "3");
  return q;
}

inline qpmut::QP a3_zero(int trunc) {
  qpmut::QP p;
  p.quiver = a3_quiver();
  p.potential = qpmut::el_zero(trunc);
  p.trunc = trunc;
  return qpmut::validate_qp(p);
}

// Oriented 3-cycle: 1 -a-> 2 -b-> 3 -c-> 1.
inline qpmut::Quiver triangle_quiver() {
  qpmut::Quiver q;
  q.add_vertex("1");
  q.add_vertex("2");
  q.add_vertex("3");
  q.add_arrow("a", "1", "2");
  q.add_arrow("b", "2", "3");
  q.add_arrow("c", "3", "1");
  return q;
}

inline qpmut::QP triangle_abc(int trunc) {
  using namespace qpmut;
  QP p;
  p.quiver = triangle_quiver();
  Path abc;
  abc.start = abc.end = 0;
  abc.seq = {0, 1, 2};
  p.potential = el_path(abc, trunc);
  p.trunc = trunc;
  return validate_qp(p);
}

inline qpmut::QP triangle_zero(int trunc) {
  qpmut::QP p;
  p.quiver = triangle_quiver();
  p.potential = qpmut::el_zero(trunc);
  p.trunc = trunc;
  return qpmut::validate_qp(p);
}

// The two-term reduction example: arrows a: 1->2, b: 2->3, c: 1->3,
// d: 3->1 with potential c d + a b d.
inline qpmut::QP reduction_example(int trunc) {
  using namespace qpmut;
  Quiver q;
  q.add_vertex("1");
  q.add_vertex("2");
  q.add_vertex("3");
  q.add_arrow("a", "1", "2");
  q.add_arrow("b", "2", "3");
  q.add_arrow("c", "1", "3");
  q.add_arrow("d", "3", "1");
  QP p;
  p.quiver = q;
  Path cd;
  cd.start = cd.end = 0;
  cd.seq = {2, 3};
  Path abd;
  abd.start = abd.end = 0;
  abd.seq = {0, 1, 3};
  Elem w = qpmut::el_zero(trunc);
  el_add_term(w, cd, qpmut::Rat(1));
  el_add_term(w, abd, qpmut::Rat(1));
  p.potential = w;
  p.trunc = trunc;
  return validate_qp(p);
}

// Serialize an element for comparison with oracle tables: list of
// [coeff-string, [arrow names...]] sorted in contract path order (trivial
// paths rendered as ["e:<vertex>"]).
inline nlohmann::json elem_to_oracle_json(const qpmut::Quiver& q, const qpmut::Elem& e) {
  qpmut::NameOrder ord(q);
  std::vector<const qpmut::Path*> paths;
  for (const auto& [p, c] : e.terms) paths.push_back(&p);
  std::sort(paths.begin(), paths.end(),
            [&](const qpmut::Path* x, const qpmut::Path* y) { return ord.path_less(*x, *y); });
  nlohmann::json out = nlohmann::json::array();
  for (const auto* p : paths) {
    nlohmann::json names = nlohmann::json::array();
    if (p->is_trivial()) {
      names.push_back("e:" + q.vertices[p->start]);
    } else {
      for (int a : p->seq) names.push_back(q.arrows[a].name);
    }
    out.push_back({qpmut::rat_to_string(e.terms.at(*p)), names});
  }
  return out;
}
