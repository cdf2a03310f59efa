#include "qpmut/jacobian.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "qpmut/qp.hpp"
#include "test_util.hpp"

using namespace qpmut;

namespace {

QP rq1(int trunc) {
  Quiver q;
  q.add_vertex("1");
  q.add_vertex("2");
  q.add_vertex("3");
  q.add_arrow("a", "1", "2");
  q.add_arrow("b", "2", "3");
  q.add_arrow("c", "3", "1");
  q.add_arrow("d", "3", "1");
  QP p;
  p.quiver = q;
  p.trunc = trunc;
  Elem w = el_zero(trunc);
  Path abc;
  abc.start = abc.end = 0;
  abc.seq = {0, 1, 2};
  el_add_term(w, abc, Rat(1));
  Path abd;
  abd.start = abd.end = 0;
  abd.seq = {0, 1, 3};
  el_add_term(w, abd, Rat(3));
  p.potential = w;
  return validate_qp(p);
}

QP rq2(int trunc) {
  Quiver q;
  q.add_vertex("1");
  q.add_vertex("2");
  q.add_vertex("3");
  q.add_arrow("a1", "1", "2");
  q.add_arrow("a2", "1", "2");
  q.add_arrow("b", "2", "3");
  q.add_arrow("c", "3", "1");
  QP p;
  p.quiver = q;
  p.trunc = trunc;
  Elem w = el_zero(trunc);
  Path a1bc;
  a1bc.start = a1bc.end = 0;
  a1bc.seq = {0, 2, 3};
  el_add_term(w, a1bc, Rat(1));
  Path a2bc;
  a2bc.start = a2bc.end = 0;
  a2bc.seq = {1, 2, 3};
  el_add_term(w, a2bc, Rat(2));
  Path sq;
  sq.start = sq.end = 0;
  sq.seq = {0, 2, 3, 0, 2, 3};
  el_add_term(w, sq, Rat(1) / 3);
  p.potential = w;
  return validate_qp(p);
}

void check_dims(const JacobianDims& d, const nlohmann::json& exp) {
  std::vector<long long> layers = exp["layers"].get<std::vector<long long>>();
  CHECK(d.layers == layers);
  CHECK(d.total == exp["total"].get<long long>());
  if (exp["nilpotency"].is_null()) {
    CHECK(!d.nilpotency.has_value());
    CHECK(!d.finite);
  } else {
    REQUIRE(d.nilpotency.has_value());
    CHECK(*d.nilpotency == exp["nilpotency"].get<int>());
    CHECK(d.finite);
  }
}

std::map<std::string, int> relations_as_strings(const QP& p) {
  std::map<std::string, int> out;
  for (const auto& [key, v] : minimal_relation_dims(p)) out[key.first + "->" + key.second] = v;
  return out;
}

// Arrow-count table of a quiver, indexed like ext_dims output.
std::vector<std::vector<int>> arrow_counts(const Quiver& q) {
  std::vector<std::vector<int>> out(q.vertices.size(),
                                    std::vector<int>(q.vertices.size(), 0));
  for (const auto& a : q.arrows) ++out[a.from][a.to];
  return out;
}

std::vector<std::vector<int>> relation_counts(const QP& p) {
  const Quiver& q = p.quiver;
  std::vector<std::vector<int>> out(q.vertices.size(),
                                    std::vector<int>(q.vertices.size(), 0));
  for (const auto& [key, v] : minimal_relation_dims(p))
    out[q.vertex_index(key.first)][q.vertex_index(key.second)] = v;
  return out;
}

}  // namespace

TEST_CASE("truncated quotient dimensions match the frozen tables") {
  check_dims(truncated_quotient(a3_zero(8)), oracle()["jac_a3_zero_N8"]);
  check_dims(truncated_quotient(triangle_abc(12)), oracle()["jac_tri_abc_N12"]);
  check_dims(truncated_quotient(triangle_zero(8)), oracle()["jac_tri_zero_N8"]);
  check_dims(truncated_quotient(rq1(10)), oracle()["jac_rq1_N10"]);
  check_dims(truncated_quotient(rq2(9)), oracle()["jac_rq2_N9"]);
  check_dims(truncated_quotient(mutate(a3_zero(12), 1).qp), oracle()["jac_mu2_a3_N12"]);
}

TEST_CASE("staged computation agrees with the minimal truncation") {
  // the triangle with its full cycle potential stabilizes in the first stage
  auto d12 = truncated_quotient(triangle_abc(12));
  auto d3 = truncated_quotient(triangle_abc(3));
  REQUIRE(d3.finite);
  CHECK(d3.nilpotency == d12.nilpotency);
  CHECK(d3.total == d12.total);
  for (int d = 0; d <= 3; ++d) CHECK(d3.layers[d] == d12.layers[d]);
}

TEST_CASE("truncated algebra basis and multiplication on the 3-cycle") {
  TruncatedAlgebra alg = TruncatedAlgebra::build(triangle_abc(12));
  REQUIRE(alg.basis_size() == 6);
  // basis: trivial paths then the three arrows, in contract order
  CHECK(alg.basis()[0].is_trivial());
  CHECK(alg.basis()[1].is_trivial());
  CHECK(alg.basis()[2].is_trivial());
  CHECK(alg.basis()[3] == arrow_path(alg.qp().quiver, 0));
  CHECK(alg.basis()[4] == arrow_path(alg.qp().quiver, 1));
  CHECK(alg.basis()[5] == arrow_path(alg.qp().quiver, 2));

  // e_1 * a = a
  auto prod = alg.mult(0, 3);
  CHECK(prod[3] == 1);

  // every length-2 path lies in the ideal: a*b = 0 in the quotient
  auto ab = alg.mult(3, 4);
  CHECK(std::all_of(ab.begin(), ab.end(), [](const Rat& r) { return r == 0; }));

  // the potential itself reduces to zero
  auto wred = alg.reduce_elem(alg.qp().potential);
  CHECK(std::all_of(wred.begin(), wred.end(), [](const Rat& r) { return r == 0; }));
}

TEST_CASE("minimal relation dimensions match the frozen tables") {
  auto tri = relations_as_strings(triangle_abc(12));
  auto exp_tri = oracle()["relations_tri_abc_N12"].get<std::map<std::string, int>>();
  CHECK(tri == exp_tri);

  auto r1 = relations_as_strings(rq1(10));
  auto exp_r1 = oracle()["relations_rq1_N10"].get<std::map<std::string, int>>();
  CHECK(r1 == exp_r1);

  // zero potential: no relations at all
  CHECK(relations_as_strings(a3_zero(8)).empty());
}

TEST_CASE("ext groups of simples: arrows in degree 1, relations in degree 2") {
  for (const QP& p : {triangle_abc(12), a3_zero(8), rq1(10), mutate(a3_zero(12), 1).qp}) {
    TruncatedAlgebra alg = TruncatedAlgebra::build(p);
    REQUIRE(alg.dims().finite);
    CHECK(ext_dims(alg, 1) == arrow_counts(p.quiver));
    CHECK(ext_dims(alg, 2) == relation_counts(p));
  }
}

TEST_CASE("presentation complexes hold on the finite fixtures") {
  for (const QP& p : {triangle_abc(12), a3_zero(8), mutate(a3_zero(12), 1).qp}) {
    auto rep = verify_presentation_complexes(p);
    CHECK(rep.all_required_hold());
    REQUIRE(rep.left.size() == p.quiver.vertices.size());
    REQUIRE(rep.right.size() == p.quiver.vertices.size());
    for (const auto& side : {rep.left, rep.right})
      for (const auto& r : side) {
        CHECK(r.is_complex);
        CHECK(r.exact_at_end);
        CHECK(r.exact_at_relations);
      }
    CHECK(rep.ext2_simples_regular_vanish);
  }
}

TEST_CASE("rigidity verdicts combine span and finiteness") {
  auto tri = is_rigid_truncated(triangle_abc(9));
  CHECK(tri.verdict == "RIGID_CERTIFIED");
  CHECK(tri.span.span_rank == oracle()["rigid_tri_abc_N9"]["span_rank"].get<int>());

  auto zero = is_rigid_truncated(triangle_zero(9));
  CHECK(zero.verdict == "NOT_RIGID");
  REQUIRE(zero.span.witness.has_value());
  CHECK(*zero.span.witness ==
        oracle()["rigid_tri_zero_N9"]["witness"].get<std::vector<std::string>>());

  auto mu = is_rigid_truncated(mutate(a3_zero(9), 1).qp);
  CHECK(mu.verdict == "RIGID_CERTIFIED");
  CHECK(mu.span.span_rank == 3);
}

TEST_CASE("layer dimensions are invariant under double mutation") {
  int done = 0;
  for (unsigned seed = 1; seed <= 40 && done < 12; ++seed) {
    QP p = random_reduced_qp(seed, 4, 2, 5, 8, 4);
    int k = int(seed % p.quiver.vertices.size());
    MutationResult m1, m2;
    try {
      m1 = mutate(p, k);
      m2 = mutate(m1.qp, k);
    } catch (const QpError&) {
      continue;  // a mutation hit a frozen/2-cycle obstruction; skip the seed
    }
    auto d0 = truncated_quotient(p);
    auto d2 = truncated_quotient(m2.qp);
    CHECK(d0.layers == d2.layers);
    CHECK(d0.total == d2.total);
    CHECK(d0.finite == d2.finite);
    ++done;
  }
  CHECK(done >= 12);
}

TEST_CASE("opposite algebra has the same layer dimensions") {
  for (const QP& p : {triangle_abc(12), rq1(10), rq2(9)}) {
    auto d = truncated_quotient(p);
    auto dop = truncated_quotient(reverse_qp(p));
    CHECK(d.layers == dop.layers);
    CHECK(d.nilpotency == dop.nilpotency);
  }
}
