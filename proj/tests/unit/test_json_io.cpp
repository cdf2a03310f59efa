#include "qpmut/json_io.hpp"

#include <string>
#include <vector>

#include "doctest.h"
#include "qpmut/coxeter.hpp"
#include "test_util.hpp"

using namespace qpmut;
using nlohmann::json;

TEST_CASE("quiver documents round-trip") {
  Quiver q = triangle_quiver();
  json doc = quiver_to_json(q);
  CHECK(doc["vertices"] == json::parse(R"(["1","2","3"])"));
  CHECK(doc["arrows"][0] ==
        json::parse(R"({"name":"a","from":"1","to":"2"})"));
  Quiver back = quiver_from_json(doc);
  CHECK(quiver_to_json(back) == doc);
  CHECK(back.arrows.size() == 3);
  CHECK(back.arrows[2].from == 2);

  CHECK_THROWS_WITH_AS(quiver_from_json(json::parse(R"({"vertices":["1"]})")),
                       doctest::Contains("bad_json"), QpError);
  CHECK_THROWS_WITH_AS(
      quiver_from_json(json::parse(
          R"({"vertices":["1"],"arrows":[{"name":"a","from":"1","to":"9"}]})")),
      doctest::Contains("unknown_vertex"), QpError);
  CHECK_THROWS_WITH_AS(
      quiver_from_json(json::parse(R"({"vertices":["1","1"],"arrows":[]})")),
      doctest::Contains("duplicate_name"), QpError);
}

TEST_CASE("element documents round-trip in contract order") {
  Quiver q = triangle_quiver();
  Elem e = el_zero(8);
  el_add_term(e, Path{0, 0, {0, 1, 2}}, parse_rational("-3/2"));
  el_add_term(e, Path{0, 2, {0, 1}}, Rat(2));
  el_add_term(e, trivial_path(1), Rat(1));
  json doc = elem_to_json(q, e);
  // trivial term first (length 0), then ab, then the 3-cycle
  CHECK(doc == json::parse(R"([{"coeff":"1","vertex":"2"},)"
                           R"({"coeff":"2","path":["a","b"]},)"
                           R"({"coeff":"-3/2","path":["a","b","c"]}])"));
  Elem back = elem_from_json(q, doc, 8);
  CHECK(el_equal(back, e));

  CHECK_THROWS_WITH_AS(
      elem_from_json(q, json::parse(R"([{"coeff":"1","path":["a","c"]}])"), 8),
      doctest::Contains("not_composable"), QpError);
  CHECK_THROWS_WITH_AS(
      elem_from_json(q, json::parse(R"([{"coeff":"1","path":["z"]}])"), 8),
      doctest::Contains("unknown_arrow"), QpError);
  CHECK_THROWS_WITH_AS(
      elem_from_json(q, json::parse(R"([{"coeff":"x","path":["a"]}])"), 8),
      doctest::Contains("bad_rational"), QpError);
  CHECK_THROWS_WITH_AS(elem_from_json(q, json::parse(R"([{"coeff":"1","path":[]}])"), 8),
                       doctest::Contains("bad_json"), QpError);
}

TEST_CASE("qp documents round-trip") {
  QP tri = triangle_abc(12);
  json doc = qp_to_json(tri);
  CHECK(doc["truncation"] == 12);
  CHECK(doc["frozen"] == json::array());
  CHECK(doc["potential"] == json::parse(R"([{"coeff":"1","path":["a","b","c"]}])"));
  QP back = qp_from_json(doc);
  CHECK(qp_to_json(back) == doc);

  // A QP with frozen vertices and a larger potential.
  CoxeterDatum c = coxeter_datum(triangle_quiver());
  std::vector<std::string> word = {"1", "2", "1", "3", "1", "2", "3", "1", "2", "3", "2"};
  WordQpResult r = word_qp(c, word);
  json full = qp_to_json(r.full);
  CHECK(qp_from_json(full).frozen == r.full.frozen);
  CHECK(qp_to_json(qp_from_json(full)) == full);
  json stable = qp_to_json(r.stable);
  CHECK(qp_to_json(qp_from_json(stable)) == stable);

  // Truncation defaults to 12, potential and frozen to empty.
  QP bare = qp_from_json(json::parse(R"({"quiver":{"vertices":["1"],"arrows":[]}})"));
  CHECK(bare.trunc == 12);
  CHECK(el_is_zero(bare.potential));

  CHECK_THROWS_WITH_AS(
      qp_from_json(json::parse(
          R"({"quiver":{"vertices":["1"],"arrows":[]},"frozen":["9"]})")),
      doctest::Contains("unknown_vertex"), QpError);
  CHECK_THROWS_WITH_AS(
      qp_from_json(json::parse(
          R"({"quiver":{"vertices":["1"],"arrows":[]},"truncation":2})")),
      doctest::Contains("bad_truncation"), QpError);
}

TEST_CASE("representation documents round-trip") {
  QP tri = triangle_abc(12);
  json doc = json::parse(
      R"({"dims":{"1":1,"2":0,"3":1},"matrices":{"c":[["1"]]}})");
  Representation m = rep_from_json(tri, doc);
  validate_rep(tri, m);
  CHECK(m.dims == std::vector<int>{1, 0, 1});
  CHECK(m.mats[2].at(0, 0) == 1);
  CHECK(m.mats[0].rows() == 1);  // omitted matrices default to zero
  CHECK(m.mats[0].cols() == 0);
  json out = rep_to_json(tri, m);
  CHECK(out["matrices"]["c"] == json::parse(R"([["1"]])"));
  CHECK(out["matrices"]["a"] == json::parse(R"([[]])"));
  Representation back = rep_from_json(tri, out);
  CHECK(back.dims == m.dims);
  for (int a = 0; a < 3; ++a) CHECK(back.mats[a] == m.mats[a]);

  CHECK_THROWS_WITH_AS(
      rep_from_json(tri, json::parse(R"({"dims":{"1":1,"2":0}})")),
      doctest::Contains("bad_json"), QpError);  // missing vertex "3"
  CHECK_THROWS_WITH_AS(
      rep_from_json(tri, json::parse(R"({"dims":{"1":1,"2":0,"3":1,"9":0}})")),
      doctest::Contains("unknown_vertex"), QpError);
  CHECK_THROWS_WITH_AS(
      rep_from_json(tri,
                    json::parse(R"({"dims":{"1":1,"2":0,"3":1},)"
                                R"("matrices":{"c":[["1","2"]]}})")),
      doctest::Contains("shape_mismatch"), QpError);
  CHECK_THROWS_WITH_AS(
      rep_from_json(tri, json::parse(R"({"dims":{"1":-1,"2":0,"3":1}})")),
      doctest::Contains("bad_json"), QpError);
}

TEST_CASE("morphism documents round-trip") {
  QP tri = triangle_abc(12);
  Representation m =
      rep_from_json(tri, json::parse(R"({"dims":{"1":1,"2":0,"3":1},)"
                                     R"("matrices":{"c":[["1"]]}})"));
  Representation s3 = simple_rep(tri, 2);
  json doc = json::parse(R"({"maps":{"3":[["5"]]}})");
  RepMorphism f = morphism_from_json(tri, m, s3, doc);
  CHECK(is_morphism(tri, m, s3, f));
  CHECK(f.f[2].at(0, 0) == 5);
  json out = morphism_to_json(tri, f);
  CHECK(out["maps"]["3"] == json::parse(R"([["5"]])"));
  RepMorphism back = morphism_from_json(tri, m, s3, out);
  for (int v = 0; v < 3; ++v) CHECK(back.f[v] == f.f[v]);

  CHECK_THROWS_WITH_AS(
      morphism_from_json(tri, m, s3, json::parse(R"({"maps":{"9":[]}})")),
      doctest::Contains("unknown_vertex"), QpError);
}

TEST_CASE("matrices with empty shapes serialize") {
  Mat z(0, 2);
  CHECK(mat_to_json(z) == json::array());
  Mat back = mat_from_json(json::array(), 0, 2);
  CHECK(back.rows() == 0);
  CHECK(back.cols() == 2);
  Mat w(2, 0);
  CHECK(mat_to_json(w) == json::parse(R"([[],[]])"));
  CHECK(mat_from_json(json::parse(R"([[],[]])"), 2, 0) == w);
  CHECK_THROWS_WITH_AS(mat_from_json(json::parse(R"([["1"]])"), 2, 1),
                       doctest::Contains("shape_mismatch"), QpError);
}
