#include "doctest.h"
#include "test_util.hpp"

using namespace qpmut;

TEST_CASE("b-matrix and matrix mutation match the frozen values") {
  Quiver tri = triangle_quiver();
  auto b = tri.b_matrix();
  auto m = fz_mutate(b, 1);
  const auto& expect = oracle()["fz_tri_mu2"];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(m[i][j] == expect[i][j].get<long long>());

  const auto& rand4 = oracle()["fz_rand4_seq"];
  std::vector<std::vector<long long>> cur;
  for (const auto& row : rand4["input"]) {
    std::vector<long long> r;
    for (const auto& x : row) r.push_back(x.get<long long>());
    cur.push_back(r);
  }
  for (const auto& k : rand4["seq"]) cur = fz_mutate(cur, k.get<int>());
  for (std::size_t i = 0; i < cur.size(); ++i)
    for (std::size_t j = 0; j < cur.size(); ++j)
      CHECK(cur[i][j] == rand4["output"][i][j].get<long long>());
}

TEST_CASE("matrix mutation is an involution on random quivers") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Quiver q = random_quiver(seed, 4 + int(seed % 3), 3);
    auto b = q.b_matrix();
    for (int k = 0; k < int(q.vertices.size()); ++k) {
      auto bb = fz_mutate(fz_mutate(b, k), k);
      CHECK(bb == b);
    }
  }
}

TEST_CASE("mutation at a sink or source is the reflection") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Quiver q = random_quiver(seed, 5, 2);
    for (int k = 0; k < int(q.vertices.size()); ++k) {
      const bool sink = q.arrows_from(k).empty();
      const bool source = q.arrows_into(k).empty();
      if (!sink && !source) continue;
      CHECK(fz_mutate(q.b_matrix(), k) == reflect_at(q, k).b_matrix());
    }
  }
}

TEST_CASE("star naming collapses and disambiguates") {
  CHECK(star_name("a") == "a*");
  CHECK(star_name("a*") == "a");
  CHECK(star_name("2*") == "2");
  CHECK(fresh_name("a", {"b"}) == "a");
  CHECK(fresh_name("a", {"a"}) == "a'");
  CHECK(fresh_name("a", {"a", "a'"}) == "a''");
}

TEST_CASE("quiver isomorphism search") {
  Quiver q1 = triangle_quiver();
  Quiver q2;
  q2.add_vertex("x");
  q2.add_vertex("y");
  q2.add_vertex("z");
  q2.add_arrow("p", "y", "z");
  q2.add_arrow("q", "z", "x");
  q2.add_arrow("r", "x", "y");
  CHECK(quivers_isomorphic(q1, q2));
  auto isos = quiver_isomorphisms(q1, q2, nullptr, nullptr, 64);
  CHECK(isos.size() == 3);  // rotations of the triangle
  for (const auto& iso : isos)
    for (int a = 0; a < 3; ++a) {
      const Arrow& s = q1.arrows[a];
      const Arrow& t = q2.arrows[iso.arrow_map[a]];
      CHECK(iso.vertex_map[s.from] == t.from);
      CHECK(iso.vertex_map[s.to] == t.to);
    }
  Quiver q3 = a3_quiver();
  CHECK(!quivers_isomorphic(q1, q3));
  // vertex typing can pin the map
  std::vector<std::string> t1{"u", "v", "w"}, t2{"v", "w", "u"};
  auto typed = quiver_isomorphisms(q1, q2, &t1, &t2, 64);
  CHECK(typed.size() == 1);
  CHECK(typed[0].vertex_map == std::vector<int>{2, 0, 1});
}

TEST_CASE("validation rejects malformed quivers") {
  Quiver q;
  q.add_vertex("1");
  q.add_vertex("1");
  CHECK_THROWS_WITH_AS(q.validate(), doctest::Contains("duplicate_name"), QpError);
  Quiver q2;
  q2.add_vertex("1");
  q2.arrows.push_back(Arrow{"a", 0, 5});
  CHECK_THROWS_WITH_AS(q2.validate(), doctest::Contains("unknown_vertex"), QpError);
}
