#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qpmut {

struct Arrow {
  std::string name;
  int from = -1;
  int to = -1;
};

// Finite quiver with named vertices and named arrows.  Vertex and arrow
// order is the order of definition (it is preserved by serialization and is
// part of the deterministic-output contract); lookups go through names.
struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int add_vertex(const std::string& name);
  int add_arrow(const std::string& name, const std::string& from, const std::string& to);
  int add_arrow_idx(const std::string& name, int from, int to);

  int vertex_index(const std::string& name) const;  // -1 if absent
  int arrow_index(const std::string& name) const;   // -1 if absent
  bool has_vertex(const std::string& name) const { return vertex_index(name) >= 0; }
  bool has_arrow(const std::string& name) const { return arrow_index(name) >= 0; }

  // Throws QpError on duplicate/empty names or dangling endpoints.
  void validate() const;

  bool has_loops() const;
  bool has_loop_at(int v) const;
  bool has_two_cycle_through(int v) const;
  bool is_two_acyclic() const;  // no loops, no 2-cycles

  std::vector<int> arrows_from(int v) const;  // arrow indices, definition order
  std::vector<int> arrows_into(int v) const;

  // Net arrow-count matrix b[i][j] = #(i -> j) - #(j -> i).
  std::vector<std::vector<long long>> b_matrix() const;
};

Quiver reversed(const Quiver& q);

// Matrix mutation at k: b'_{ij} = -b_{ij} if i = k or j = k, else
// b_{ij} + (|b_{ik}| b_{kj} + b_{ik} |b_{kj}|) / 2.
std::vector<std::vector<long long>> fz_mutate(const std::vector<std::vector<long long>>& b,
                                              int k);

// Reverse every arrow incident to vertex k (the reflection usable at sinks
// and sources); reversed arrows keep their names.
Quiver reflect_at(const Quiver& q, int k);

// The star involution on names: strip one trailing '*' if present, else
// append one.  Applied to vertex k and to arrows during mutation.
std::string star_name(const std::string& name);

// `base`, or `base` with enough '\'' appended to avoid every name in
// `taken`.
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

struct QuiverIso {
  std::vector<int> vertex_map;  // index in q1 -> index in q2
  std::vector<int> arrow_map;   // index in q1 -> index in q2
};

// Find all quiver isomorphisms q1 -> q2 (up to `limit` of them), optionally
// constrained by a vertex typing (iso must preserve the type label).  The
// search enumerates vertex bijections in lexicographic order and arrow
// bijections within each parallel class in name order, so the result list is
// deterministic.
std::vector<QuiverIso> quiver_isomorphisms(const Quiver& q1, const Quiver& q2,
                                           const std::vector<std::string>* types1 = nullptr,
                                           const std::vector<std::string>* types2 = nullptr,
                                           std::size_t limit = 64);

bool quivers_isomorphic(const Quiver& q1, const Quiver& q2);

// Deterministic pseudorandom 2-acyclic quiver on `nv` vertices ("1".."nv"),
// with up to `max_mult` parallel arrows between any ordered pair.
Quiver random_quiver(std::uint64_t seed, int nv, int max_mult = 2);

// Uniform integer in [0, n) from a splitmix-style stream; used instead of
// std::uniform_int_distribution so that sequences are identical across
// standard libraries.
struct DetRng {
  std::uint64_t state;
  explicit DetRng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  std::uint64_t below(std::uint64_t n);  // n > 0
};

}  // namespace qpmut
