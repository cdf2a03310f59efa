#pragma once

#include <map>
#include <string>
#include <vector>

#include "qpmut/quiver.hpp"
#include "qpmut/rational.hpp"

namespace qpmut {

// A path in a quiver: a composable sequence of arrow indices.  Composition
// is written left to right (`ab` means "first a, then b"), so consecutive
// arrows satisfy e(seq[i]) = s(seq[i+1]).  Length-0 paths are the lazy paths
// e_v, carried by `start` = `end` = v.
struct Path {
  int start = -1;
  int end = -1;
  std::vector<int> seq;

  int length() const { return int(seq.size()); }
  bool is_trivial() const { return seq.empty(); }
  bool is_cycle() const { return start == end && !seq.empty(); }

  bool operator==(const Path& o) const {
    return start == o.start && end == o.end && seq == o.seq;
  }
  // Structural order: by length, then arrow-index sequence (trivial paths by
  // vertex index).  Deterministic given the quiver's definition order; the
  // name-based contract order lives in NameOrder.
  bool operator<(const Path& o) const {
    if (seq.size() != o.seq.size()) return seq.size() < o.seq.size();
    if (seq.empty()) return start < o.start;
    return seq < o.seq;
  }
};

Path trivial_path(int v);
Path arrow_path(const Quiver& q, int a);
bool composable(const Path& p, const Path& r);
Path concat(const Path& p, const Path& r);

// Cached name-rank tables: the interchange contract orders paths by
// (length ascending, then arrow-name tuple lexicographic; length-0 paths by
// vertex name), and cycles are normalized to the rotation whose name tuple
// is lexicographically least (ties broken by earliest rotation offset).
struct NameOrder {
  explicit NameOrder(const Quiver& q);
  const Quiver* q;
  std::vector<int> arrow_rank;
  std::vector<int> vertex_rank;
  std::vector<std::vector<int>> out_by_rank;  // per-vertex out-arrows, name order
  std::vector<std::vector<int>> in_by_rank;

  bool path_less(const Path& a, const Path& b) const;
  Path canonical_rotation(const Path& cycle) const;
};

// Truncated path-algebra element: a finite rational combination of paths of
// length <= trunc.  Operations on elements with different truncation levels
// are a hard error ("mixed_truncation"); retruncation is explicit.
struct Elem {
  int trunc = -1;
  std::map<Path, Rat> terms;
};

Elem el_zero(int trunc);
Elem el_vertex(int v, int trunc);
Elem el_arrow(const Quiver& q, int a, int trunc);
Elem el_path(const Path& p, int trunc);

void el_add_term(Elem& e, const Path& p, const Rat& c);
Elem el_add(const Elem& a, const Elem& b);
Elem el_sub(const Elem& a, const Elem& b);
Elem el_neg(const Elem& a);
Elem el_scale(const Rat& c, const Elem& a);
Elem el_mul(const Elem& a, const Elem& b);
Elem el_retruncated(const Elem& a, int trunc);  // explicit coercion
bool el_is_zero(const Elem& a);
bool el_equal(const Elem& a, const Elem& b);
// trunc + 1 for the zero element.
int el_min_degree(const Elem& a);
int el_max_degree(const Elem& a);  // -1 for the zero element

// d/da on the right: strips a final letter a (p = q a  |->  q); kills paths
// not ending in a.  Satisfies p = sum_a (d^r_a p) a for paths of length >= 1.
Elem deriv_right(const Quiver& q, const Elem& e, int arrow);
// d/da on the left: strips an initial letter a.
Elem deriv_left(const Quiver& q, const Elem& e, int arrow);

// Cyclic derivative of a potential: for each occurrence of `arrow` in each
// cycle, the rotation of the cycle that starts just after that occurrence,
// with the occurrence removed.  A basic element e(arrow) -> s(arrow).
Elem cyclic_deriv(const Quiver& q, const Elem& w, int arrow);

// Second-order cyclic derivative with respect to the ordered pair (a, b):
// picks out cyclically consecutive occurrences ...ab... (including the pair
// wrapping around the end of the written word) and returns the connecting
// remainder path e(b) -> s(a); for a 2-cycle ab the remainder is the trivial
// path at s(a).
Elem second_deriv(const Quiver& q, const Elem& w, int a, int b);

// Normalize every cycle term to its canonical rotation, combining
// coefficients.  Throws "not_a_cycle" if a term of length >= 1 is not a
// cycle or a trivial term is present.
Elem cyclize(const NameOrder& ord, const Elem& w);

// Are two potentials cyclically equivalent (equal after cyclize)?
bool cyclically_equal(const NameOrder& ord, const Elem& a, const Elem& b);

// Terms of degree in [lo, hi].
Elem degree_part(const Elem& a, int lo, int hi);

// All paths of length 0..maxlen grouped by length, each group sorted in
// contract (name) order; group 0 lists trivial paths by vertex name.
std::vector<std::vector<Path>> enumerate_paths(const NameOrder& ord, int maxlen);

// An algebra endomorphism of a truncated path algebra determined by images
// of arrows (vertices fixed), represented by one element per arrow.  Images
// must be basic of matching endpoints.
struct Substitution {
  Quiver quiver;  // source = target
  int trunc = -1;
  std::vector<Elem> images;  // by arrow index

  void validate() const;
};

Substitution identity_substitution(const Quiver& q, int trunc);
Elem substitute(const Substitution& s, const Elem& e);
// Apply s, then t (s.quiver and t.quiver must agree).
Substitution subst_then(const Substitution& s, const Substitution& t);
// Two-sided inverse in the group of substitutions with invertible linear
// part; throws "substitution_not_invertible" otherwise.
Substitution subst_inverse(const Substitution& s);

}  // namespace qpmut
