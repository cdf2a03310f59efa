#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qpmut/path_algebra.hpp"
#include "qpmut/quiver.hpp"

namespace qpmut {

// A quiver with potential, truncated at path length `trunc`: the potential
// is a rational combination of cycles of length >= 2, stored in canonical
// rotation form.  `frozen` names vertices excluded from mutation and from
// the defining relations of the associated truncated algebra.
struct QP {
  Quiver quiver;
  Elem potential;
  std::set<std::string> frozen;
  int trunc = 12;

  std::set<int> frozen_idx() const;
};

// Validates the quiver, truncation level (>= 3), and potential shape, and
// returns a copy with the potential in canonical rotation form.
QP validate_qp(const QP& p);

// Degree-2 part of the potential vanishes.
bool is_reduced(const QP& p);

// The defining relations: (arrow index, cyclic derivative of the potential)
// for every arrow with both endpoints unfrozen.
std::vector<std::pair<int, Elem>> jacobian_generators(const QP& p);

// Premutation at vertex k: star the vertex, add a composite arrow [ab] for
// every length-2 passage a b through k, replace incident arrows by their
// reversed starred companions, rewrite the potential through the composites
// and add the cycles a* [ab] b*.  Requires k unfrozen with no loop and no
// 2-cycle through it.
struct Premutation {
  QP qp;
  int k_old = -1;             // vertex index in the input quiver
  int k_new = -1;             // index of the starred vertex in qp.quiver
  std::vector<int> in_arrows;   // input arrow ids ? -> k, definition order
  std::vector<int> out_arrows;  // input arrow ids k -> ?
  std::vector<std::vector<int>> comp_idx;  // [i][o] -> new arrow id of [a_i b_o]
  std::vector<int> star_of_in;   // new arrow id of a*  (per in_arrows position)
  std::vector<int> star_of_out;  // new arrow id of b*
  std::vector<int> old_to_new_arrow;  // -1 for arrows incident to k
};

Premutation premutate(const QP& p, int k);

// Split a QP into its trivial and reduced parts: after a linear change of
// arrows the degree-2 part becomes a sum of distinct 2-cycles a_m b_m with
// coefficient 1; iterated elimination then removes the arrows a_m, b_m from
// the higher-degree part entirely.  `equivalence` is the substitution phi on
// the input quiver with substitute(phi, input potential) cyclically equal to
// (trivial part) + (reduced part); `inverse` is its two-sided inverse.
struct SplitReduceResult {
  QP reduced;                 // trivial arrows deleted
  Elem split_potential;       // on the input quiver: trivial + reduced parts
  std::vector<std::pair<std::string, std::string>> trivial_pairs;
  Substitution equivalence;
  Substitution inverse;
  std::vector<int> kept_arrows;  // input arrow ids surviving, in order
};

SplitReduceResult split_reduce(const QP& p);

// Mutation = premutation followed by split reduction.
struct MutationResult {
  Premutation pre;
  SplitReduceResult split;
  QP qp;  // final: reduced part of the premutated QP
};

MutationResult mutate(const QP& p, int k);

// Quiver isomorphisms that carry the first potential to the second (up to
// cyclic equivalence, coefficients matching exactly).
std::vector<QuiverIso> qp_isomorphisms(const QP& a, const QP& b, std::size_t limit = 16);

// Transport a QP along a renaming of another quiver's vertices/arrows.
Elem transport_potential(const Elem& w, const Quiver& src, const QuiverIso& iso,
                         const Quiver& dst);

// Span of the cyclic-class projections of the Jacobian ideal, degree 1..N:
// the QP is rigid (up to truncation) iff the classes of all cycles lie in
// the span of the classes of (cyclic derivative) * (closing path).
struct RigiditySpan {
  int num_classes = 0;
  int span_rank = 0;
  // Arrow-name word of the least cycle class (contract path order) whose
  // class is not in the span; absent when the span is full.
  std::optional<std::vector<std::string>> witness;
};

RigiditySpan rigidity_span(const QP& p);

// Deterministic pseudorandom reduced QP for tests: a random 2-acyclic
// quiver with a random potential supported on cycles of length 3..maxdeg.
QP random_reduced_qp(std::uint64_t seed, int nv = 4, int max_mult = 2, int maxdeg = 5,
                     int trunc = 12, int max_terms = 6);

}  // namespace qpmut
