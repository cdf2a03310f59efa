#pragma once

#include <string>
#include <vector>

#include "qpmut/jacobian.hpp"
#include "qpmut/qp.hpp"
#include "qpmut/ratmat.hpp"

namespace qpmut {

// m[i][j] value standing for an infinite entry of the Coxeter matrix.
inline constexpr int kCoxeterInfinity = 0;

// Coxeter presentation attached to a loop-free quiver: generators are the
// vertices, m[i][j] is 2, 3, or infinity according to whether 0, 1, or >= 2
// arrows join i and j (either direction), and b is the rational symmetric
// form with b(i,i) = 1 and off-diagonal entries 0, -1/2, -1 respectively.
struct CoxeterDatum {
  Quiver base;
  std::vector<std::vector<int>> m;  // diagonal entries 1
  Mat b;
};

CoxeterDatum coxeter_datum(const Quiver& q);

// Translate a word of vertex names into vertex indices (throws on an
// unknown letter).
std::vector<int> word_letters(const Quiver& q, const std::vector<std::string>& word);

// True iff every prefix keeps the next simple root positive in the geometric
// representation over the exact form b (the standard length criterion).
bool is_reduced_word(const CoxeterDatum& c, const std::vector<std::string>& word);

// The doubled quiver: a star companion a*: j -> i per arrow a: i -> j, with
// epsilon +1 on the original arrows and -1 on the stars, plus the element
// sum_a (a a* - a* a) whose closure defines the preprojective algebra (kept
// as data; nothing is quotiented here).
struct DoubledQuiver {
  Quiver quiver;              // original arrows first, stars appended in order
  std::vector<int> epsilon;   // +1 / -1 per arrow
  std::vector<int> star_of;   // index of the star companion of each arrow
  Elem preprojective_relation;
};

DoubledQuiver doubled_quiver(const Quiver& q, int trunc = 12);

// The word quiver of a reduced word u_1 ... u_m: one vertex per letter,
// named "<type>:<r>" for the r-th occurrence of the letter; left arrows
// "L:<type>:<r>" from each occurrence to its predecessor of the same type;
// a right arrow per doubled-quiver arrow a: i -> j and occurrence u of type
// i whenever a later occurrence v of type j satisfies: no type-i vertex
// strictly between u and v, and any later type-j vertex has a type-i vertex
// between it and v.  Right arrows are named "<base>:<r>" after their
// doubled-quiver arrow and source occurrence.  The last occurrence of each
// type is frozen; the stable quiver is the full one with frozen vertices
// (and incident arrows) removed.
struct WordQuiver {
  std::vector<int> word;            // letters as base vertex indices
  Quiver quiver;                    // vertices in word order
  std::vector<int> vtype;           // base vertex index per position
  std::vector<int> vocc;            // occurrence number per position (1-based)
  std::vector<bool> arrow_left;     // per arrow: left (successor) arrow?
  std::vector<std::string> arrow_base;  // doubled-quiver name for right arrows
  std::vector<int> arrow_eps;       // +1 / -1 for right arrows, 0 for left
  std::vector<std::string> frozen;  // vertex names, last occurrence per type
  Quiver stable;                    // induced subquiver on unfrozen vertices
  std::vector<int> stable_to_full;  // arrow index mapping
};

WordQuiver word_quiver(const CoxeterDatum& c, const std::vector<std::string>& word);

// The potential of a word quiver: for each right arrow b whose star
// companion continues out of b's target, the cycle epsilon(b) b b* p with p
// the descending left path back to b's source; the full QP carries the
// frozen set, the stable QP is the same construction inside the stable
// quiver.  (The frozen presentation is conjectural; the stable one is the
// proven description.)
struct WordQpResult {
  WordQuiver wq;
  QP full;    // on wq.quiver, frozen = wq.frozen
  QP stable;  // on wq.stable, nothing frozen
};

WordQpResult word_qp(const CoxeterDatum& c, const std::vector<std::string>& word,
                     int trunc = 12);

// Rigidity of the stable word QP, via the truncated certificate machinery.
RigidityVerdict word_qp_rigidity(const CoxeterDatum& c,
                                 const std::vector<std::string>& word, int trunc = 12);

}  // namespace qpmut
