#pragma once

#include <cstdint>
#include <vector>

#include "qpmut/qp.hpp"
#include "qpmut/ratmat.hpp"

namespace qpmut {

// A finite-dimensional right module over the truncated Jacobian algebra of a
// QP: a space per vertex and a matrix per arrow a acting on row vectors,
// mats[a]: dims[s(a)] x dims[e(a)].  A path acts by the product of its arrow
// matrices in path order.
struct Representation {
  std::vector<int> dims;
  std::vector<Mat> mats;
};

Representation zero_rep(const QP& p);
Representation simple_rep(const QP& p, int v);
Representation direct_sum(const QP& p, const Representation& a, const Representation& b);

// Shape check, nilpotency within the truncation bound, and the defining
// relations (cyclic derivatives of the potential act by zero).
void validate_rep(const QP& p, const Representation& m);

Mat eval_path(const Representation& m, const Path& p);

// Evaluate an element all of whose terms run from `from` to `to`.
Mat eval_elem(const Quiver& q, const Representation& m, const Elem& e, int from, int to);

// A morphism is a matrix per vertex, f[v]: a.dims[v] x b.dims[v], commuting
// with every arrow action: mats[a] . f[e(a)] = f[s(a)] . mats'[a].
struct RepMorphism {
  std::vector<Mat> f;
};

bool is_morphism(const QP& p, const Representation& a, const Representation& b,
                 const RepMorphism& f);
RepMorphism compose(const RepMorphism& f, const RepMorphism& g);

std::vector<RepMorphism> hom_basis(const QP& p, const Representation& a,
                                   const Representation& b);

// Randomized isomorphism test: equal dimension vectors plus an invertible
// combination of a hom-space basis (random search with a deterministic
// seed, exhaustive over a small grid when the hom space is small).
bool are_isomorphic(const QP& p, const Representation& a, const Representation& b,
                    std::uint64_t seed = 0);

// Remove the largest direct summand supported on the simple at vertex k.
struct StripResult {
  Representation rep;
  int stripped = 0;
};
StripResult strip_simple_summands(const QP& p, const Representation& m, int k);

Representation transport_rep(const Representation& m, const Quiver& src,
                             const QuiverIso& iso, const Quiver& dst);

// The local data of mutation at k: the triangle alpha: M_in -> M_k,
// beta: M_k -> M_out, gamma: M_out -> M_in (second derivatives of the
// potential), adapted bases for Ker gamma / Im beta, Im gamma and
// Ker alpha / Im gamma, the chosen splittings, and the maps through
// Cok beta used for morphism mutation.  `alt_splitting` selects a second,
// genuinely different family of splittings.
struct MutationScaffold {
  std::vector<int> in_arrows, out_arrows;  // arrow ids, definition order
  std::vector<int> in_off, out_off;        // component offsets
  int n_in = 0, n_out = 0;
  int c1 = 0, c2 = 0, c3 = 0;  // dims of Ker g/Im b, Im g, Ker a/Im g
  Mat alpha, beta, gamma;
  Mat im_beta;              // echelon rows spanning Im beta
  Mat c1rows, c2rows, c3rows;
  Mat kalpha;               // adapted basis of Ker alpha: [c2rows; c3rows]
  Mat rho_pi;               // M_out -> (Ker g / Im b) coordinates
  Mat gamma_c2;             // gamma in Im-gamma coordinates
  Mat alpha_t, beta_t;      // actions of the starred arrows, assembled
  Mat cok_basis, pcok;      // Cok beta: basis rows and coordinate projection
  Mat itil, gtil, rtil, jmat;  // induced maps through Cok beta
};

MutationScaffold build_scaffold(const QP& p, const Representation& m, int k,
                                bool alt_splitting = false);

// Mutation of a representation at vertex k: the new module over the
// premutated QP, then its transport through the reduction substitution to
// the reduced QP.  Dimensions away from k are preserved.
struct RepMutation {
  MutationResult mut;
  MutationScaffold scaffold;
  Representation premutated;  // over mut.pre.qp
  Representation rep;         // over mut.qp
};

RepMutation mutate_rep(const QP& p, const Representation& m, int k,
                       bool alt_splitting = false);

// Mutation of a morphism f: a -> b at vertex k, as a morphism between the
// mutated representations (valid over both the premutated and reduced QP).
RepMorphism mutate_morphism(const QP& p, const Representation& a, const Representation& b,
                            const RepMorphism& f, int k, bool alt_splitting = false);

// The failure of strict functoriality: for f: a -> b and g: b -> c, the
// difference mutate(f) . mutate(g) - mutate(f . g) is supported at the
// mutated vertex and concentrated in the corner block
// (Ker a/Im g) -> (Ker g''/Im b''), where it equals a predictable composite
// through the middle representation.
struct DefectReport {
  Mat diff_k;          // difference at the mutated vertex
  Mat predicted;       // predicted corner block
  bool corner_only = false;   // difference vanishes outside the corner
  bool corner_matches = false;  // corner equals the prediction
};

DefectReport functoriality_defect(const QP& p, const Representation& a,
                                  const Representation& b, const Representation& c,
                                  const RepMorphism& f, const RepMorphism& g, int k,
                                  bool alt_splitting = false);

// Double mutation at k, composed with a QP isomorphism back to the input,
// recovers the representation up to simple summands at k: the nearly Morita
// correspondence on objects.  Tries every QP isomorphism candidate.
bool check_nearly_morita(const QP& p, const Representation& m, int k,
                         std::uint64_t seed = 0);

}  // namespace qpmut
