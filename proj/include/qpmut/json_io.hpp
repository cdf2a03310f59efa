#pragma once

#include <string>

#include "json.hpp"
#include "qpmut/qp.hpp"
#include "qpmut/ratmat.hpp"
#include "qpmut/representation.hpp"

namespace qpmut {

// Interchange documents.  All rationals serialize as canonical strings
// ("p/q" in lowest terms, "p" for integers); element terms are listed in
// contract path order, so every emitted document is deterministic and
// re-parses to an equal value.
//
// Schemas:
//   quiver   {"vertices":["1","2"],"arrows":[{"name":"a","from":"1","to":"2"}]}
//   element  [{"coeff":"-3/2","path":["a","b"]}, {"coeff":"1","vertex":"v"}]
//   qp       {"quiver":..., "potential":[...], "frozen":["v"], "truncation":12}
//   rep      {"dims":{"1":1,"2":0},"matrices":{"a":[["1/2"]]}}
//   morphism {"maps":{"1":[["1"]],"2":[]}}
//
// Parsing throws QpError: "bad_json" for structural problems (wrong type,
// missing field), "unknown_vertex"/"unknown_arrow" for names outside the
// quiver, "bad_rational" for unparsable coefficients, "not_composable" for
// an element path that does not compose.  Matrices of a representation may
// be omitted (they default to zero); dimensions may not.

nlohmann::json quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const nlohmann::json& j);  // validated

nlohmann::json elem_to_json(const Quiver& q, const Elem& e);
Elem elem_from_json(const Quiver& q, const nlohmann::json& j, int trunc);

nlohmann::json qp_to_json(const QP& p);
QP qp_from_json(const nlohmann::json& j);  // canonicalized via validate_qp

nlohmann::json mat_to_json(const Mat& m);
// Shape-enforced: rows may be [] when the row count is zero.
Mat mat_from_json(const nlohmann::json& j, int rows, int cols);

nlohmann::json rep_to_json(const QP& p, const Representation& m);
// Shape-checked against the QP; call validate_rep separately for the
// nilpotency and relation checks.
Representation rep_from_json(const QP& p, const nlohmann::json& j);

nlohmann::json morphism_to_json(const QP& p, const RepMorphism& f);
RepMorphism morphism_from_json(const QP& p, const Representation& a,
                               const Representation& b, const nlohmann::json& j);

}  // namespace qpmut
