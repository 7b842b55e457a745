#pragma once

#include <vector>

#include "json.hpp"
#include "pinv/canonical_form.hpp"
#include "pinv/group_action.hpp"
#include "pinv/invariants.hpp"
#include "pinv/polynomial.hpp"

namespace pinv {

using Json = nlohmann::ordered_json;

Json to_json(Root r);
/// Throws Error(ParseError).
Root root_from_json(const Json& j);

/// {"terms": [{"coef": "p/q", "vars": [{"row", "col", "exp"}]}]}.
Json to_json(const Polynomial& p);
/// Throws Error(ParseError) or Error(UnknownVariable).
Polynomial polynomial_from_json(const Json& j, const VarSetPtr& vars);

/// {"n", "entries": [{"row", "col", "value"}]}, nonzero entries only.
Json to_json(const PointM& x, int n);
/// Entries not listed are zero. Throws Error(ParseError) on a malformed
/// document or a dimension mismatch, Error(UnknownVariable) for a nonzero
/// entry outside the universe.
PointM point_from_json(const Json& j, const VarSetPtr& vars, int n);

/// {"n", "entries"} listing every nonzero entry, diagonal included.
Json to_json(const GroupElement& g);
/// With unipotent_shorthand, missing diagonal entries read as 1.
GroupElement group_from_json(const Json& j, bool unipotent_shorthand = false);

/// [{"op": "h", "i", "b", "step"}] in application order.
Json to_json(const ReductionTranscript& t);

/// M_xi with its row and column sets as witnesses.
Json minor_json(const InvariantFamily& family, Root xi);
/// L_phi with its admissible pair as witnesses.
Json l_json(const InvariantFamily& family, Root phi);
/// A_psi or B_psi: certificate roots as witnesses, expanded num and den,
/// plus the factor lists.
Json invariant_json(const InvariantFamily& family, const FactoredInvariant& inv);

}  // namespace pinv
