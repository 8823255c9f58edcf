#pragma once

#include <json.hpp>

#include "cochainlab/affine.hpp"

namespace cochainlab {

using Json = nlohmann::json;

/// Group spec: {"type":"table","mul":[[...]]} or
/// {"type":"permutation","degree":k,"generators":[[...]]}.
GroupPtr group_from_json(const Json& j, int size_cap = kDefaultGroupSizeCap);

/// Rep spec: {"kind":"regular"} | {"kind":"permutation","action":[[...]]} |
/// {"kind":"matrices","entries":{"g":[["p/q",...],...]}}; p as "2" or "inf".
ModulePtr module_from_json(const GroupPtr& G, const Json& rep, const PNorm& p);

PNorm pnorm_from_json(const Json& j);

/// Algebra elements serialize as {"element_index":"p/q"}.
AlgebraElement algebra_from_json(const GroupPtr& G, const Json& j);
Json algebra_to_json(const AlgebraElement& x);

/// Cochains serialize as {"degree":n,"values":{"g1,g2":["p/q",...]}};
/// missing tuples are zero.
Cochain cochain_from_json(const ModulePtr& M, const Json& j);
Json cochain_to_json(const Cochain& c);

/// fp spec: {"type":"fp","generators":["a","b"],"relators":["abAB"]}.
FpPresentation fp_from_json(const Json& j);

RatMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const RatMatrix& m);

RatVec ratvec_from_json(const Json& j);
Json ratvec_to_json(const RatVec& v);

}  // namespace cochainlab
