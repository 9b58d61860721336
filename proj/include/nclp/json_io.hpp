#pragma once

#include <json.hpp>

#include "nclp/epcfm.hpp"
#include "nclp/isometry.hpp"

namespace nclp {

// Deterministic key order keeps reports byte-stable.
using Json = nlohmann::ordered_json;

// complex entries are [re, im]
Json to_json(const Complex& z);
Json to_json(const AlgebraDescriptor& alg);   // {"dims": [...], "weights": [...]}
Json to_json(const AlgebraElement& x);        // {"blocks": [[[ [re,im], ... ]]]}
Json to_json(const LpElement& xi);            // {"p": p, "element": ...}
Json to_json(const JordanMono& j);            // slots + conjugator (+ descriptors)
Json to_json(const Superop& op);              // dense matrix + its bases
Json to_json(const YeadonTriple& t);
Json to_json(const TypicalTriple& t);
Json to_json(const LpMap& t);                 // {"p", "domain", "codomain", "matrix"}
Json to_json(const BlochCFM& rho);            // {"c", "odd_poly", "p"}

Complex complex_from_json(const Json& js);
AlgebraDescriptor descriptor_from_json(const Json& js);
AlgebraElement element_from_json(const Json& js, const AlgebraDescriptor& alg);
LpElement lp_element_from_json(const Json& js, const AlgebraDescriptor& alg);
JordanMono jordan_from_json(const Json& js);
Superop superop_from_json(const Json& js);
YeadonTriple yeadon_from_json(const Json& js);
TypicalTriple typical_from_json(const Json& js);
LpMap lp_map_from_json(const Json& js);
BlochCFM bloch_from_json(const Json& js);

}  // namespace nclp
