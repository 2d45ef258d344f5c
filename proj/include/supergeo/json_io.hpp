#pragma once

#include <json.hpp>

#include "supergeo/atlas.hpp"
#include "supergeo/matrix.hpp"

namespace supergeo {

// JSON shapes (stable, schema-versioned at the document level):
//   term      {"coeff":"p/q","even":{name:int,...},"params":{name:int,...},"odd":[names]}
//   poly      [term, ...]                      (term-order sorted)
//   frac      {"num": poly, "den": poly}
//   matrix    {"row_parities":[...], "col_parities":[...], "entries":[frac,...]}  row-major
//   context   {"even":[names], "odd":[names], "params":[names]}
// Only nonzero exponents are emitted, so serialize(parse(x)) == x byte for byte
// once the document is normalized by nlohmann's sorted object keys.

nlohmann::json context_to_json(const GeneratorContext& ctx);
ContextPtr context_from_json(const nlohmann::json& j);

nlohmann::json poly_to_json(const SuperPoly& p);
SuperPoly poly_from_json(const nlohmann::json& j, const ContextPtr& ctx);

nlohmann::json frac_to_json(const SuperFrac& f);
SuperFrac frac_from_json(const nlohmann::json& j, const ContextPtr& ctx);

nlohmann::json matrix_to_json(const SuperMatrix& m);
SuperMatrix matrix_from_json(const nlohmann::json& j, const ContextPtr& ctx);

// Self-contained documents carrying their own context.
nlohmann::json poly_document(const SuperPoly& p);
SuperPoly poly_from_document(const nlohmann::json& j);
nlohmann::json frac_document(const SuperFrac& f);
SuperFrac frac_from_document(const nlohmann::json& j);
nlohmann::json matrix_document(const SuperMatrix& m);
SuperMatrix matrix_from_document(const nlohmann::json& j);

// Atlas document ("atlas/1"): shared parameter list, charts as
// {"name","even","odd"}, transitions as {"source","target","assignment"}
// with one frac per target coordinate.  Identity transitions are implied.
nlohmann::json atlas_document(const Atlas& atlas);
Atlas atlas_from_document(const nlohmann::json& j);

}  // namespace supergeo
