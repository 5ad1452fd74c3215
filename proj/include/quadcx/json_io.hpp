#pragma once

#include <json.hpp>

#include "quadcx/complexes.hpp"
#include "quadcx/isored.hpp"
#include "quadcx/matfac.hpp"
#include "quadcx/polyring.hpp"
#include "quadcx/simplicial.hpp"

namespace quadcx {

using Json = nlohmann::ordered_json;

Json to_json(const Rat& r);
Rat rat_from_json(const Json& j);  // "p/q" string or integer
Json to_json(const Mat& m);
Mat mat_from_json(const Json& j, int rows = -1, int cols = -1);
Json to_json(const MPoly& p);
MPoly poly_from_json(const Json& j, int nvars);
Json to_json(const GroebnerBasis& g);
Ideal ideal_from_json(const Json& j);  // {nvars, gens: [poly]}
Json to_json(const FreeComplex& c);
FreeComplex complex_from_json(const Json& j);
Json to_json(const ChainMap& f);
Json to_json(const IsotropicReduction& r);
Json to_json(const SimplicialSubset& k);
SimplicialSubset simplicial_from_json(const Json& j);
Json to_json(const GradedCohomology& h);
Json to_json(const Dt4Report& r);

}  // namespace quadcx
