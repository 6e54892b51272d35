#pragma once

#include <json.hpp>

#include "thomalab/algebra_lab.hpp"
#include "thomalab/permutation.hpp"
#include "thomalab/tensor_model.hpp"
#include "thomalab/thoma.hpp"

namespace thomalab {

using Json = nlohmann::ordered_json;

// {"cycles": [[...], ...]} in canonical form.
Json permutation_to_json(const Permutation& p);
Permutation permutation_from_json(const Json& j);

// {"alphabet": "star"|"coxeter", "letters": [...]}
Json word_to_json(const GeneratorWord& w);
GeneratorWord word_from_json(const Json& j);

// {"a": ["1/2", ...], "b": [...], "c": "1/4"}; c is derived on input.
Json params_to_json(const ThomaParams& p);
ThomaParams params_from_json(const Json& j);

// {"atoms": [{"t": ..., "mass": ..., "multiplicity": ...}], "zero_mass": ...}
Json measure_to_json(const ThomaMeasure& m);
ThomaMeasure measure_from_json(const Json& j);

Json cycle_type_to_json(const CycleType& t);

Json measure_report_to_json(const ThomaMeasureReport& report);

// {"terms": [{"coeff": ..., "perm": {...}, "diag": {"slot": [values]}}]}
Json operator_to_json(const ModelOperator& x);
ModelOperator operator_from_json(const Json& j);

// Rational-complex scalar: "p/q" for real values, ["re", "im"] otherwise.
Json crat_to_json(const CRat& z);
CRat crat_from_json(const Json& j);

Json cmatrix_to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const Json& j);

// {"dim": n, "density": [[...]], "generators": [[[...]]]}: the algebra is
// the closure of the generators under the given state.
TracialAlgebra tracial_algebra_from_json(const Json& j);

// Exact defects as fraction strings.
Json commuting_square_report_to_json(const CommutingSquareReport& report);

}  // namespace thomalab
