#pragma once

#include <json.hpp>

#include "loopline/dseries.hpp"
#include "loopline/integrate.hpp"

namespace loopline {

using Json = nlohmann::json;

Json laurent_to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const Json& j);

Json ratfunc_to_json(const RatFunc& f);
RatFunc ratfunc_from_json(const Json& j);

Json matrix_to_json(const LaurentMatrix& m);
Json ratfunc_matrix_to_json(const RatFuncMatrix& m);

Json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const Json& j);

Json series_to_json(const DiagramSeries& s);
DiagramSeries series_from_json(const Json& j, int canon_bound = 24);

/// R-input file: a list of (diagram, rational coefficient) records.
DiagramSeries load_r_file(const std::string& path, int canon_bound = 24);

Json loop_expansion_to_json(const LoopExpansion& le);

} // namespace loopline
