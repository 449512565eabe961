#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "holocurve/characteristics.hpp"
#include "holocurve/curve.hpp"
#include "holocurve/interpolation.hpp"
#include "holocurve/ostrowski.hpp"
#include "holocurve/rescaling.hpp"
#include "holocurve/types.hpp"

namespace holocurve {

using Json = nlohmann::ordered_json;

// Complex numbers travel as {"re": x, "im": y} in every file format. CLI
// flags instead use the compact a+bi form, see parse_complex.

Json json_of(cplx v);
cplx complex_from_json(const Json& j);

Json json_of(const Curve& c);
Curve curve_from_json(const Json& j);

Json json_of(const OstrowskiData& d);
OstrowskiData ostrowski_from_json(const Json& j);

Json json_of(const InterpProblem& p);
InterpProblem problem_from_json(const Json& j);

Json json_of(const InterpState& st);
std::vector<VPoint> assignment_from_json(const Json& j);

Json json_of(const CharReport& r);
Json json_of(const OrderEstimate& r);
Json json_of(const RescaleResult& r);
Json json_of(const RescaleCheck& r);
Json json_of(const ConditionReport& r);
Json json_of(const Admissibility& r);
Json json_of(const MontelReport& r);
Json json_of(const QualityReport& r);
Json json_of(const ChpmReport& r);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);
void write_text_file(const std::string& path, const std::string& text);

/// "a+bi" (also plain "a", "bi", "i", "-i"). Whitespace-free.
cplx parse_complex(const std::string& s);

/// Comma-separated doubles / complex literals.
std::vector<double> parse_double_list(const std::string& s);
std::vector<cplx> parse_complex_list(const std::string& s);

/// CSV with header x,y,value; the x index varies fastest.
std::string grid_csv(const std::vector<double>& xs,
                     const std::vector<double>& ys,
                     const std::vector<double>& values);

/// CSV with header t,phi,slope (last knot repeats the final slope).
std::string phi_profile_csv(const PhiProfile& p);

/// CSV with header t,sup,argmax_re,argmax_im.
std::string lehto_csv(const std::vector<LehtoRow>& rows);

}  // namespace holocurve
