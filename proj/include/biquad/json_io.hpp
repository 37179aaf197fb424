#pragma once

#include <json.hpp>

#include "biquad/algebra.hpp"
#include "biquad/core.hpp"
#include "biquad/decomp.hpp"
#include "biquad/interval.hpp"
#include "biquad/meigen.hpp"

// JSON forms used by the CLI and by files on disk.  Tensor files carry
// {"m", "n", "layout": "dense-i1j1i2j2-rowmajor", "entries": [...]}; the
// third-order format adds "p".  Parsing throws biquad::Error on any schema
// or finiteness problem.
namespace biquad::io {

using json = nlohmann::json;

inline constexpr const char* kTensorLayout = "dense-i1j1i2j2-rowmajor";
inline constexpr const char* kThirdOrderLayout = "dense-kij-rowmajor";

json tensor_to_json(const Tensor4& t);
json tensor_to_json(const BiquadraticTensor& a);
Tensor4 tensor4_from_json(const json& j);

json third_order_to_json(const ThirdOrderTensor& t);
ThirdOrderTensor third_order_from_json(const json& j);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json decomposition_to_json(const BQDecomposition& d);
BQDecomposition decomposition_from_json(const json& j);

json interval_to_json(const NormInterval& iv);
json meigenpair_to_json(const MEigenPair& p);
json psd_verdict_to_json(const PsdVerdict& v);
json inequality_report_to_json(const InequalityReport& r);
json tucker_to_json(const TuckerForm& t);
json br_report_to_json(const BrPreservationReport& r);

}  // namespace biquad::io
