#pragma once

// JSON encodings. Complex numbers are {"re": x, "im": y}; characteristics are
// {"mp": [a, b, c], "mpp": [d, e, f]}.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "theta_quartic/pipeline.hpp"

namespace tq::json_io {

using nlohmann::json;

json to_json(Complex z);
json to_json(const Characteristic& m);
json to_json(const Vector3c& v);
json to_json(const Matrix3c& m);
json to_json(const PeriodMatrix& tau);  ///< {"tau": [[...]x3]}
json to_json(const QuarticCurve& f);
json to_json(const BitangencyReport& r, QuadForm q);

/// Weber-core output: aronhold, eps, a, bitangents, quartic, xi, k, lambda.
json frame_to_json(const PipelineResult& result);
/// Verify report: one entry per line plus {"pass", "fail", "max_residual"}.
json report_to_json(const PipelineResult& result);

// Parsers throw InputError with a message naming the offending field.
Complex complex_from_json(const json& j);
Characteristic characteristic_from_json(const json& j);
/// Raw 3x3 matrix from {"tau": ...}; validation is left to PeriodMatrix.
Matrix3c tau_from_json(const json& j);
Matrix3c read_tau(std::istream& in);
Matrix3c read_tau_file(const std::string& path);

}  // namespace tq::json_io
