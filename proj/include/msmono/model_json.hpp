#pragma once

#include <string>

#include <json.hpp>

#include "msmono/competitors.hpp"
#include "msmono/geometry.hpp"

namespace msmono {

// Model documents:
//   {"kind": "crack_tip", "tip": [x, y], "axis_angle": a}
//   {"kind": "planar_interface", "point": [x, y], "normal": [nx, ny], "alpha": a, "beta": b}
//   {"kind": "propeller", "center": [x, y], "axis_angle": a, "values": [v0, v1, v2]}
//   {"kind": "smooth_harmonic", "center": [x, y], "coefficients": [[a0, b0], [a1, b1], ...]}
// tip/center default to the origin and axis_angle to 0. Unknown keys are rejected.

// Throws SchemaError naming the offending field.
FieldModel model_from_json(const nlohmann::json& doc);
nlohmann::json model_to_json(const FieldModel& model);

// `source` is either inline JSON (first non-blank character '{') or a file path.
// Parse errors are reported as SchemaError with line and column.
FieldModel load_model(const std::string& source);

// {"r": r, "a": [...], "b": [...]}
FourierTrace fourier_trace_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const FourierTrace& trace);

// {"r": r, "theta": theta, "a": [...]}
SectorTrace sector_trace_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const SectorTrace& trace);

}  // namespace msmono
