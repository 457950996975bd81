#pragma once

// File formats. Every float is written with 17 significant digits ("%.17g"),
// so equal values always serialize to equal bytes and parse back exactly.
//
//   polygon   {"vertices": [[x, y], ...]}
//   samples   {"points": [[m, n], ...], "values": [[re, im], ...]}
//   slopes    {"slopes": [[x, y], ...]}
//   exppoly   {"degree_bound": D, "terms": [{"x", "y", "coeffs": [[[re, im], ...], ...]}]}
//
// Parse failures throw format errors.

#include <string>

#include "json.hpp"

#include "prony2d/expoly.hpp"
#include "prony2d/geometry.hpp"
#include "prony2d/pipeline.hpp"
#include "prony2d/recover2d.hpp"
#include "prony2d/sampling.hpp"

namespace prony2d::io {

using Json = nlohmann::json;

/// Compact JSON with "%.17g" floats and a trailing newline.
std::string dump(const Json& j);
/// Throws format on malformed text.
Json parse(const std::string& text);

Json to_json(const Polygon& P);
Json to_json(const SampleSet& s);
Json to_json(const SlopeSet& s);
Json to_json(const ExpPoly2D& f);
Json to_json(const RecoveryReport& r);
Json to_json(const UniquenessReport& r);

/// Runs validate_polygon on the vertex list.
Polygon polygon_from_json(const Json& j);
SampleSet samples_from_json(const Json& j);
SlopeSet slopes_from_json(const Json& j);
ExpPoly2D exppoly_from_json(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace prony2d::io
