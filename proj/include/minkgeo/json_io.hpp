#pragma once

#include <string>

#include "json.hpp"
#include "minkgeo/checkers.hpp"
#include "minkgeo/differential.hpp"
#include "minkgeo/ellipsoid.hpp"
#include "minkgeo/norm.hpp"

namespace minkgeo {

using ordered_json = nlohmann::ordered_json;

// Extended reals: finite values stay numbers, infinities become the strings
// "inf" / "-inf" so reports survive strict JSON parsers.
ordered_json json_number(double v);

ordered_json to_json(const Vec& v);
ordered_json to_json(const Mat& m);  // row-major nested arrays
ordered_json to_json(const Witness& w);
ordered_json to_json(const PropertyReport& r);
ordered_json to_json(const NormClassification& c);
ordered_json to_json(const MinkowskiDecision& d);
ordered_json to_json(const TensorAtPoint& t);
ordered_json to_json(const ConvexityClass& c);
ordered_json to_json(const Ellipsoid& e);
ordered_json to_json(const MveeResult& m);
ordered_json to_json(const ConjugationReport& c);
ordered_json to_json(const EuclideanFit& f);

std::string verdict_name(Verdict v);

// Serialization with byte-stable number formatting (shortest round-trip via
// the JSON library) and two-space indentation plus a trailing newline.
std::string dump_report(const ordered_json& j);

}  // namespace minkgeo
