#pragma once

#include "minkgeo/body.hpp"
#include "minkgeo/metric.hpp"
#include "minkgeo/norm.hpp"

namespace minkgeo {

// Ratio of |y - x| to the distance from the origin to the boundary along the
// parallel ray; coincides with gauge(y - x). Recession directions give 0.
double minkowski_ratio_distance(const ConvexBody& body, const Vec& x, const Vec& y);

// log(|x - a| / |y - a|) where a is the exit point of the ray from x through
// y. Requires both points interior; 0 along directions the body never closes.
double funk_distance(const ConvexBody& body, const Vec& x, const Vec& y);

// Symmetrized Funk distance (half the log cross-ratio along the chord).
double hilbert_distance(const ConvexBody& body, const Vec& x, const Vec& y);

// Closed form on the open standard simplex: log(max_i(x_i/y_i) * max_j(y_j/x_j)).
// Arguments are positive vectors summing to 1.
double simplex_hilbert(const Vec& x, const Vec& y);

// Log chart L(x) = (log(x_1/x_k), ..., log(x_{k-1}/x_k)): an isometry from
// the simplex Hilbert metric onto the variation norm on R^{k-1}.
Vec simplex_to_minkowski(const Vec& x);

// Variation norm on R^{k-1}: append a zero coordinate, take max minus min.
// Its unit ball is a polytope, so this is an exact polytope gauge.
WeakNorm variation_norm(int k);

// The open standard simplex in barycentric coordinates, mapped to a bounded
// body with interior origin: translate the barycenter to 0, drop the last
// coordinate.
ConvexBody embedded_simplex_body(int k);
Vec embed_simplex_point(const Vec& x);

// Radius along a unit direction: the point at the given Funk (resp. Hilbert)
// distance from the center. Funk has a closed form; Hilbert bisects.
double funk_ball_radius(const ConvexBody& body, const Vec& center, const Vec& dir, double r);
double hilbert_ball_radius(const ConvexBody& body, const Vec& center, const Vec& dir, double r);

MetricOracle funk_oracle(BodyPtr body);
MetricOracle hilbert_oracle(BodyPtr body);

}  // namespace minkgeo
