#include "minkgeo/json_io.hpp"

#include <cmath>

namespace minkgeo {

ordered_json json_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

ordered_json to_json(const Vec& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(json_number(x));
  return a;
}

ordered_json to_json(const Mat& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(json_number(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

ordered_json to_json(const Witness& w) {
  ordered_json j;
  ordered_json pts = ordered_json::array();
  for (const Vec& p : w.points) pts.push_back(to_json(p));
  j["points"] = pts;
  j["values"] = to_json(w.values);
  j["note"] = w.note;
  return j;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

ordered_json to_json(const PropertyReport& r) {
  ordered_json j;
  j["verdict"] = verdict_name(r.verdict);
  j["witness"] = r.witness ? to_json(*r.witness) : ordered_json(nullptr);
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["max_violation"] = json_number(r.max_violation);
  if (r.quasi_constant) j["quasi_constant"] = json_number(*r.quasi_constant);
  if (r.strict) j["strict"] = to_json(*r.strict);
  return j;
}

ordered_json to_json(const NormClassification& c) {
  ordered_json j;
  j["finite"] = c.finite;
  j["separating"] = c.separating;
  j["weakly_separating"] = c.weakly_separating;
  j["reversible"] = c.reversible;
  j["quasi_constant"] = json_number(c.quasi_constant);
  j["analytic"] = c.analytic;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  return j;
}

ordered_json to_json(const MinkowskiDecision& d) {
  ordered_json j;
  j["minkowski"] = d.minkowski;
  j["verdict"] = d.verdict;
  j["midpoint"] = to_json(d.midpoint);
  j["line_continuity"] = to_json(d.line_continuity);
  j["reconstruction"] = to_json(d.reconstruction);
  return j;
}

ordered_json to_json(const TensorAtPoint& t) {
  ordered_json j;
  j["base"] = to_json(t.base);
  j["matrix"] = to_json(t.matrix);
  j["min_eigenvalue"] = json_number(t.min_eigenvalue);
  j["method"] = t.method;
  j["step"] = t.step;
  ordered_json warnings = ordered_json::array();
  if (t.nonsmooth_warning) warnings.push_back("non-smooth point: one-sided derivatives disagree");
  j["warnings"] = warnings;
  return j;
}

ordered_json to_json(const ConvexityClass& c) {
  ordered_json j;
  switch (c.kind) {
    case ConvexityKind::not_strictly_convex:
      j["kind"] = "not_strictly_convex";
      break;
    case ConvexityKind::strictly_not_strongly:
      j["kind"] = "strictly_not_strongly";
      break;
    case ConvexityKind::strongly_convex:
      j["kind"] = "strongly_convex";
      break;
    case ConvexityKind::inconclusive:
      j["kind"] = "inconclusive";
      break;
  }
  if (c.segment) {
    j["segment"] = ordered_json::array({to_json(c.segment->first), to_json(c.segment->second)});
  }
  if (c.weak_direction) j["weak_direction"] = to_json(*c.weak_direction);
  j["min_eigenvalue"] = json_number(c.min_eigenvalue);
  j["detail"] = c.detail;
  return j;
}

ordered_json to_json(const Ellipsoid& e) {
  ordered_json j;
  j["center"] = to_json(e.center);
  j["shape"] = to_json(e.shape);
  return j;
}

ordered_json to_json(const MveeResult& m) {
  ordered_json j = to_json(m.ellipsoid);
  j["kind"] = "loewner (circumscribed)";
  j["eps"] = m.eps;
  j["iterations"] = m.iterations;
  j["gap"] = json_number(m.gap);
  return j;
}

ordered_json to_json(const ConjugationReport& c) {
  ordered_json j;
  j["f"] = to_json(c.f);
  j["orth_residual"] = json_number(c.orth_residual);
  j["isometry_residual"] = json_number(c.isometry_residual);
  j["loewner"] = to_json(c.loewner);
  j["mvee_iterations"] = c.mvee_iterations;
  return j;
}

ordered_json to_json(const EuclideanFit& f) {
  ordered_json j;
  j["euclidean"] = f.shape.has_value();
  if (f.shape) j["shape"] = to_json(*f.shape);
  j["residual"] = json_number(f.residual);
  j["worst_direction"] = to_json(f.worst_direction);
  return j;
}

std::string dump_report(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace minkgeo
