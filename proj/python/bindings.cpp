#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minkgeo/body.hpp"
#include "minkgeo/checkers.hpp"
#include "minkgeo/differential.hpp"
#include "minkgeo/ellipsoid.hpp"
#include "minkgeo/error.hpp"
#include "minkgeo/json_io.hpp"
#include "minkgeo/metric.hpp"
#include "minkgeo/norm.hpp"
#include "minkgeo/projective.hpp"
#include "minkgeo/svg.hpp"

namespace py = pybind11;

namespace {

using minkgeo::BodyPtr;
using minkgeo::ConvexBody;
using minkgeo::MetricOracle;
using minkgeo::ordered_json;
using minkgeo::SamplingPlan;
using minkgeo::Vec;
using minkgeo::WeakNorm;

struct PyBody {
  BodyPtr ptr;
};

SamplingPlan make_plan(std::uint64_t seed, std::int64_t samples, int threads, double eps_num) {
  SamplingPlan plan;
  plan.seed = seed;
  plan.count = samples;
  plan.threads = threads;
  plan.eps_num = eps_num;
  return plan;
}

std::pair<bool, std::string> run_suite(const MetricOracle& oracle, const std::string& suite,
                                       const SamplingPlan& plan, int depth) {
  ordered_json results;
  bool failed = false;
  auto run = [&](const char* key, const minkgeo::PropertyReport& rep) {
    results[key] = minkgeo::to_json(rep);
    failed = failed || rep.verdict == minkgeo::Verdict::fail;
  };
  run("axioms", minkgeo::check_weak_axioms(oracle, plan));
  if (suite == "minkowski" || suite == "funk")
    run("projective", minkgeo::check_projective(oracle, plan));
  if (suite == "minkowski") {
    run("midpoint", minkgeo::check_midpoint(oracle, plan));
    Vec p(oracle.dim, 0.0);
    Vec q(oracle.dim, 0.0);
    q[0] = 1.0;
    if (oracle.domain) {
      double f = minkgeo::gauge(*oracle.domain, q);
      if (std::isfinite(f) && f > 0.0) q[0] = 0.5 / f;
    }
    run("dyadic", minkgeo::check_dyadic(oracle, p, q, depth, plan));
    run("translation", minkgeo::check_translation_invariance(oracle, plan));
    minkgeo::MinkowskiDecision dec = minkgeo::decide_minkowski(oracle, plan);
    results["decide"] = minkgeo::to_json(dec);
    failed = failed || !dec.minkowski;
  } else if (suite != "axioms" && suite != "funk") {
    minkgeo::fail_schema("unknown suite: " + suite);
  }
  ordered_json j;
  j["metric"] = oracle.name;
  j["suite"] = suite;
  j["results"] = results;
  return {!failed, minkgeo::dump_report(j)};
}

}  // namespace

PYBIND11_MODULE(_minkgeo, m) {
  m.doc() = "gauges, weak Minkowski norms, and projective metrics on convex bodies";
  py::register_exception<minkgeo::Error>(m, "GeometryError");

  py::class_<PyBody>(m, "Body")
      .def_static("parse",
                  [](const std::string& text) {
                    return PyBody{std::make_shared<const ConvexBody>(minkgeo::parse_body(text))};
                  },
                  py::arg("json_text"))
      .def_property_readonly("dim", [](const PyBody& b) { return b.ptr->dim(); })
      .def("gauge", [](const PyBody& b, const Vec& x) { return minkgeo::gauge(*b.ptr, x); },
           py::arg("point"))
      .def("to_json", [](const PyBody& b) { return minkgeo::body_to_json_string(*b.ptr); })
      .def("recession_ray",
           [](const PyBody& b) -> std::optional<Vec> { return minkgeo::recession_ray(*b.ptr); })
      .def("ray_boundary",
           [](const PyBody& b, const Vec& base, const Vec& dir) {
             return minkgeo::ray_boundary(*b.ptr, base, dir);
           },
           py::arg("base"), py::arg("unit_dir"));

  m.def("dist",
        [](const PyBody& b, const Vec& x, const Vec& y) {
          return minkgeo::minkowski_ratio_distance(*b.ptr, x, y);
        },
        py::arg("body"), py::arg("from_point"), py::arg("to_point"));
  m.def("funk",
        [](const PyBody& b, const Vec& x, const Vec& y) {
          return minkgeo::funk_distance(*b.ptr, x, y);
        });
  m.def("hilbert",
        [](const PyBody& b, const Vec& x, const Vec& y) {
          return minkgeo::hilbert_distance(*b.ptr, x, y);
        });
  m.def("simplex_hilbert", &minkgeo::simplex_hilbert, py::arg("x"), py::arg("y"));
  m.def("simplex_to_minkowski", &minkgeo::simplex_to_minkowski, py::arg("x"));
  m.def("variation_norm_value",
        [](int k, const Vec& v) { return minkgeo::variation_norm(k)(v); },
        py::arg("k"), py::arg("v"));

  m.def("classify",
        [](const PyBody& b, std::uint64_t seed, std::int64_t samples, int threads,
           double eps_num) {
          SamplingPlan plan = make_plan(seed, samples, threads, eps_num);
          WeakNorm norm = WeakNorm::from_body(*b.ptr);
          ordered_json j;
          j["classification"] = minkgeo::to_json(minkgeo::classify_norm(norm, plan));
          return minkgeo::dump_report(j);
        },
        py::arg("body"), py::arg("seed") = 0, py::arg("samples") = 1000,
        py::arg("threads") = 1, py::arg("eps_num") = minkgeo::kEpsNum);

  m.def("euclidean_sandwich",
        [](const PyBody& b, std::uint64_t seed, std::int64_t samples, int threads) {
          SamplingPlan plan = make_plan(seed, samples, threads, minkgeo::kEpsNum);
          return minkgeo::euclidean_sandwich(WeakNorm::from_body(*b.ptr), plan);
        },
        py::arg("body"), py::arg("seed") = 0, py::arg("samples") = 1000,
        py::arg("threads") = 1);

  m.def("check",
        [](const PyBody& b, const std::string& metric, const std::string& suite,
           std::uint64_t seed, std::int64_t samples, int threads, int depth, double eps_num) {
          SamplingPlan plan = make_plan(seed, samples, threads, eps_num);
          MetricOracle oracle;
          if (metric == "norm")
            oracle = minkgeo::metric_from_norm(WeakNorm::from_body(*b.ptr));
          else if (metric == "funk")
            oracle = minkgeo::funk_oracle(b.ptr);
          else if (metric == "hilbert")
            oracle = minkgeo::hilbert_oracle(b.ptr);
          else
            minkgeo::fail_schema("unknown metric for a body: " + metric);
          return run_suite(oracle, suite, plan, depth);
        },
        py::arg("body"), py::arg("metric") = "norm", py::arg("suite") = "axioms",
        py::arg("seed") = 0, py::arg("samples") = 1000, py::arg("threads") = 1,
        py::arg("depth") = 8, py::arg("eps_num") = minkgeo::kEpsNum);

  m.def("check_pathological",
        [](const std::string& name, int dim, double alpha, const std::string& suite,
           std::uint64_t seed, std::int64_t samples, int threads, int depth, double eps_num) {
          SamplingPlan plan = make_plan(seed, samples, threads, eps_num);
          return run_suite(minkgeo::pathological(name, dim, alpha), suite, plan, depth);
        },
        py::arg("name"), py::arg("dim") = 2, py::arg("alpha") = 0.5,
        py::arg("suite") = "axioms", py::arg("seed") = 0, py::arg("samples") = 1000,
        py::arg("threads") = 1, py::arg("depth") = 8, py::arg("eps_num") = minkgeo::kEpsNum);

  m.def("tensor",
        [](const PyBody& b, const Vec& at, double step) {
          WeakNorm norm = WeakNorm::from_body(*b.ptr);
          ordered_json j;
          j["tensor"] = minkgeo::to_json(minkgeo::fundamental_tensor(norm, at, step));
          j["norm_value"] = minkgeo::json_number(norm(at));
          j["recovered_norm"] = minkgeo::json_number(minkgeo::recover_norm(norm, at));
          j["euler_residual"] = minkgeo::json_number(minkgeo::euler_residual(norm, at));
          return minkgeo::dump_report(j);
        },
        py::arg("body"), py::arg("at"), py::arg("step") = 0.0);

  m.def("mvee",
        [](const std::vector<Vec>& points, double eps) {
          ordered_json j;
          j["mvee"] = minkgeo::to_json(minkgeo::mvee(points, eps));
          return minkgeo::dump_report(j);
        },
        py::arg("points"), py::arg("eps") = 1e-7);

  m.def("is_euclidean",
        [](const PyBody& b, std::uint64_t seed, std::int64_t samples, int threads) {
          SamplingPlan plan = make_plan(seed, samples, threads, minkgeo::kEpsNum);
          ordered_json j;
          j["euclidean_fit"] =
              minkgeo::to_json(minkgeo::is_euclidean(WeakNorm::from_body(*b.ptr), plan));
          return minkgeo::dump_report(j);
        },
        py::arg("body"), py::arg("seed") = 0, py::arg("samples") = 1000, py::arg("threads") = 1);

  m.def("render_svg",
        [](const PyBody& b, int directions, double funk_radius, double hilbert_radius,
           const Vec& center, bool indicatrix) {
          minkgeo::RenderOptions opt;
          opt.directions = directions;
          opt.indicatrix = indicatrix;
          opt.ball_center = center;
          if (funk_radius >= 0.0) opt.funk_radius = funk_radius;
          if (hilbert_radius >= 0.0) opt.hilbert_radius = hilbert_radius;
          return minkgeo::render_svg(*b.ptr, opt);
        },
        py::arg("body"), py::arg("directions") = 360, py::arg("funk_radius") = -1.0,
        py::arg("hilbert_radius") = -1.0, py::arg("center") = Vec{},
        py::arg("indicatrix") = true);
}
