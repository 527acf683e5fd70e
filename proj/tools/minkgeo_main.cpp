#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
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

namespace {

using minkgeo::ConvexBody;
using minkgeo::Mat;
using minkgeo::MetricOracle;
using minkgeo::ordered_json;
using minkgeo::SamplingPlan;
using minkgeo::Vec;
using minkgeo::Verdict;
using minkgeo::WeakNorm;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) minkgeo::fail_io("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) minkgeo::fail_io("cannot write file: " + out_path);
  out << text;
}

Vec parse_point(const std::string& csv) {
  Vec out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      minkgeo::fail_schema("cannot parse coordinate '" + item + "' in point '" + csv + "'");
    }
  }
  if (out.empty()) minkgeo::fail_schema("empty point: '" + csv + "'");
  return out;
}

Mat parse_matrix(const std::string& text) {
  std::vector<Vec> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) rows.push_back(parse_point(row));
  if (rows.empty()) minkgeo::fail_schema("empty matrix: '" + text + "'");
  Mat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      minkgeo::fail_schema("matrix rows must have equal length: '" + text + "'");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  }
  return m;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("MINKGEO_SEED");
  if (!env || !*env) return 0;
  char* end = nullptr;
  std::uint64_t v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0')
    minkgeo::fail_schema("MINKGEO_SEED must be a nonnegative integer");
  return v;
}

struct PlanFlags {
  std::uint64_t seed = 0;
  std::int64_t samples = 1000;
  int threads = 1;
  double eps_num = minkgeo::kEpsNum;
  double box_halfwidth = 5.0;
  bool seed_given = false;
};

void add_plan_flags(CLI::App* cmd, PlanFlags& pf) {
  cmd->add_option("--seed", pf.seed, "sampling seed (default: MINKGEO_SEED or 0)")
      ->each([&pf](const std::string&) { pf.seed_given = true; });
  cmd->add_option("--samples", pf.samples, "number of samples")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", pf.threads, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--eps-num", pf.eps_num, "numeric tolerance for verdicts")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--box-halfwidth", pf.box_halfwidth, "half-width of the sampling box")
      ->check(CLI::PositiveNumber);
}

SamplingPlan make_plan(const PlanFlags& pf) {
  SamplingPlan plan;
  plan.seed = pf.seed_given ? pf.seed : default_seed();
  plan.count = pf.samples;
  plan.threads = pf.threads;
  plan.eps_num = pf.eps_num;
  plan.box_halfwidth = pf.box_halfwidth;
  return plan;
}

ConvexBody load_body(const std::string& path) {
  if (path.empty()) minkgeo::fail_schema("--body is required for this command");
  return minkgeo::parse_body(read_file(path));
}

std::vector<Vec> load_points(const std::string& path) {
  ordered_json j = ordered_json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) minkgeo::fail_schema("points file is not valid JSON: " + path);
  if (j.is_object() && j.contains("points")) j = j["points"];
  if (!j.is_array() || j.empty()) minkgeo::fail_schema("points file must hold an array of points");
  std::vector<Vec> pts;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty())
      minkgeo::fail_schema("points file entries must be coordinate arrays");
    Vec p;
    for (const auto& c : row) {
      if (!c.is_number()) minkgeo::fail_schema("point coordinates must be numbers");
      p.push_back(c.get<double>());
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

int emit(const ordered_json& body_json, const std::string& out_path, int code) {
  ordered_json j;
  j["version"] = 1;
  for (auto it = body_json.begin(); it != body_json.end(); ++it) j[it.key()] = it.value();
  write_output(minkgeo::dump_report(j), out_path);
  return code;
}

bool report_failed(const minkgeo::PropertyReport& r) { return r.verdict == Verdict::fail; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gauges, weak Minkowski norms, and projective metrics on convex bodies"};
  app.require_subcommand(1);

  std::string body_path, out_path, from_csv, to_csv, at_csv, center_csv;
  std::string map_text, translation_csv, points_path;
  std::string metric_name = "norm", suite = "axioms";
  PlanFlags pf;
  double alpha = 0.5, step = 0.0, mvee_eps = 1e-7;
  double funk_ball = -1.0, hilbert_ball = -1.0;
  int dim = 2, depth = 8, resolution = 0, directions = 360;
  bool no_indicatrix = false;

  auto* dist = app.add_subcommand("dist", "gauge distance between two points");
  dist->add_option("--body", body_path, "body JSON file")->required();
  dist->add_option("--from", from_csv, "start point, comma-separated")->required();
  dist->add_option("--to", to_csv, "end point, comma-separated")->required();
  dist->add_option("--out", out_path, "output path (default: stdout)");

  auto* classify = app.add_subcommand("classify", "norm properties of a body's gauge");
  classify->add_option("--body", body_path)->required();
  classify->add_option("--out", out_path);
  add_plan_flags(classify, pf);

  auto* check = app.add_subcommand("check", "property suite on a metric oracle");
  check->add_option("--body", body_path, "body JSON file (norm/funk/hilbert metrics)");
  check->add_option("--metric", metric_name,
                    "norm|funk|hilbert|capped_norm|power|exp_coordinates")
      ->check(CLI::IsMember(
          {"norm", "funk", "hilbert", "capped_norm", "power", "exp_coordinates"}));
  check->add_option("--suite", suite, "axioms|minkowski|funk")
      ->check(CLI::IsMember({"axioms", "minkowski", "funk"}));
  check->add_option("--alpha", alpha, "exponent for the power metric");
  check->add_option("--dim", dim, "dimension for body-free metrics")->check(CLI::PositiveNumber);
  check->add_option("--depth", depth, "dyadic depth (minkowski suite)");
  check->add_option("--from", from_csv, "dyadic segment start");
  check->add_option("--to", to_csv, "dyadic segment end");
  check->add_option("--out", out_path);
  add_plan_flags(check, pf);

  auto* tensor = app.add_subcommand("tensor", "fundamental tensor of the gauge at a point");
  tensor->add_option("--body", body_path)->required();
  tensor->add_option("--at", at_csv, "base point, comma-separated")->required();
  tensor->add_option("--step", step, "finite-difference step override");
  tensor->add_option("--out", out_path);

  auto* ellipsoid = app.add_subcommand("ellipsoid", "enclosing ellipsoid and euclidean fit");
  ellipsoid->add_option("--body", body_path, "body JSON file (boundary cloud input)");
  ellipsoid->add_option("--points", points_path, "JSON file with explicit points");
  ellipsoid->add_option("--resolution", resolution, "boundary cloud size");
  ellipsoid->add_option("--mvee-eps", mvee_eps, "mvee optimality gap")
      ->check(CLI::PositiveNumber);
  ellipsoid->add_option("--out", out_path);
  add_plan_flags(ellipsoid, pf);

  auto* isometry = app.add_subcommand("isometry", "conjugate a candidate isometry");
  isometry->add_option("--body", body_path)->required();
  isometry->add_option("--map", map_text, "matrix rows 'a,b;c,d'")->required();
  isometry->add_option("--translation", translation_csv, "affine part (cancels in differences)");
  isometry->add_option("--out", out_path);
  add_plan_flags(isometry, pf);

  auto* projective = app.add_subcommand("projective", "minkowski/funk/hilbert comparison");
  projective->add_option("--body", body_path)->required();
  projective->add_option("--from", from_csv)->required();
  projective->add_option("--to", to_csv)->required();
  projective->add_option("--out", out_path);

  auto* render = app.add_subcommand("render", "SVG figure of a 2D body");
  render->add_option("--body", body_path)->required();
  render->add_option("--out", out_path, "output SVG path (default: stdout)");
  render->add_option("--directions", directions, "boundary sampling directions");
  render->add_option("--funk-ball", funk_ball, "draw a Funk ball of this radius");
  render->add_option("--hilbert-ball", hilbert_ball, "draw a Hilbert ball of this radius");
  render->add_option("--center", center_csv, "ball center (default: origin)");
  render->add_flag("--no-indicatrix", no_indicatrix, "skip the indicatrix overlay");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    ordered_json err;
    err["error"] = {{"kind", "schema"}, {"detail", e.what()}};
    std::cout << minkgeo::dump_report(err);
    return 2;
  }

  try {
    if (*dist) {
      ConvexBody body = load_body(body_path);
      Vec from = parse_point(from_csv), to = parse_point(to_csv);
      double d = minkgeo::minkowski_ratio_distance(body, from, to);
      ordered_json j;
      j["distance"] = minkgeo::json_number(d);
      return emit(j, out_path, 0);
    }

    if (*classify) {
      ConvexBody body = load_body(body_path);
      SamplingPlan plan = make_plan(pf);
      WeakNorm norm = WeakNorm::from_body(body);
      minkgeo::NormClassification cls = minkgeo::classify_norm(norm, plan);
      ordered_json j;
      j["classification"] = minkgeo::to_json(cls);
      if (cls.finite && cls.separating) {
        auto [mu, big] = minkgeo::euclidean_sandwich(norm, plan);
        j["euclidean_sandwich"] = {{"mu", minkgeo::json_number(mu)},
                                   {"M", minkgeo::json_number(big)}};
        j["convexity"] = minkgeo::to_json(minkgeo::classify_convexity(body, plan));
      }
      return emit(j, out_path, 0);
    }

    if (*check) {
      SamplingPlan plan = make_plan(pf);
      MetricOracle oracle;
      if (metric_name == "norm") {
        oracle = minkgeo::metric_from_norm(WeakNorm::from_body(load_body(body_path)));
      } else if (metric_name == "funk") {
        oracle = minkgeo::funk_oracle(
            std::make_shared<const ConvexBody>(load_body(body_path)));
      } else if (metric_name == "hilbert") {
        oracle = minkgeo::hilbert_oracle(
            std::make_shared<const ConvexBody>(load_body(body_path)));
      } else {
        oracle = minkgeo::pathological(metric_name, dim, alpha);
      }

      ordered_json results;
      bool failed = false;
      auto run = [&](const char* key, const minkgeo::PropertyReport& rep) {
        results[key] = minkgeo::to_json(rep);
        failed = failed || report_failed(rep);
      };
      run("axioms", minkgeo::check_weak_axioms(oracle, plan));
      if (suite == "minkowski" || suite == "funk")
        run("projective", minkgeo::check_projective(oracle, plan));
      if (suite == "minkowski") {
        run("midpoint", minkgeo::check_midpoint(oracle, plan));
        Vec p = from_csv.empty() ? Vec(oracle.dim, 0.0) : parse_point(from_csv);
        Vec q;
        if (!to_csv.empty()) {
          q = parse_point(to_csv);
        } else {
          q = Vec(oracle.dim, 0.0);
          q[0] = 1.0;
          if (oracle.domain) {
            double f = minkgeo::gauge(*oracle.domain, q);
            if (std::isfinite(f) && f > 0.0) q[0] = 0.5 / f;
          }
        }
        run("dyadic", minkgeo::check_dyadic(oracle, p, q, depth, plan));
        run("translation", minkgeo::check_translation_invariance(oracle, plan));
        minkgeo::MinkowskiDecision dec = minkgeo::decide_minkowski(oracle, plan);
        results["decide"] = minkgeo::to_json(dec);
        failed = failed || !dec.minkowski;
      }

      ordered_json j;
      j["metric"] = oracle.name;
      j["suite"] = suite;
      j["results"] = results;
      return emit(j, out_path, failed ? 1 : 0);
    }

    if (*tensor) {
      ConvexBody body = load_body(body_path);
      Vec at = parse_point(at_csv);
      WeakNorm norm = WeakNorm::from_body(body);
      minkgeo::TensorAtPoint t = minkgeo::fundamental_tensor(norm, at, step);
      ordered_json j;
      j["tensor"] = minkgeo::to_json(t);
      j["norm_value"] = minkgeo::json_number(norm(at));
      j["recovered_norm"] = minkgeo::json_number(minkgeo::recover_norm(norm, at));
      j["euler_residual"] = minkgeo::json_number(minkgeo::euler_residual(norm, at));
      return emit(j, out_path, 0);
    }

    if (*ellipsoid) {
      SamplingPlan plan = make_plan(pf);
      ordered_json j;
      std::vector<Vec> cloud;
      std::optional<WeakNorm> norm;
      if (!points_path.empty()) {
        cloud = load_points(points_path);
      } else {
        norm = WeakNorm::from_body(load_body(body_path));
        cloud = minkgeo::boundary_cloud(*norm, resolution);
      }
      minkgeo::MveeResult mv = minkgeo::mvee(cloud, mvee_eps);
      j["mvee"] = minkgeo::to_json(mv);
      j["normalizer"] = minkgeo::to_json(minkgeo::normalizer(mv.ellipsoid));
      if (norm) j["euclidean_fit"] = minkgeo::to_json(minkgeo::is_euclidean(*norm, plan));
      return emit(j, out_path, 0);
    }

    if (*isometry) {
      ConvexBody body = load_body(body_path);
      SamplingPlan plan = make_plan(pf);
      minkgeo::LinearMapCandidate g;
      g.matrix = parse_matrix(map_text);
      if (!translation_csv.empty()) g.translation = parse_point(translation_csv);
      minkgeo::ConjugationReport rep =
          minkgeo::conjugate_to_orthogonal(WeakNorm::from_body(body), g, plan);
      ordered_json j;
      j["conjugation"] = minkgeo::to_json(rep);
      return emit(j, out_path, 0);
    }

    if (*projective) {
      ConvexBody body = load_body(body_path);
      Vec from = parse_point(from_csv), to = parse_point(to_csv);
      ordered_json j;
      j["minkowski"] = minkgeo::json_number(minkgeo::minkowski_ratio_distance(body, from, to));
      j["funk_xy"] = minkgeo::json_number(minkgeo::funk_distance(body, from, to));
      j["funk_yx"] = minkgeo::json_number(minkgeo::funk_distance(body, to, from));
      j["hilbert"] = minkgeo::json_number(minkgeo::hilbert_distance(body, from, to));
      return emit(j, out_path, 0);
    }

    if (*render) {
      ConvexBody body = load_body(body_path);
      minkgeo::RenderOptions opt;
      opt.directions = directions;
      opt.indicatrix = !no_indicatrix;
      if (!center_csv.empty()) opt.ball_center = parse_point(center_csv);
      if (funk_ball >= 0.0) opt.funk_radius = funk_ball;
      if (hilbert_ball >= 0.0) opt.hilbert_radius = hilbert_ball;
      write_output(minkgeo::render_svg(body, opt), out_path);
      return 0;
    }
  } catch (const minkgeo::Error& e) {
    ordered_json err;
    err["error"] = {{"kind", e.kind()}, {"detail", e.what()}};
    std::cout << minkgeo::dump_report(err);
    return 2;
  } catch (const std::exception& e) {
    ordered_json err;
    err["error"] = {{"kind", "internal"}, {"detail", e.what()}};
    std::cout << minkgeo::dump_report(err);
    return 2;
  }
  return 2;
}
