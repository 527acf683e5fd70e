#include "minkgeo/checkers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include "minkgeo/body.hpp"
#include "minkgeo/error.hpp"
#include "minkgeo/rng.hpp"
#include "minkgeo/util.hpp"

namespace minkgeo {
namespace {

// Scratch randomness (segment parameters, perturbation directions, shift
// vectors) lives above every slot range the point samplers can touch.
constexpr std::int64_t kAuxSlot = std::int64_t{1} << 22;

// Continuity is judged against a fixed modulus, not the algebraic tolerance:
// a sampled probe cannot distinguish jumps smaller than this anyway.
constexpr double kModulusTol = 1e-3;

double eval_checked(const MetricOracle& oracle, const Vec& x, const Vec& y) {
  double v = oracle.eval(x, y);
  if (std::isnan(v)) fail_numeric("malformed oracle '" + oracle.name + "': eval returned NaN");
  return v;
}

struct Best {
  double viol = -1.0;
  std::int64_t idx = std::numeric_limits<std::int64_t>::max();
  Witness wit;
};

template <typename MakeWitness>
void consider(Best& b, double viol, std::int64_t idx, MakeWitness&& make) {
  if (viol > b.viol || (viol == b.viol && idx < b.idx)) {
    b.viol = viol;
    b.idx = idx;
    b.wit = make();
  }
}

void merge_best(Best& into, const Best& from) {
  if (from.viol > into.viol || (from.viol == into.viol && from.idx < into.idx)) into = from;
}

PropertyReport finish(const Best& best, const SamplingPlan& plan, std::int64_t samples) {
  PropertyReport rep;
  rep.samples = samples;
  rep.seed = plan.seed;
  rep.max_violation = std::max(0.0, best.viol);
  if (best.viol > plan.eps_num) {
    rep.verdict = Verdict::fail;
    rep.witness = best.wit;
  }
  return rep;
}

// |lhs − rhs| / (1 + rhs). Two infinities agree; a lone infinity is an
// infinite violation.
double defect(double lhs, double rhs) {
  bool li = std::isinf(lhs), ri = std::isinf(rhs);
  if (li && ri) return 0.0;
  if (li || ri) return kInf;
  return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

// max(0, lhs − rhs) / (1 + rhs) with the same conventions.
double excess(double lhs, double rhs) {
  bool li = std::isinf(lhs), ri = std::isinf(rhs);
  if (li && ri) return 0.0;
  if (li) return kInf;
  if (ri) return 0.0;
  return std::max(0.0, lhs - rhs) / (1.0 + rhs);
}

bool in_domain(const MetricOracle& oracle, const Vec& x) {
  return !oracle.domain || gauge(*oracle.domain, x) < 1.0;
}

}  // namespace

PropertyReport check_weak_axioms(const MetricOracle& oracle, const SamplingPlan& plan) {
  Best best = parallel_reduce(
      plan.count, plan.threads, Best{},
      [&](Best& b, std::int64_t i) {
        Vec x = sample_domain_point(oracle, plan, i, 0);
        Vec y = sample_domain_point(oracle, plan, i, 1);
        Vec z = sample_domain_point(oracle, plan, i, 2);
        double dxx = eval_checked(oracle, x, x);
        double vid = std::isinf(dxx) ? kInf : std::abs(dxx);
        consider(b, vid, 2 * i, [&] { return Witness{{x}, {dxx}, "nonzero self-distance"}; });
        double dxy = eval_checked(oracle, x, y);
        double dyz = eval_checked(oracle, y, z);
        double dxz = eval_checked(oracle, x, z);
        double sum = (std::isinf(dxy) || std::isinf(dyz)) ? kInf : dxy + dyz;
        consider(b, excess(dxz, sum), 2 * i + 1,
                 [&] { return Witness{{x, y, z}, {dxy, dyz, dxz}, "triangle inequality"}; });
      },
      merge_best);
  return finish(best, plan, plan.count);
}

namespace {

struct ProjLocal {
  Best main;
  double margin = kInf;  // smallest off-segment additivity margin seen
  std::int64_t midx = std::numeric_limits<std::int64_t>::max();
  Witness mwit;
};

}  // namespace

PropertyReport check_projective(const MetricOracle& oracle, const SamplingPlan& plan) {
  int n = oracle.dim;
  ProjLocal agg = parallel_reduce(
      plan.count, plan.threads, ProjLocal{},
      [&](ProjLocal& loc, std::int64_t i) {
        Vec x = sample_domain_point(oracle, plan, i, 0);
        Vec z = sample_domain_point(oracle, plan, i, 1);
        double t = rng::u01(plan.seed, static_cast<std::uint64_t>(i), kAuxSlot);
        Vec y = add(x, scale(sub(z, x), t));
        double dxy = eval_checked(oracle, x, y);
        double dyz = eval_checked(oracle, y, z);
        double dxz = eval_checked(oracle, x, z);
        double sum = (std::isinf(dxy) || std::isinf(dyz)) ? kInf : dxy + dyz;
        consider(loc.main, defect(sum, dxz), i,
                 [&] { return Witness{{x, y, z}, {dxy, dyz, dxz}, "additivity along a segment"}; });

        // Strict side: nudge the middle point off the segment and measure how
        // far above dxz the detour lands.
        Vec w = rng::sphere(plan.seed, static_cast<std::uint64_t>(i), n, kAuxSlot + 8);
        double step = 0.25 * (1.0 + norm2(sub(z, x)));
        Vec u;
        bool ok = false;
        for (int half = 0; half < 60; ++half) {
          u = add(y, scale(w, step));
          if (in_domain(oracle, u)) {
            ok = true;
            break;
          }
          step *= 0.5;
        }
        if (!ok) return;
        double dxu = eval_checked(oracle, x, u);
        double duz = eval_checked(oracle, u, z);
        double dsum = (std::isinf(dxu) || std::isinf(duz)) ? kInf : dxu + duz;
        double margin;
        if (std::isinf(dsum) && std::isinf(dxz))
          margin = 0.0;
        else if (std::isinf(dsum))
          margin = kInf;
        else if (std::isinf(dxz))
          margin = 0.0;
        else
          margin = (dsum - dxz) / (1.0 + dxz);
        if (margin < loc.margin || (margin == loc.margin && i < loc.midx)) {
          loc.margin = margin;
          loc.midx = i;
          loc.mwit = Witness{{x, u, z}, {dxu, duz, dxz, margin}, "off-segment point is additive"};
        }
      },
      [](ProjLocal& into, const ProjLocal& from) {
        merge_best(into.main, from.main);
        if (from.margin < into.margin || (from.margin == into.margin && from.midx < into.midx)) {
          into.margin = from.margin;
          into.midx = from.midx;
          into.mwit = from.mwit;
        }
      });

  PropertyReport rep = finish(agg.main, plan, plan.count);
  auto strict = std::make_shared<PropertyReport>();
  strict->samples = plan.count;
  strict->seed = plan.seed;
  strict->max_violation = (agg.margin == kInf) ? 0.0 : std::max(0.0, -agg.margin);
  if (plan.count > 0 && agg.margin <= plan.eps_num) {
    strict->verdict = Verdict::fail;
    strict->witness = agg.mwit;
  }
  rep.strict = strict;
  return rep;
}

PropertyReport check_midpoint(const MetricOracle& oracle, const SamplingPlan& plan) {
  Best best = parallel_reduce(
      plan.count, plan.threads, Best{},
      [&](Best& b, std::int64_t i) {
        Vec p = sample_domain_point(oracle, plan, i, 0);
        Vec q = sample_domain_point(oracle, plan, i, 1);
        Vec m = scale(add(p, q), 0.5);
        double dpq = eval_checked(oracle, p, q);
        double dpm = eval_checked(oracle, p, m);
        double dmq = eval_checked(oracle, m, q);
        double viol;
        if (std::isinf(dpq))
          viol = (std::isinf(dpm) && std::isinf(dmq)) ? 0.0 : kInf;
        else if (std::isinf(dpm) || std::isinf(dmq))
          viol = kInf;
        else
          viol = std::max(std::abs(dpm - 0.5 * dpq), std::abs(dmq - 0.5 * dpq)) / (1.0 + dpq);
        consider(b, viol, i, [&] { return Witness{{p, m, q}, {dpq, dpm, dmq}, "affine midpoint"}; });
      },
      merge_best);
  return finish(best, plan, plan.count);
}

PropertyReport check_dyadic(const MetricOracle& oracle, const Vec& p, const Vec& q, int depth,
                            const SamplingPlan& plan) {
  if (static_cast<int>(p.size()) != oracle.dim || static_cast<int>(q.size()) != oracle.dim)
    fail_schema("dyadic endpoints must match the oracle dimension");
  if (depth < 0 || depth > 12) fail_schema("dyadic depth must lie in [0, 12]");
  double dpq = eval_checked(oracle, p, q);
  if (std::isinf(dpq)) fail_domain("dyadic check refused: the endpoints are at infinite distance");

  std::int64_t denom = std::int64_t{1} << depth;
  std::int64_t count = 3 * denom + 1;  // parameters j/denom for j in [-denom, 2*denom]
  Vec dir = sub(q, p);
  std::vector<Vec> pts(count);
  for (std::int64_t a = 0; a < count; ++a) {
    double t = static_cast<double>(a - denom) / static_cast<double>(denom);
    pts[a] = add(p, scale(dir, t));
  }

  Best best = parallel_reduce(
      count, plan.threads, Best{},
      [&](Best& b, std::int64_t a) {
        for (std::int64_t c = a; c < count; ++c) {
          double expected = dpq * static_cast<double>(c - a) / static_cast<double>(denom);
          double got = eval_checked(oracle, pts[a], pts[c]);
          consider(b, defect(got, expected), a * count + c, [&] {
            return Witness{{pts[a], pts[c]}, {got, expected}, "linearity at dyadic parameters"};
          });
        }
      },
      merge_best);
  return finish(best, plan, count * (count + 1) / 2);
}

PropertyReport check_translation_invariance(const MetricOracle& oracle,
                                            const SamplingPlan& plan) {
  int n = oracle.dim;
  Best best = parallel_reduce(
      plan.count, plan.threads, Best{},
      [&](Best& b, std::int64_t i) {
        Vec p = sample_domain_point(oracle, plan, i, 0);
        Vec q = sample_domain_point(oracle, plan, i, 1);
        double halfwidth =
            oracle.domain ? (oracle.domain_radius > 0.0 ? oracle.domain_radius : 1.0)
                          : plan.box_halfwidth;
        Vec v = rng::box_point(plan.seed, static_cast<std::uint64_t>(i), n, halfwidth, kAuxSlot);
        Vec ps, qs;
        bool ok = false;
        for (int half = 0; half < 60; ++half) {
          ps = add(p, v);
          qs = add(q, v);
          if (in_domain(oracle, ps) && in_domain(oracle, qs)) {
            ok = true;
            break;
          }
          v = scale(v, 0.5);
        }
        if (!ok) return;
        double d1 = eval_checked(oracle, p, q);
        double d2 = eval_checked(oracle, ps, qs);
        consider(b, defect(d2, d1), i,
                 [&] { return Witness{{p, q, v}, {d1, d2}, "translated pair"}; });
      },
      merge_best);
  return finish(best, plan, plan.count);
}

namespace {

struct RevLocal {
  Best diff;
  double cmax = 1.0;
  std::int64_t cidx = std::numeric_limits<std::int64_t>::max();
};

}  // namespace

PropertyReport check_reversibility(const MetricOracle& oracle, const SamplingPlan& plan) {
  RevLocal agg = parallel_reduce(
      plan.count, plan.threads, RevLocal{},
      [&](RevLocal& loc, std::int64_t i) {
        Vec x = sample_domain_point(oracle, plan, i, 0);
        Vec y = sample_domain_point(oracle, plan, i, 1);
        double d1 = eval_checked(oracle, x, y);
        double d2 = eval_checked(oracle, y, x);
        double viol;
        if (std::isinf(d1) && std::isinf(d2))
          viol = 0.0;
        else if (std::isinf(d1) || std::isinf(d2))
          viol = kInf;
        else
          viol = std::abs(d1 - d2) / (1.0 + std::max(d1, d2));
        consider(loc.diff, viol, i,
                 [&] { return Witness{{x, y}, {d1, d2}, "asymmetric pair"}; });

        double lo = std::min(d1, d2), hi = std::max(d1, d2);
        double ratio;
        if (std::isinf(d1) && std::isinf(d2)) return;
        if (hi <= plan.eps_num) return;
        if (lo <= plan.eps_num)
          ratio = kInf;
        else
          ratio = hi / lo;
        if (ratio > loc.cmax || (ratio == loc.cmax && i < loc.cidx)) {
          loc.cmax = ratio;
          loc.cidx = i;
        }
      },
      [](RevLocal& into, const RevLocal& from) {
        merge_best(into.diff, from.diff);
        if (from.cmax > into.cmax || (from.cmax == into.cmax && from.cidx < into.cidx)) {
          into.cmax = from.cmax;
          into.cidx = from.cidx;
        }
      });
  PropertyReport rep = finish(agg.diff, plan, plan.count);
  rep.quasi_constant = agg.cmax;
  return rep;
}

namespace {

// Jump estimate along sampled segments at shrinking steps. Taking the minimum
// over the ladder filters out curvature: a genuine discontinuity keeps the
// jump bounded away from zero at every step.
PropertyReport line_continuity_probe(const MetricOracle& oracle, const SamplingPlan& plan) {
  static constexpr double kSteps[] = {1e-3, 1e-4, 1e-5, 1e-6};
  Best best = parallel_reduce(
      plan.count, plan.threads, Best{},
      [&](Best& b, std::int64_t i) {
        Vec a = sample_domain_point(oracle, plan, i, 0);
        Vec z = sample_domain_point(oracle, plan, i, 1);
        double t0 = rng::uniform(plan.seed, static_cast<std::uint64_t>(i), kAuxSlot, 0.2, 0.8);
        Vec dir = sub(z, a);
        Vec g0 = add(a, scale(dir, t0));
        double ref = eval_checked(oracle, a, z);
        double da0 = eval_checked(oracle, a, g0);
        double d0z = eval_checked(oracle, g0, z);
        double worst = kInf;
        for (double h : kSteps) {
          Vec g1 = add(a, scale(dir, t0 + h));
          double j1 = std::abs(eval_checked(oracle, a, g1) - da0);
          double j2 = std::abs(eval_checked(oracle, g1, z) - d0z);
          worst = std::min(worst, std::max(j1, j2));
        }
        consider(b, worst / (1.0 + ref), i,
                 [&] { return Witness{{a, z, g0}, {ref, da0, d0z}, "segment continuity probe"}; });
      },
      merge_best);
  PropertyReport rep;
  rep.samples = plan.count;
  rep.seed = plan.seed;
  rep.max_violation = std::max(0.0, best.viol);
  if (best.viol > kModulusTol) {
    rep.verdict = Verdict::fail;
    rep.witness = best.wit;
  }
  return rep;
}

Vec reconstruction_pair(const MetricOracle& oracle, const SamplingPlan& plan, std::int64_t i,
                        Vec& x_out) {
  if (!oracle.domain) {
    x_out = rng::box_point(plan.seed, static_cast<std::uint64_t>(i), oracle.dim,
                           plan.box_halfwidth, 0);
    return rng::box_point(plan.seed, static_cast<std::uint64_t>(i), oracle.dim,
                          plan.box_halfwidth, 64);
  }
  // Body-domain oracles additionally need y - x inside the domain so the
  // reconstructed gauge is defined there.
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec x = sample_domain_point(oracle, plan, i, 2 * attempt);
    Vec y = sample_domain_point(oracle, plan, i, 2 * attempt + 1);
    if (gauge(*oracle.domain, sub(y, x)) < 1.0) {
      x_out = x;
      return y;
    }
  }
  fail_numeric("could not sample a pair with in-domain difference");
}

}  // namespace

MinkowskiDecision decide_minkowski(const MetricOracle& oracle, const SamplingPlan& plan) {
  MetricOracle guarded = oracle;
  {
    auto inner = oracle.eval;
    std::string name = oracle.name;
    guarded.eval = [inner, name](const Vec& x, const Vec& y) {
      double v = inner(x, y);
      if (std::isinf(v))
        fail_domain("decision requires a finite oracle; '" + name +
                    "' returned an infinite distance");
      return v;
    };
  }

  MinkowskiDecision out;
  out.midpoint = check_midpoint(guarded, plan);
  out.line_continuity = line_continuity_probe(guarded, plan);

  Vec zero(static_cast<std::size_t>(oracle.dim), 0.0);
  auto ge = guarded.eval;
  auto recon = [ge, zero](const Vec& v) { return ge(zero, v); };

  SamplingPlan fresh = plan;
  fresh.seed = rng::mix(plan.seed ^ 0xc2b2ae3d27d4eb4fULL);
  Best best = parallel_reduce(
      fresh.count, fresh.threads, Best{},
      [&](Best& b, std::int64_t i) {
        Vec x;
        Vec y = reconstruction_pair(guarded, fresh, i, x);
        double dxy = eval_checked(guarded, x, y);
        Vec v = sub(y, x);
        double fv = recon(v);
        consider(b, defect(fv, dxy), i,
                 [&] { return Witness{{x, y, v}, {dxy, fv}, "translate to the origin"}; });
      },
      merge_best);
  out.reconstruction = finish(best, fresh, fresh.count);

  bool ok = out.midpoint.verdict == Verdict::pass &&
            out.line_continuity.verdict == Verdict::pass &&
            out.reconstruction.verdict == Verdict::pass;
  out.minkowski = ok;
  if (ok) {
    out.verdict = "minkowski (sampled)";
    out.reconstructed = WeakNorm::custom(oracle.dim, recon, "reconstructed:" + oracle.name);
  } else {
    std::string stages;
    auto tag = [&stages](const char* what, const PropertyReport& rep) {
      if (rep.verdict == Verdict::pass) return;
      if (!stages.empty()) stages += ", ";
      stages += what;
    };
    tag("midpoint", out.midpoint);
    tag("line continuity", out.line_continuity);
    tag("reconstruction", out.reconstruction);
    out.verdict = "not minkowski (" + stages + ")";
  }
  return out;
}

}  // namespace minkgeo
