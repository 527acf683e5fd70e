#include "minkgeo/lp.hpp"

#include <algorithm>
#include <cmath>

namespace minkgeo::lp {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;

struct Tableau {
  int m = 0;              // rows
  int width = 0;          // structural + artificial columns
  std::vector<Vec> row;   // row[i] has width entries
  Vec rhs;                // >= 0 throughout
  std::vector<int> basis; // column basic in each row
  Vec red;                // reduced costs, width entries
  int pivots = 0;

  void pivot(int r, int j) {
    double p = row[r][j];
    double inv = 1.0 / p;
    for (int t = 0; t < width; ++t) row[r][t] *= inv;
    rhs[r] *= inv;
    row[r][j] = 1.0;
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      double f = row[i][j];
      if (f == 0.0) continue;
      for (int t = 0; t < width; ++t) row[i][t] -= f * row[r][t];
      row[i][j] = 0.0;
      rhs[i] -= f * rhs[r];
      if (rhs[i] < 0.0 && rhs[i] > -1e-11) rhs[i] = 0.0;
    }
    double f = red[j];
    if (f != 0.0) {
      for (int t = 0; t < width; ++t) red[t] -= f * row[r][t];
      red[j] = 0.0;
    }
    basis[r] = j;
    ++pivots;
  }

  // Bland: entering = lowest-index column with negative reduced cost;
  // leaving = min ratio, ties broken by lowest basic variable index.
  // Returns optimal / unbounded / iteration_limit.
  Status iterate(int allowed_cols, int pivot_cap) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (red[j] < -kCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Status::optimal;
      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m; ++i) {
        double aij = row[i][enter];
        if (aij > kPivotTol) {
          double ratio = rhs[i] / aij;
          if (leave < 0 || ratio < best_ratio - 1e-15 ||
              (std::fabs(ratio - best_ratio) <= 1e-15 && basis[i] < basis[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0) return Status::unbounded;
      if (pivots >= pivot_cap) return Status::iteration_limit;
      pivot(leave, enter);
    }
  }
};

}  // namespace

Result solve(const Mat& a, const Vec& b, const Vec& c, int pivot_cap) {
  int m = a.rows;
  int k = a.cols;
  Tableau t;
  t.m = m;
  t.width = k + m;
  t.row.assign(m, Vec(t.width, 0.0));
  t.rhs.resize(m);
  t.basis.resize(m);
  double bscale = 1.0;
  for (int i = 0; i < m; ++i) {
    double sign = (b[i] < 0.0) ? -1.0 : 1.0;
    for (int j = 0; j < k; ++j) t.row[i][j] = sign * a(i, j);
    t.rhs[i] = sign * b[i];
    t.row[i][k + i] = 1.0;
    t.basis[i] = k + i;
    bscale += t.rhs[i];
  }

  // phase 1: minimize the artificial sum
  t.red.assign(t.width, 0.0);
  for (int j = 0; j < k; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += t.row[i][j];
    t.red[j] = -s;
  }
  Status st = t.iterate(t.width, pivot_cap);
  Result res;
  res.pivots = t.pivots;
  if (st == Status::iteration_limit) {
    res.status = st;
    return res;
  }
  double infeas = 0.0;
  for (int i = 0; i < m; ++i)
    if (t.basis[i] >= k) infeas += t.rhs[i];
  if (infeas > 1e-9 * bscale) {
    res.status = Status::infeasible;
    return res;
  }

  // expel remaining zero-level artificials; drop redundant rows
  for (int i = t.m - 1; i >= 0; --i) {
    if (t.basis[i] < k) continue;
    int enter = -1;
    for (int j = 0; j < k; ++j) {
      if (std::fabs(t.row[i][j]) > kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter >= 0) {
      t.pivot(i, enter);
    } else {
      t.row.erase(t.row.begin() + i);
      t.rhs.erase(t.rhs.begin() + i);
      t.basis.erase(t.basis.begin() + i);
      --t.m;
    }
  }
  t.m = static_cast<int>(t.row.size());

  // phase 2 over structural columns only
  t.red.assign(t.width, 0.0);
  for (int j = 0; j < k; ++j) {
    double r = c[j];
    for (int i = 0; i < t.m; ++i) {
      int bi = t.basis[i];
      if (bi < k && c[bi] != 0.0) r -= c[bi] * t.row[i][j];
    }
    t.red[j] = r;
  }
  st = t.iterate(k, pivot_cap);
  res.pivots = t.pivots;
  if (st != Status::optimal) {
    res.status = st;
    return res;
  }

  res.status = Status::optimal;
  res.x.assign(k, 0.0);
  for (int i = 0; i < t.m; ++i)
    if (t.basis[i] < k) res.x[t.basis[i]] = t.rhs[i];
  res.objective = dot(res.x, c);
  return res;
}

}  // namespace minkgeo::lp
