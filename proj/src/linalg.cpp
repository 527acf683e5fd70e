#include "minkgeo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "minkgeo/error.hpp"

namespace minkgeo {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double dot(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(const Vec& x) { return std::sqrt(dot(x, x)); }

Vec add(const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

Vec sub(const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

Vec scale(const Vec& x, double t) {
  Vec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] * t;
  return r;
}

Vec normalized(const Vec& x) {
  double n = norm2(x);
  if (n < 1e-300) fail_numeric("cannot normalize a zero vector");
  return scale(x, 1.0 / n);
}

Vec matvec(const Mat& m, const Vec& x) {
  Vec r(m.rows, 0.0);
  for (int i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols; ++j) s += m(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

Mat matmul(const Mat& l, const Mat& r) {
  Mat out(l.rows, r.cols);
  for (int i = 0; i < l.rows; ++i)
    for (int k = 0; k < l.cols; ++k) {
      double v = l(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < r.cols; ++j) out(i, j) += v * r(k, j);
    }
  return out;
}

Mat transpose(const Mat& m) {
  Mat t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

double max_abs(const Mat& m) {
  double v = 0.0;
  for (double x : m.a) v = std::max(v, std::fabs(x));
  return v;
}

double max_abs_diff(const Mat& l, const Mat& r) {
  double v = 0.0;
  for (size_t i = 0; i < l.a.size(); ++i) v = std::max(v, std::fabs(l.a[i] - r.a[i]));
  return v;
}

LuFactors lu_factor(Mat m) {
  LuFactors f;
  int n = m.rows;
  f.perm.resize(n);
  std::iota(f.perm.begin(), f.perm.end(), 0);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::fabs(m(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = std::fabs(m(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best < 1e-300) {
      f.singular = true;
      f.lu = std::move(m);
      return f;
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.parity = -f.parity;
    }
    for (int i = k + 1; i < n; ++i) {
      double l = m(i, k) / m(k, k);
      m(i, k) = l;
      for (int j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
    }
  }
  f.lu = std::move(m);
  return f;
}

Vec lu_solve(const LuFactors& f, Vec b) {
  if (f.singular) fail_numeric("singular linear system");
  int n = f.lu.rows;
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
    x[i] /= f.lu(i, i);
  }
  return x;
}

Mat inverse(const Mat& m) {
  LuFactors f = lu_factor(m);
  if (f.singular) fail_numeric("matrix not invertible");
  int n = m.rows;
  Mat inv(n, n);
  Vec e(n, 0.0);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    Vec col = lu_solve(f, e);
    for (int i = 0; i < n; ++i) inv(i, j) = col[i];
    e[j] = 0.0;
  }
  return inv;
}

double determinant(const Mat& m) {
  LuFactors f = lu_factor(m);
  if (f.singular) return 0.0;
  double d = f.parity;
  for (int i = 0; i < m.rows; ++i) d *= f.lu(i, i);
  return d;
}

Vec solve(const Mat& m, const Vec& b) { return lu_solve(lu_factor(m), b); }

namespace {

double off_diagonal_norm(const Mat& s) {
  double acc = 0.0;
  for (int i = 0; i < s.rows; ++i)
    for (int j = 0; j < s.cols; ++j)
      if (i != j) acc += s(i, j) * s(i, j);
  return std::sqrt(acc);
}

double frobenius(const Mat& s) {
  double acc = 0.0;
  for (double v : s.a) acc += v * v;
  return std::sqrt(acc);
}

}  // namespace

SymEigen jacobi_eigensystem(Mat s, double off_tol) {
  int n = s.rows;
  Mat v = Mat::identity(n);
  const double stop = off_tol * std::max(1.0, frobenius(s));
  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps && off_diagonal_norm(s) > stop; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = s(p, q);
        if (std::fabs(apq) < 1e-300) continue;
        double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double sn = t * c;
        for (int k = 0; k < n; ++k) {
          double skp = s(k, p), skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (int k = 0; k < n; ++k) {
          double spk = s(p, k), sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Vec diag(n);
  for (int i = 0; i < n; ++i) diag[i] = s(i, i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return diag[a] < diag[b]; });

  SymEigen out;
  out.values.resize(n);
  out.vectors = Mat(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = diag[order[j]];
    for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

Mat sym_sqrt(const Mat& spd) {
  SymEigen e = jacobi_eigensystem(spd);
  int n = spd.rows;
  for (double v : e.values)
    if (v <= 0.0) fail_numeric("matrix square root requires positive definiteness");
  Mat r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += e.vectors(i, k) * std::sqrt(e.values[k]) * e.vectors(j, k);
      r(i, j) = acc;
    }
  return r;
}

Mat sym_inv_sqrt(const Mat& spd) {
  SymEigen e = jacobi_eigensystem(spd);
  int n = spd.rows;
  for (double v : e.values)
    if (v <= 0.0) fail_numeric("matrix inverse square root requires positive definiteness");
  Mat r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += e.vectors(i, k) * (1.0 / std::sqrt(e.values[k])) * e.vectors(j, k);
      r(i, j) = acc;
    }
  return r;
}

}  // namespace minkgeo
