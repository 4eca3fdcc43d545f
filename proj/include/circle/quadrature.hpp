#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "circle/core.hpp"

namespace circle::quad {

namespace detail {
// Gauss-Kronrod 7/15 on [-1,1].
inline constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double abs_of(double v) { return std::fabs(v); }
inline double abs_of(cplx v) { return std::abs(v); }

template <class T, class F>
T gk15(F& f, double a, double b, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T resk = fc * kWk[7];
  T resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXk[j];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    resk += (f1 + f2) * kWk[j];
    if (j % 2 == 1) resg += (f1 + f2) * kWg[j / 2];
  }
  err = abs_of((resk - resg) * h);
  return resk * h;
}

template <class T, class F>
T adapt(F& f, double a, double b, double abs_tol, double rel_tol, int depth, double& err_out) {
  double err = 0;
  T whole = gk15<T>(f, a, b, err);
  if (depth <= 0 || err <= std::max(abs_tol, rel_tol * abs_of(whole))) {
    err_out += err;
    return whole;
  }
  const double m = 0.5 * (a + b);
  return adapt<T>(f, a, m, 0.5 * abs_tol, rel_tol, depth - 1, err_out) +
         adapt<T>(f, m, b, 0.5 * abs_tol, rel_tol, depth - 1, err_out);
}
}  // namespace detail

// Adaptive Gauss-Kronrod integral of f over [a,b]; T is double or cplx.
template <class T = double, class F>
T integrate(F&& f, double a, double b, double abs_tol = 1e-12, double rel_tol = 1e-12,
            int max_depth = 40, double* err_est = nullptr) {
  double err = 0;
  T r = (a == b) ? T{} : detail::adapt<T>(f, a, b, abs_tol, rel_tol, max_depth, err);
  if (err_est) *err_est = err;
  return r;
}

// Splits [a,b] into n equal panels and integrates each adaptively; used for
// integrands whose oscillation count across [a,b] is known in advance.
template <class T = double, class F>
T integrate_panels(F&& f, double a, double b, int n, double abs_tol = 1e-12,
                   double rel_tol = 1e-13) {
  T total{};
  const double h = (b - a) / n;
  for (int i = 0; i < n; ++i) {
    const double lo = a + i * h;
    const double hi = (i + 1 == n) ? b : lo + h;
    total += integrate<T>(f, lo, hi, abs_tol / n, rel_tol, 30);
  }
  return total;
}

// Gauss-Legendre nodes and weights on [-1,1].
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double pp = 0;
      for (int it = 0; it < 100; ++it) {
        double p1 = 1, p2 = 0;
        for (int j = 1; j <= n; ++j) {
          double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        double dz = p1 / pp;
        z -= dz;
        if (std::fabs(dz) < 1e-16) break;
      }
      x[i] = -z;
      x[n - 1 - i] = z;
      w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
  }

  template <class T = double, class F>
  T apply(F&& f, double a, double b) const {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += f(c + h * x[i]) * w[i];
    return s * h;
  }
};

}  // namespace circle::quad
