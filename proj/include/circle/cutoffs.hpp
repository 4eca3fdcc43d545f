#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "circle/core.hpp"
#include "circle/quadrature.hpp"

namespace circle {

enum class PieceKind { Affine, LogAffine };  // a + b t, or a + b log t

struct Piece {
  double lo = 0, hi = 0;
  PieceKind kind = PieceKind::Affine;
  double a = 0, b = 0;

  double value(double t) const { return kind == PieceKind::Affine ? a + b * t : a + b * std::log(t); }
  double deriv(double t) const { return kind == PieceKind::Affine ? b : b / t; }
  double ffprime(double t) const { return value(t) * deriv(t); }

  // Point in (lo,hi) where the value vanishes, or NaN.
  double root() const {
    if (b == 0) return std::nan("");
    double r = kind == PieceKind::Affine ? -a / b : std::exp(-a / b);
    return (r > lo && r < hi) ? r : std::nan("");
  }
};

enum class CutoffKind { Eta0, Eta1, Indicator01, Custom };

struct CutoffNorms {
  double l1 = 0;
  double l2 = 0;
  double l2sq = 0;
  double linf = 0;
  double tv1 = 0;              // total variation of f, i.e. ||f'||_1
  double tv2 = 0;              // total variation of f', i.e. ||f''||_1
  double linf_deriv = 0;       // sup |f'|
  double l1_self_deriv = 0;    // ||f f'||_1
  double l1_second_combo = 0;  // ||f'f' + f f''||_1
};

namespace detail {

inline double affine_int(const Piece& p, double l, double h) {
  if (p.kind == PieceKind::Affine) return p.a * (h - l) + p.b * (h * h - l * l) / 2;
  auto F = [&](double t) { return p.a * t + p.b * (t * std::log(t) - t); };
  return F(h) - F(l);
}

inline double square_int(const Piece& p, double l, double h) {
  if (p.kind == PieceKind::Affine) {
    auto F = [&](double t) { return p.a * p.a * t + p.a * p.b * t * t + p.b * p.b * t * t * t / 3; };
    return F(h) - F(l);
  }
  auto F = [&](double t) {
    const double L = std::log(t);
    return p.a * p.a * t + 2 * p.a * p.b * (t * L - t) + p.b * p.b * (t * L * L - 2 * t * L + 2 * t);
  };
  return F(h) - F(l);
}

// Total variation of g over [l,h] given interior turning points.
template <class G>
double tv_split(G g, double l, double h, std::vector<double> cuts) {
  cuts.push_back(l);
  cuts.push_back(h);
  std::sort(cuts.begin(), cuts.end());
  double s = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) s += std::fabs(g(cuts[i + 1]) - g(cuts[i]));
  return s;
}

// Integral of (A + B t) e(xi t) over [l,h], stable for small xi.
inline cplx affine_fourier(double A, double B, double l, double h, double xi) {
  const double m = 0.5 * (l + h), w = 0.5 * (h - l);
  const double k = kTwoPi * xi;
  const double z = k * w;
  double s0, s1;
  if (std::fabs(z) < 1e-2) {
    const double z2 = z * z;
    s0 = w * (1 - z2 / 6 + z2 * z2 / 120 - z2 * z2 * z2 / 5040);
    s1 = w * w * z * (1.0 / 3 - z2 / 30 + z2 * z2 / 840 - z2 * z2 * z2 / 45360);
  } else {
    s0 = std::sin(z) / k;
    s1 = (std::sin(z) - z * std::cos(z)) / (k * k);
  }
  const cplx inner{2 * (A + B * m) * s0, 2 * B * s1};
  return e_mul(xi, m) * inner;
}

}  // namespace detail

class CutoffFn {
 public:
  CutoffFn() = default;

  static CutoffFn eta0() {
    const double l4 = std::log(4.0);
    return CutoffFn(CutoffKind::Eta0, {{0.25, 0.5, PieceKind::LogAffine, 4 * l4, 4},
                                       {0.5, 1.0, PieceKind::LogAffine, 0, -4}});
  }
  static CutoffFn eta1() {
    return CutoffFn(CutoffKind::Eta1, {{0.1, 0.2, PieceKind::Affine, -1, 10},
                                       {0.2, 0.8, PieceKind::Affine, 1, 0},
                                       {0.8, 0.9, PieceKind::Affine, 9, -10}});
  }
  static CutoffFn indicator01() {
    return CutoffFn(CutoffKind::Indicator01, {{0.0, 1.0, PieceKind::Affine, 1, 0}});
  }
  static CutoffFn custom(std::vector<Piece> pieces) { return CutoffFn(CutoffKind::Custom, std::move(pieces)); }

  // Same shape with values multiplied by k.
  CutoffFn scaled(double k) const {
    CutoffFn r = *this;
    for (auto& p : r.pieces_) {
      p.a *= k;
      p.b *= k;
    }
    return r;
  }

  CutoffKind kind() const { return kind_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  double support_lo() const { return pieces_.empty() ? 0.0 : pieces_.front().lo; }
  double support_hi() const { return pieces_.empty() ? 0.0 : pieces_.back().hi; }

  std::string name() const {
    switch (kind_) {
      case CutoffKind::Eta0: return "eta0";
      case CutoffKind::Eta1: return "eta1";
      case CutoffKind::Indicator01: return "indicator01";
      default: return "custom";
    }
  }

  double operator()(double t) const {
    if (pieces_.empty() || t < pieces_.front().lo || t > pieces_.back().hi) return 0.0;
    for (const auto& p : pieces_)
      if (t >= p.lo && t <= p.hi) return p.value(t);
    return 0.0;
  }

  CutoffNorms norms() const {
    CutoffNorms n;
    // One-sided limits at each breakpoint.
    std::vector<double> bps;
    for (const auto& p : pieces_) {
      bps.push_back(p.lo);
      bps.push_back(p.hi);
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    bool f_jumps = false;
    double jump_f = 0, jump_d = 0, jump_sq = 0, jump_g = 0;
    for (double t : bps) {
      double fl = 0, fr = 0, dl = 0, dr = 0;
      for (const auto& p : pieces_) {
        if (p.hi == t) {
          fl = p.value(t);
          dl = p.deriv(t);
        }
        if (p.lo == t) {
          fr = p.value(t);
          dr = p.deriv(t);
        }
      }
      const double jf = std::fabs(fr - fl);
      if (jf > 1e-14 * (1 + std::fabs(fl))) f_jumps = true;
      jump_f += jf;
      jump_d += std::fabs(dr - dl);
      jump_sq += std::fabs(fr * fr - fl * fl) / 2;
      jump_g += std::fabs(fr * dr - fl * dl);
    }
    double l1 = 0, l2sq = 0, linf = 0, tv1 = 0, tvd = 0, ld = 0, tsq = 0, tg = 0;
    for (const auto& p : pieces_) {
      const double r = p.root();
      if (std::isnan(r)) {
        l1 += std::fabs(detail::affine_int(p, p.lo, p.hi));
      } else {
        l1 += std::fabs(detail::affine_int(p, p.lo, r)) + std::fabs(detail::affine_int(p, r, p.hi));
      }
      l2sq += detail::square_int(p, p.lo, p.hi);
      linf = std::max({linf, std::fabs(p.value(p.lo)), std::fabs(p.value(p.hi))});
      tv1 += std::fabs(p.value(p.hi) - p.value(p.lo));
      tvd += std::fabs(p.deriv(p.hi) - p.deriv(p.lo));
      ld = std::max({ld, std::fabs(p.deriv(p.lo)), std::fabs(p.deriv(p.hi))});
      std::vector<double> cuts;
      if (!std::isnan(r)) cuts.push_back(r);
      tsq += detail::tv_split([&](double t) { return p.value(t) * p.value(t) / 2; }, p.lo, p.hi, cuts);
      std::vector<double> gcuts;
      if (p.kind == PieceKind::LogAffine && p.b != 0) {
        const double ts = std::exp(1 - p.a / p.b);
        if (ts > p.lo && ts < p.hi) gcuts.push_back(ts);
      }
      tg += detail::tv_split([&](double t) { return p.ffprime(t); }, p.lo, p.hi, gcuts);
    }
    n.l1 = l1;
    n.l2sq = l2sq;
    n.l2 = std::sqrt(l2sq);
    n.linf = linf;
    n.tv1 = tv1 + jump_f;
    n.linf_deriv = ld;
    n.l1_self_deriv = tsq + jump_sq;
    n.tv2 = f_jumps ? kInf : tvd + jump_d;
    n.l1_second_combo = f_jumps ? kInf : tg + jump_g;
    return n;
  }

  // Integral of f(y) e(xi y) dy.
  cplx fourier(double xi) const {
    cplx s{};
    for (const auto& p : pieces_) {
      if (p.kind == PieceKind::Affine) {
        s += detail::affine_fourier(p.a, p.b, p.lo, p.hi, xi);
      } else {
        const int panels = 1 + static_cast<int>(std::ceil(2 * std::fabs(xi) * (p.hi - p.lo)));
        auto f = [&](double t) { return p.value(t) * e_mul(xi, t); };
        s += quad::integrate_panels<cplx>(f, p.lo, p.hi, panels, 1e-14);
      }
    }
    return s;
  }

  // Mellin transform: integral of f(t) t^(s-1) dt, in closed form.
  cplx mellin(cplx s) const {
    cplx total{};
    for (const auto& p : pieces_) {
      auto pw = [](double t, cplx e) { return std::exp(e * std::log(t)); };
      if (p.kind == PieceKind::Affine) {
        total += p.a * (pw(p.hi, s) - pw(p.lo, s)) / s;
        total += p.b * (pw(p.hi, s + 1.0) - pw(p.lo, s + 1.0)) / (s + 1.0);
      } else {
        auto F = [&](double t) {
          const cplx ts = pw(t, s);
          return ts * (p.a / s + p.b * std::log(t) / s - p.b / (s * s));
        };
        total += F(p.hi) - F(p.lo);
      }
    }
    return total;
  }

 private:
  CutoffFn(CutoffKind k, std::vector<Piece> pieces) : kind_(k), pieces_(std::move(pieces)) {
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const auto& p = pieces_[i];
      if (!std::isfinite(p.lo) || !std::isfinite(p.hi))
        throw std::domain_error("cutoff: unbounded support");
      require(p.lo < p.hi, "cutoff: piece with lo >= hi");
      require(p.kind == PieceKind::Affine || p.lo > 0, "cutoff: log piece must lie in t > 0");
      require(i == 0 || pieces_[i - 1].hi <= p.lo, "cutoff: pieces must be ordered and disjoint");
    }
  }

  CutoffKind kind_ = CutoffKind::Custom;
  std::vector<Piece> pieces_;
};

// Both sides of the factorisation identity for eta0(dw/x).
struct FactorizationCheck {
  double lhs = 0;
  double rhs = 0;
  double deviation() const { return std::fabs(lhs - rhs); }
};

// rhs = 4 * (log-length of {W : x/2W <= d <= x/W, W/2 <= w <= W}).
inline FactorizationCheck eta0_factorization_check(double d, double w, double x) {
  require(d > 0 && w > 0 && x > 0, "eta0_factorization_check: d, w, x > 0");
  FactorizationCheck r;
  r.lhs = CutoffFn::eta0()(d * w / x);
  const double lo = std::max(x / (2 * d), w);
  const double hi = std::min(x / d, 2 * w);
  r.rhs = hi > lo ? 4 * std::log(hi / lo) : 0.0;
  return r;
}

// Integral of eta1(s) eta1(1 - s - t/K) ds. The integrand is piecewise
// quadratic between merged breakpoints, so Simpson's rule is exact there.
inline double eta1_selfconv(double t, double K) {
  require(K >= 1, "eta1_selfconv: K >= 1");
  const CutoffFn e = CutoffFn::eta1();
  const double u = t / K;
  std::vector<double> cuts = {0.1, 0.2, 0.8, 0.9};
  for (double c : {0.1, 0.2, 0.8, 0.9}) cuts.push_back(1 - u - c);
  const double lo = std::max(0.1, 0.1 - u), hi = std::min(0.9, 0.9 - u);
  if (hi <= lo) return 0.0;
  std::erase_if(cuts, [&](double c) { return c <= lo || c >= hi; });
  cuts.push_back(lo);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  auto g = [&](double s) { return e(s) * e(1 - s - u); };
  KahanSum acc;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (b <= a) continue;
    // Evaluate slightly inside the ends so one-sided values are used.
    const double ea = a + (b - a) * 1e-15, eb = b - (b - a) * 1e-15;
    acc.add((b - a) / 6 * (g(ea) + 4 * g(0.5 * (a + b)) + g(eb)));
  }
  return acc.value();
}

}  // namespace circle
