#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdlib>
#include <type_traits>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "circle/core.hpp"
#include "circle/cutoffs.hpp"
#include "circle/expsum.hpp"

namespace circle::bounds {

// Expression templates off: results are always concrete numbers.
using mp = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<50, boost::multiprecision::allocate_stack>,
                                         boost::multiprecision::et_off>;

enum class Regime { Sax, Sax2, Sax3, Lab, StrongMinor, ChenWang };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Sax: return "Sax";
    case Regime::Sax2: return "Sax-2";
    case Regime::Sax3: return "Sax-3";
    case Regime::Lab: return "Lab";
    case Regime::StrongMinor: return "StrongMinor";
    default: return "ChenWang";
  }
}

inline Regime parse_regime(const std::string& s) {
  for (Regime r : {Regime::Sax, Regime::Sax2, Regime::Sax3, Regime::Lab, Regime::StrongMinor, Regime::ChenWang})
    if (s == regime_name(r)) return r;
  if (s == "Sax2") return Regime::Sax2;
  if (s == "Sax3") return Regime::Sax3;
  throw PreconditionError("unknown regime: " + s);
}

// Continued-fraction convergent of 4 alpha with denominator <= Q, computed on
// the exact binary value of 4 alpha.
inline RationalApprox dirichlet_approx(double alpha, double Q) {
  using boost::multiprecision::cpp_int;
  require(Q >= 1, "dirichlet_approx: Q >= 1");
  require(std::isfinite(alpha), "dirichlet_approx: finite alpha");
  const double target = 4 * alpha;
  int ex = 0;
  const double mant = std::frexp(target, &ex);
  // target = M / 2^k exactly.
  cpp_int M = static_cast<long long>(std::ldexp(mant, 53));
  int k = 53 - ex;
  cpp_int num = M, den = 1;
  if (k >= 0)
    den <<= k;
  else
    num <<= -k;
  cpp_int p0 = 0, q0 = 1, p1 = 1, q1 = 0;  // convergents h_{-2}, h_{-1}
  cpp_int a = num, b = den;
  const cpp_int Qi = static_cast<long long>(std::floor(Q));
  while (b != 0) {
    cpp_int t = a / b;
    if (a < 0 && t * b != a) t -= 1;  // floor division
    cpp_int p2 = t * p1 + p0, q2 = t * q1 + q0;
    if (q2 > Qi) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    cpp_int r = a - t * b;
    a = b;
    b = r;
  }
  RationalApprox ra;
  ra.a = static_cast<i64>(p1);
  ra.q = static_cast<i64>(q1);
  ra.target = target;
  // beta = (num*q - a*den) / (den*q), exact numerator.
  const cpp_int bn = num * q1 - p1 * den;
  ra.beta = static_cast<double>(boost::multiprecision::cpp_rational(bn, den * q1));
  return ra;
}

// ---------------------------------------------------------------------------
// Closed-form evaluators; T is double or mp.

// Decimal constant, exact to the working precision of T.
template <class T>
T lit(const char* s) {
  if constexpr (std::is_floating_point_v<T>)
    return static_cast<T>(std::strtod(s, nullptr));
  else
    return T(s);
}

template <class T>
T term1(const T& x, const T& q, const T& U, const T& V) {
  using std::log;
  return lit<T>("0.5") * x / q * log(x) * log(2 * U * V / q + 4) + lit<T>("0.89") * (U * V + lit<T>("2.5") * q) * (8 + log(q)) * log(2 * x);
}

template <class T>
T term1_alt(const T& x, const T& q) {
  using std::log;
  const T pi = boost::math::constants::pi<T>();
  const T e = boost::math::constants::e<T>();
  const T xq = x / q;
  return T(96) / (pi * pi) * x / (xq * xq) * log(4 * x) * log(4 * e * q / pi);
}

template <class T>
T strong_minor_tail(const T& x, const T& q, const T& U, const T& V) {
  using std::log;
  using std::sqrt;
  return (lit<T>("0.1") * x / sqrt(q) + lit<T>("0.39") * x / sqrt(x / q)) * log(x / (U * V)) * log(V * x / U) +
         (lit<T>("0.55") * x / sqrt(U) + lit<T>("0.78") * x / sqrt(V)) * log(x / U);
}

// Unchecked right-hand side of the minor-arc theorem.
template <class T>
T bound_strong_minor_formula(const T& x, const T& q, const T& U, const T& V, bool alt) {
  return (alt ? term1_alt(x, q) : term1(x, q, U, V)) + strong_minor_tail(x, q, U, V);
}

// Relative tolerance under which two T values count as equal: exact for
// double, 1e-40 at 50 digits so that boundary ties such as UV^2 = x survive
// rounding.
template <class T>
T tie_eps() {
  if constexpr (std::is_floating_point_v<T>)
    return T(0);
  else
    return T("1e-40");
}

template <class T>
bool ge(const T& a, const T& b) {
  using std::fabs;
  return a >= b || fabs(a - b) <= tie_eps<T>() * fabs(b);
}

template <class T>
std::vector<std::pair<std::string, bool>> strong_minor_hypotheses(const T& x, const T& q, const T& U, const T& V,
                                                                  bool alt) {
  std::vector<std::pair<std::string, bool>> h = {
      {"q >= 4", ge<T>(q, T(4))},
      {"1 < U,V < x", U > 1 && V > 1 && U < x && V < x},
      {"UV <= x/4", ge<T>(x / 4, U * V)},
      {"UV^2 >= x", ge<T>(U * V * V, x)},
      {"U, V >= 40", ge<T>(U, T(40)) && ge<T>(V, T(40))},
  };
  if (alt) h.emplace_back("UV < q - 1", U * V < q - 1);
  return h;
}

template <class T>
T bound_strong_minor(const T& x, const T& q, const T& U, const T& V, bool alt) {
  for (const auto& [name, ok] : strong_minor_hypotheses(x, q, U, V, alt))
    if (!ok) throw PreconditionError("bound_strong_minor: hypothesis violated: " + name);
  return bound_strong_minor_formula(x, q, U, V, alt);
}

template <class T>
bool regime_admits(Regime r, const T& x, const T& q) {
  using std::pow;
  switch (r) {
    case Regime::Sax: return ge<T>(q, T(100)) && ge<T>(x / 100, q);
    case Regime::Sax2: return ge<T>(q, T(100)) && ge<T>(pow(x, T(1) / 3), q);
    case Regime::Sax3:
    case Regime::Lab: return ge<T>(q, pow(x, T(2) / 3)) && ge<T>(x / 100, q);
    default: return true;
  }
}

template <class T>
T bound_theorem12(const T& x, const T& q, Regime r) {
  using std::log;
  using std::pow;
  using std::sqrt;
  if (!regime_admits(r, x, q))
    throw PreconditionError(std::string("bound_theorem12: q outside the range of regime ") + regime_name(r));
  const T Lx = log(x);
  const T xq = x / q;
  switch (r) {
    case Regime::Sax:
      return (lit<T>("0.14") * x / sqrt(q) + lit<T>("0.64") * x / sqrt(xq) + lit<T>("0.15") * pow(x, lit<T>("0.8"))) * Lx * (Lx + lit<T>("11.3"));
    case Regime::Sax2: {
      const T L2 = log(2 * x), Lq = log(q);
      return lit<T>("0.5") * xq * L2 * (L2 + 15) + lit<T>("0.31") * x / sqrt(q) * Lq * (Lq + lit<T>("8.9"));
    }
    case Regime::Sax3: {
      const T Lr = log(xq);
      return lit<T>("3.12") * x / xq * log(2 * x) * (log(q) + 8) + lit<T>("1.19") * x / sqrt(xq) * Lr * (Lr + lit<T>("2.3"));
    }
    case Regime::Lab: {
      const T Lr = log(xq);
      return lit<T>("9.73") * x / (xq * xq) * Lx * Lx + lit<T>("1.2") * x / sqrt(xq) * Lr * (Lr + lit<T>("2.4"));
    }
    default: throw PreconditionError("bound_theorem12: regime must be Sax, Sax-2, Sax-3 or Lab");
  }
}

template <class T>
T bound_chen_wang(const T& x, const T& q) {
  using std::log;
  using std::pow;
  using std::sqrt;
  require(q >= 1, "bound_chen_wang: q >= 1");
  const T Lx = log(x);
  return lit<T>("0.177") * x / sqrt(q) * Lx * Lx * Lx + lit<T>("0.08") * x / sqrt(x / q) * pow(Lx, lit<T>("3.5")) +
         lit<T>("3.8") * pow(x, lit<T>("0.8")) * pow(Lx, lit<T>("2.2"));
}

// (U, V) used to specialise the theorem in each regime.
template <class T>
std::pair<T, T> regime_uv(Regime r, const T& x, const T& q) {
  using std::pow;
  switch (r) {
    case Regime::Sax: return {pow(x, lit<T>("0.4")) / 4, pow(x, lit<T>("0.4")) / 2};
    case Regime::Sax2: return {x / (q * q), q};
    case Regime::Sax3: return {x / ((x / q) * (x / q)), x / q};
    case Regime::Lab: {
      const T v = lit<T>("1.02") * x / q;
      return {x / (v * v), v};
    }
    default: throw PreconditionError("regime_uv: no (U,V) choice for this regime");
  }
}

// Cost of replacing S_{eta0,2} by S_{eta0,q0}: ||eta0||_inf (log x + 2.52 sqrt x).
template <class T>
T eta_smash_correction(const T& x) {
  using std::log;
  using std::sqrt;
  return 4 * log(T(2)) * (log(x) + lit<T>("2.52") * sqrt(x));
}

// A check evaluated in T; lhs/rhs are stored divided by x so they fit a double.
template <class T>
InequalityCheck scaled_check(std::string anchor, const T& lhs, const T& rhs, const T& scale) {
  InequalityCheck c;
  c.anchor = std::move(anchor);
  c.lhs = static_cast<double>(lhs / scale);
  c.rhs = static_cast<double>(rhs / scale);
  c.margin = ge<T>(rhs, lhs) && rhs < lhs ? 0.0 : static_cast<double>((rhs - lhs) / scale);
  return c;
}

template <class T = mp>
InequalityCheck derivation_chain_check(const T& x, const T& q, Regime r) {
  const auto [U, V] = regime_uv(r, x, q);
  const bool alt = r == Regime::Lab;
  const T lhs = bound_strong_minor_formula(x, q, U, V, alt) + eta_smash_correction(x);
  const T rhs = bound_theorem12(x, q, r);
  auto c = scaled_check(std::string("expsum chain ") + regime_name(r), lhs, rhs, x);
  add_hypothesis(c, "x >= 1e20", ge<T>(x, T(1e20)));
  for (const auto& [name, ok] : strong_minor_hypotheses(x, q, U, V, alt)) add_hypothesis(c, name, ok);
  return c;
}

// Each printed intermediate inequality of the specialisation argument.
template <class T = mp>
std::vector<InequalityCheck> chain_intermediates(const T& x, const T& q, Regime r) {
  using std::log;
  using std::pow;
  using std::sqrt;
  std::vector<InequalityCheck> v;
  const T one(1);
  const T Lx = log(x), L2 = log(2 * x), Lq = log(q), xq = x / q, Lr = log(x / q);
  const T big = Lx * (Lx + lit<T>("11.3"));
  auto add = [&](const std::string& name, const T& l, const T& rr, const T& s) {
    v.push_back(scaled_check(name, l, rr, s));
  };
  switch (r) {
    case Regime::Sax: {
      const T x15 = pow(x, lit<T>("0.2")), x35 = pow(x, lit<T>("0.6")), x45 = pow(x, lit<T>("0.8"));
      add("Sax: log(2UV/q+4) <= log(x^{4/5})", log(x45 / (4 * q) + 4), log(x45), one);
      add("Sax: log(8x^{1/5})log(2x) <= (1/5)log x(log x+11.3)", log(8 * x15) * L2, big / 5, one);
      add("Sax: (8+log q)log(2x) <= 1.1 log x(log x+11.3)", (8 + Lq) * L2, lit<T>("1.1") * big, one);
      add("Sax: log(2x^{3/5}) <= 0.011 log x(log x+11.3)", log(2 * x35), lit<T>("0.011") * big, one);
      add("Sax: log(x/U) = log(4x^{3/5}) <= 0.011 log x(log x+11.3)", log(4 * x35), lit<T>("0.011") * big, one);
      add("Sax: 0.55 sqrt(4) + 0.78 sqrt(2) <= 2.3", lit<T>("0.55") * 2 + lit<T>("0.78") * sqrt(T(2)), lit<T>("2.3"), one);
      add("Sax: 0.89*1.1/8 + 2.3*0.011 <= 0.149", lit<T>("0.89") * lit<T>("1.1") / 8 + lit<T>("2.3") * lit<T>("0.011"), lit<T>("0.149"), one);
      add("Sax: 0.89*1.1*5/2 <= 2.45", lit<T>("0.89") * lit<T>("1.1") * lit<T>("2.5"), lit<T>("2.45"), one);
      add("Sax: 0.4 x/q <= 0.04 x/sqrt(q)", lit<T>("0.4") * x / q, lit<T>("0.04") * x / sqrt(q), x);
      add("Sax: 2.45 x/(x/q) <= 0.245 x/sqrt(x/q)", lit<T>("2.45") * q, lit<T>("0.245") * x / sqrt(xq), x);
      add("Sax: 0.1 + 0.04 <= 0.14", lit<T>("0.14"), lit<T>("0.14"), one);
      add("Sax: 0.39 + 0.245 <= 0.64", lit<T>("0.39") + lit<T>("0.245"), lit<T>("0.64"), one);
      break;
    }
    case Regime::Sax2: {
      add("Sax-2: x/sqrt(x/q^2) <= x/sqrt(q)", x / sqrt(x / (q * q)), x / sqrt(q), x);
      add("Sax-2: x/sqrt(x/q) <= 0.001 x/sqrt(q)", x / sqrt(xq), lit<T>("0.001") * x / sqrt(q), x);
      add("Sax-2: q <= 0.001 x/q", q, lit<T>("0.001") * xq, x);
      add("Sax-2: 0.89 (1 + 2.5*0.001) <= 0.9", lit<T>("0.89") * (1 + lit<T>("2.5") * lit<T>("0.001")), lit<T>("0.9"), one);
      add("Sax-2: 0.5 log(2x/q^2+4) + 0.9(8+log q) <= 0.5(log(2x+4q^2)+14.4)",
          lit<T>("0.5") * log(2 * x / (q * q) + 4) + lit<T>("0.9") * (8 + Lq), lit<T>("0.5") * (log(2 * x + 4 * q * q) + lit<T>("14.4")), one);
      add("Sax-2: 0.5(log(2x+4q^2)+14.4) <= 0.5(log(2x)+15)", lit<T>("0.5") * (log(2 * x + 4 * q * q) + lit<T>("14.4")),
          lit<T>("0.5") * (L2 + 15), one);
      add("Sax-2: 3(0.1 + 0.39*0.001) <= 0.301", 3 * (lit<T>("0.1") + lit<T>("0.39") * lit<T>("0.001")), lit<T>("0.301"), one);
      add("Sax-2: 3(0.1 + 0.39*0.001) <= 0.31", 3 * (lit<T>("0.1") + lit<T>("0.39") * lit<T>("0.001")), lit<T>("0.31"), one);
      add("Sax-2: 2(0.55 + 0.78) <= 2.66", 2 * (lit<T>("0.55") + lit<T>("0.78")), lit<T>("2.66"), one);
      add("Sax-2: 0.301 log^2 q + 2.66 log q <= 0.301 log q(log q+8.9)", lit<T>("0.301") * Lq * Lq + lit<T>("2.66") * Lq,
          lit<T>("0.301") * Lq * (Lq + lit<T>("8.9")), one);
      break;
    }
    case Regime::Sax3: {
      add("Sax-3: x/sqrt(x/(x/q)^2) <= x/sqrt(x/q)", x / sqrt(x / (xq * xq)), x / sqrt(xq), x);
      add("Sax-3: x/sqrt(q) <= 0.001 x/sqrt(x/q)", x / sqrt(q), lit<T>("0.001") * x / sqrt(xq), x);
      add("Sax-3: x/q <= 0.001 q", xq, lit<T>("0.001") * q, x);
      add("Sax-3: 0.5 (x/q) log x log 6 + 0.89*3.5 q(8+log q)log(2x) <= 3.12 q(8+log q)log(2x)",
          lit<T>("0.5") * xq * Lx * log(T(6)) + lit<T>("0.89") * lit<T>("3.5") * q * (8 + Lq) * L2, lit<T>("3.12") * q * (8 + Lq) * L2, x);
      add("Sax-3: 3(0.39 + 0.1*0.001) <= 1.181", 3 * (lit<T>("0.39") + lit<T>("0.1") * lit<T>("0.001")), lit<T>("1.181"), one);
      add("Sax-3: 2(0.55 + 0.78) <= 2.66", 2 * (lit<T>("0.55") + lit<T>("0.78")), lit<T>("2.66"), one);
      add("Sax-3: 1.181 log^2(x/q) + 2.66 log(x/q) <= 1.181 log(x/q)(log(x/q)+2.3)",
          lit<T>("1.181") * Lr * Lr + lit<T>("2.66") * Lr, lit<T>("1.181") * Lr * (Lr + lit<T>("2.3")), one);
      break;
    }
    case Regime::Lab: {
      const T pi = boost::math::constants::pi<T>();
      const T e = boost::math::constants::e<T>();
      const T L102 = log(lit<T>("1.02") * xq);
      add("Lab: UV < q - 1", q / lit<T>("1.02"), q - 1, x);
      add("Lab: log(4eq/pi) <= log(x/4)", log(4 * e * q / pi), log(x / 4), one);
      add("Lab: log(4x)log(x/4) <= log^2 x", log(4 * x) * log(x / 4), Lx * Lx, one);
      add("Lab: x/sqrt(x/(1.02x/q)^2) <= 1.02 x/sqrt(x/q)",
          x / sqrt(x / ((lit<T>("1.02") * xq) * (lit<T>("1.02") * xq))), lit<T>("1.02") * x / sqrt(xq), x);
      add("Lab: x/sqrt(q) <= 0.001 x/sqrt(x/q)", x / sqrt(q), lit<T>("0.001") * x / sqrt(xq), x);
      add("Lab: 3(0.39 + 0.1*0.001) <= 1.19", 3 * (lit<T>("0.39") + lit<T>("0.1") * lit<T>("0.001")), lit<T>("1.19"), one);
      add("Lab: 2(0.55*1.02 + 0.78/sqrt(1.02)) <= 2.67", 2 * (lit<T>("0.55") * lit<T>("1.02") + lit<T>("0.78") / sqrt(lit<T>("1.02"))),
          lit<T>("2.67"), one);
      add("Lab: 1.19 L^2 + 2.67 L <= 1.19 L(L+2.3), L = log(1.02x/q)", lit<T>("1.19") * L102 * L102 + lit<T>("2.67") * L102,
          lit<T>("1.19") * L102 * (L102 + lit<T>("2.3")), one);
      add("Lab: 1.19 log(1.02x/q) <= 1.2 log(x/q)", lit<T>("1.19") * L102, lit<T>("1.2") * Lr, one);
      add("Lab: log(1.02x/q) + 2.3 <= log(x/q) + 2.35", L102 + lit<T>("2.3"), Lr + lit<T>("2.35"), one);
      add("Lab: 96/pi^2 <= 9.73", T(96) / (pi * pi), lit<T>("9.73"), one);
      break;
    }
    default: break;
  }
  return v;
}

// Log-spaced grid with both endpoints: per_decade points per decade, at least
// min_points in total (per_decade = 0 gives exactly min_points).
template <class T = mp>
std::vector<T> log_grid(const T& lo, const T& hi, double per_decade, int min_points = 2) {
  using std::log10;
  using std::pow;
  std::vector<T> g;
  const T a = log10(lo), b = log10(hi);
  if (b <= a) return {lo};
  const int n = std::max(min_points, static_cast<int>(std::ceil(static_cast<double>((b - a)) * per_decade)) + 1);
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      g.push_back(lo);
    } else if (i == n - 1) {
      g.push_back(hi);
    } else {
      g.push_back(pow(T(10), a + (b - a) * i / (n - 1)));
    }
  }
  return g;
}

// Admissible q-range of a regime at x.
template <class T = mp>
std::pair<T, T> regime_q_range(Regime r, const T& x) {
  using std::pow;
  switch (r) {
    case Regime::Sax: return {T(100), x / 100};
    case Regime::Sax2: return {T(100), pow(x, T(1) / 3)};
    case Regime::Sax3:
    case Regime::Lab: return {pow(x, T(2) / 3), x / 100};
    default: throw PreconditionError("regime_q_range: not a specialised regime");
  }
}

struct GridSummary {
  std::size_t points = 0;
  std::size_t violations = 0;
  std::size_t hypothesis_failures = 0;
  double min_margin = kInf;
  std::string worst;
};

// Runs derivation_chain_check over x in [x_lo, x_hi] at x_per_decade and
// q_points log-spaced q values (endpoints included) in the regime's range.
inline GridSummary derivation_chain_grid(Regime r, const mp& x_lo, const mp& x_hi, double x_per_decade,
                                         int q_points, bool intermediates = false) {
  GridSummary s;
  for (const mp& x : log_grid(x_lo, x_hi, x_per_decade)) {
    const auto [qa, qb] = regime_q_range(r, x);
    using std::log10;
    const double dec = static_cast<double>(log10(qb) - log10(qa));
    for (const mp& q : log_grid(qa, qb, (q_points - 1) / std::max(dec, 1e-9), q_points)) {
      std::vector<InequalityCheck> cs;
      cs.push_back(derivation_chain_check(x, q, r));
      if (intermediates)
        for (auto& c : chain_intermediates(x, q, r)) cs.push_back(std::move(c));
      for (const auto& c : cs) {
        ++s.points;
        const double rel = c.rhs != 0 ? c.margin / std::fabs(c.rhs) : c.margin;
        if (c.violated()) ++s.violations;
        if (!c.hypotheses_ok) ++s.hypothesis_failures;
        if (rel < s.min_margin) {
          s.min_margin = rel;
          s.worst = c.anchor + " at log10 x = " + std::to_string(static_cast<double>(log10(x))) +
                    ", log10 q = " + std::to_string(static_cast<double>(log10(q)));
        }
      }
    }
    if (q_points <= 0) break;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Desk verification against the true sum.

struct BoundReport {
  double bound = 0;
  double actual = std::nan("");
  double margin = std::nan("");
  Regime regime = Regime::StrongMinor;
  RationalApprox approx;
  double U = 0, V = 0;
  std::vector<std::pair<std::string, bool>> hypotheses;
  bool hypotheses_ok() const {
    for (const auto& h : hypotheses)
      if (!h.second) return false;
    return true;
  }
  bool holds() const { return hypotheses_ok() && margin >= 0; }
};

struct DeskOptions {
  std::optional<double> U, V;
  std::optional<double> Q;  // denominator cap for the approximation of 4 alpha
};

inline BoundReport verify_bound_at_desk(const PrimeWeights& pw, double alpha, const DeskOptions& opt = {}) {
  const double x = pw.spec().x;
  BoundReport r;
  const double def = std::max(40.0, std::pow(x, 0.4) / 2);
  r.U = opt.U.value_or(def);
  r.V = opt.V.value_or(def);
  r.approx = dirichlet_approx(alpha, opt.Q.value_or(std::sqrt(x)));
  const double q = static_cast<double>(r.approx.q);
  r.hypotheses = strong_minor_hypotheses(x, q, r.U, r.V, false);
  r.hypotheses.emplace_back("|beta| <= 1/q^2", std::fabs(r.approx.beta) <= 1 / (q * q));
  r.hypotheses.emplace_back("q0 = 2", pw.spec().q0 == 2 && pw.spec().primorial_bound == 0);
  r.bound = bound_strong_minor_formula<double>(x, q, r.U, r.V, false);
  r.actual = std::abs(pw.eval(alpha).value);
  r.margin = r.bound - r.actual;
  return r;
}

}  // namespace circle::bounds
