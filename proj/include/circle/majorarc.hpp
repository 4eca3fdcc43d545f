#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "circle/core.hpp"
#include "circle/cutoffs.hpp"
#include "circle/expsum.hpp"
#include "circle/quadrature.hpp"

#ifndef CIRCLE_DATA_DIR
#define CIRCLE_DATA_DIR "data"
#endif

namespace circle::major {

struct ZeroTable {
  std::vector<double> gammas;
  double height = 0;
  std::size_t count() const { return gammas.size(); }

  // The first n zeros, with height set to the n-th ordinate.
  ZeroTable prefix(std::size_t n) const {
    ZeroTable t;
    n = std::min(n, gammas.size());
    t.gammas.assign(gammas.begin(), gammas.begin() + static_cast<std::ptrdiff_t>(n));
    t.height = n ? t.gammas.back() : 0.0;
    return t;
  }
};

inline constexpr double kFirstZeros[3] = {14.134725141734693, 21.022039638771555, 25.010857580145688};

inline std::string default_zero_path() {
  if (const char* p = std::getenv("CIRCLE_ZEROS"); p && *p) return p;
  return std::string(CIRCLE_DATA_DIR) + "/zeta_zeros_100k.txt";
}

inline ZeroTable parse_zeros(std::istream& in, const std::string& origin = "<stream>") {
  ZeroTable t;
  double header_height = -1;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    if (line[b] == '#') {
      std::istringstream hs(line.substr(b + 1));
      std::string key;
      double v = 0;
      if (hs >> key && key == "height" && hs >> v) header_height = v;
      continue;
    }
    char* end = nullptr;
    const double g = std::strtod(line.c_str() + b, &end);
    const bool trailing_ok = std::string(end).find_first_not_of(" \t\r") == std::string::npos;
    if (end == line.c_str() + b || !trailing_ok || !std::isfinite(g))
      throw IngestError(origin + ":" + std::to_string(lineno) + ": unparsable ordinate");
    if (g <= 0 || (!t.gammas.empty() && g <= t.gammas.back()))
      throw IngestError(origin + ":" + std::to_string(lineno) + ": ordinates must be positive and strictly ascending");
    t.gammas.push_back(g);
  }
  if (t.gammas.empty()) throw IngestError(origin + ": no zeros");
  for (std::size_t i = 0; i < 3 && i < t.gammas.size(); ++i)
    if (std::fabs(t.gammas[i] - kFirstZeros[i]) > 1e-5)
      throw IngestError(origin + ": zero #" + std::to_string(i + 1) + " disagrees with the reference ordinate");
  t.height = header_height >= 0 ? header_height : t.gammas.back();
  if (t.height < t.gammas.back()) throw IngestError(origin + ": header height below the last ordinate");
  return t;
}

inline ZeroTable load_zeros(const std::string& path = default_zero_path()) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open zero table: " + path);
  return parse_zeros(in, path);
}

// ---------------------------------------------------------------------------
// Explicit formula.

// Integral of eta(y/x) / (y^3 - y) dy.
inline double trivial_zero_term(const CutoffFn& eta, double x) {
  KahanSum s;
  for (const auto& p : eta.pieces()) {
    auto f = [&](double t) {
      const double y = x * t;
      return p.value(t) * x / (y * y * y - y);
    };
    s.add(quad::integrate<double>(f, p.lo, p.hi, 1e-15, 1e-13));
  }
  return s.value();
}

// x^rho M(rho) for rho = 1/2 + i gamma: the integral of eta(y/x) y^(rho-1) dy.
inline cplx zero_term(const CutoffFn& eta, double x, double gamma) {
  const cplx rho{0.5, gamma};
  return std::exp(rho * std::log(x)) * eta.mellin(rho);
}

// The same integral by quadrature in u = log t, splitting into panels of
// about one oscillation each.
inline cplx zero_term_quadrature(const CutoffFn& eta, double x, double gamma) {
  KahanComplex s;
  for (const auto& p : eta.pieces()) {
    const double ua = std::log(p.lo), ub = std::log(p.hi);
    const int panels = 1 + static_cast<int>(std::ceil(std::fabs(gamma) * (ub - ua) / kTwoPi));
    auto f = [&](double u) {
      const double t = std::exp(u);
      return p.value(t) * std::sqrt(t) * cplx{std::cos(gamma * u), std::sin(gamma * u)};
    };
    // The phase gamma*log t carries ~gamma*eps roundoff, so ask for no more than that.
    const double scale = std::max(std::fabs(p.value(p.lo)), std::fabs(p.value(p.hi))) * std::sqrt(p.hi) * (ub - ua);
    s.add(quad::integrate_panels<cplx>(f, ua, ub, panels, 1e-11 * scale, 1e-11));
  }
  const cplx rho{0.5, gamma};
  return std::exp(rho * std::log(x)) * s.value();
}

struct ExplicitFormula {
  double smooth = 0;      // x * integral(eta) - trivial_zero_term
  cplx zero_sum{};        // sum over rho and conj(rho)
  cplx value{};           // smooth - zero_sum
  double pairing_imag = 0;  // |Im zero_sum| / |zero_sum|
};

inline ExplicitFormula explicit_formula(const CutoffFn& eta, double x, const ZeroTable& zeros) {
  if (eta.support_lo() * x < 2) throw PreconditionError("explicit_formula: support of eta(./x) must lie in [2, inf)");
  ExplicitFormula r;
  double integral = 0;
  for (const auto& p : eta.pieces()) integral += detail::affine_int(p, p.lo, p.hi);
  r.smooth = x * integral - trivial_zero_term(eta, x);
  KahanComplex zs;
  for (double g : zeros.gammas) {
    zs.add(zero_term(eta, x, g));
    zs.add(zero_term(eta, x, -g));
  }
  r.zero_sum = zs.value();
  r.pairing_imag = std::abs(r.zero_sum) > 0 ? std::fabs(r.zero_sum.imag()) / std::abs(r.zero_sum) : 0.0;
  r.value = cplx{r.smooth, 0.0} - r.zero_sum;
  return r;
}

// ---------------------------------------------------------------------------
// Major-arc constants.

// A = 60 ||eta||_1 + 32 c' ||eta'||_TV + 4 c'^2 ||eta''||_TV, with
// ||eta'||_TV = TV(eta) and ||eta''||_TV = TV(eta').
inline double a_constant(const CutoffFn& eta, double c_prime) {
  if (eta.empty()) return 0.0;
  const auto n = eta.norms();
  return 60 * n.l1 + 32 * c_prime * n.tv1 + 4 * c_prime * c_prime * n.tv2;
}

struct ZeroTail {
  double two_term = 0;
  double simplified = 0;  // log T0 / (3 T0)
  InequalityCheck check;
};

inline ZeroTail zero_tail_bound(double T0) {
  ZeroTail z;
  const double L = std::log(T0 / kTwoPi);
  z.two_term = (L + 1) / (kPi * T0) + 1.34 / (T0 * T0) * (2 * L + 1);
  z.simplified = std::log(T0) / (3 * T0);
  z.check = make_check("zero tail", z.two_term, z.simplified);
  add_hypothesis(z.check, "T0 >= 1e3", T0 >= 1e3);
  return z;
}

struct MajorArcResult {
  cplx s_value{};
  cplx main_term{};
  double residual = 0;
  double bound = 0;
  double a_const = 0;
  double T0 = 0;
  std::size_t zero_count = 0;
  InequalityCheck check;
};

inline double aleph_limit(const CutoffFn& eta, double x, double T0) {
  return T0 / (4 * kPi * eta.support_hi() * x);
}

inline double exam_bound(const CutoffFn& eta, double x, const ZeroTable& zeros) {
  const double T0 = zeros.height;
  const double c = eta.support_lo(), cp = eta.support_hi();
  return a_constant(eta, cp) * std::log(T0) / (3 * T0) * x +
         2.01 / std::sqrt(c) * std::sqrt(x) * static_cast<double>(zeros.count()) * eta.norms().l1;
}

inline MajorArcResult major_arc_eval(double x, double alpha, const CutoffFn& eta, const ZeroTable& zeros,
                                     double cap = kDirectCap) {
  require(eta.support_lo() > 0, "major_arc_eval: eta must vanish near 0");
  require(eta.support_lo() * x >= 1e3, "major_arc_eval: c x >= 1e3");
  const double lim = aleph_limit(eta, x, zeros.height);
  if (std::fabs(alpha) > lim) throw PreconditionError("major_arc_eval: |alpha| exceeds T0/(4 pi c' x)");
  MajorArcResult r;
  r.T0 = zeros.height;
  r.zero_count = zeros.count();
  r.s_value = s_eval(SumSpec{x, eta, 1, 0}, alpha, cap).value;
  r.main_term = x * eta.fourier(alpha * x);
  r.residual = std::abs(r.s_value - r.main_term);
  r.a_const = a_constant(eta, eta.support_hi());
  r.bound = exam_bound(eta, x, zeros);
  r.check = make_check("exam", r.residual, r.bound);
  add_hypothesis(r.check, "T0 >= 1e3", r.T0 >= 1e3);
  return r;
}

}  // namespace circle::major
