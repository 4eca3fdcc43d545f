#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace circle {

using cplx = std::complex<double>;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Raised when an operation is called outside its stated domain.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when a request would exceed a configured memory or size cap.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised on malformed input files.
struct IngestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

// X/Y with the convention X/0 = +inf for X > 0.
inline double ratio_or_inf(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 0.0 : kInf;
  return num / den;
}

// Distance to the nearest integer.
inline double dist_to_int(double t) {
  double f = t - std::floor(t);
  return f < 0.5 ? f : 1.0 - f;
}

// frac(alpha * n) computed from the exact double product: the rounding error of
// alpha*n is recovered with fma, so the phase stays accurate for n near 1e9.
inline double frac_mul(double alpha, double n) {
  double p = alpha * n;
  double err = std::fma(alpha, n, -p);
  double f = p - std::floor(p);
  f += err;
  return f - std::floor(f);
}

// e(theta) = exp(2 pi i theta) for theta already reduced to [0,1).
inline cplx e_frac(double f) {
  return {std::cos(kTwoPi * f), std::sin(kTwoPi * f)};
}

inline cplx e_of(double theta) { return e_frac(theta - std::floor(theta)); }

inline cplx e_mul(double alpha, double n) { return e_frac(frac_mul(alpha, n)); }

// Neumaier-compensated accumulator.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct KahanComplex {
  KahanSum re, im;
  void add(cplx v) {
    re.add(v.real());
    im.add(v.imag());
  }
  cplx value() const { return {re.value(), im.value()}; }
};

// One checked inequality lhs <= rhs.
struct InequalityCheck {
  std::string anchor;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool hypotheses_ok = true;
  std::vector<std::pair<std::string, bool>> hypotheses;

  bool holds() const { return hypotheses_ok && margin >= 0.0; }
  // Judgment is only meaningful when hypotheses hold.
  bool violated() const { return hypotheses_ok && !(margin >= 0.0); }
};

inline InequalityCheck make_check(std::string anchor, double lhs, double rhs) {
  InequalityCheck c;
  c.anchor = std::move(anchor);
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = std::isinf(rhs) && rhs > 0 ? kInf : rhs - lhs;
  return c;
}

// 4 alpha (or another target) = a/q + beta.
struct RationalApprox {
  i64 a = 0;
  i64 q = 1;
  double beta = 0.0;
  double target = 0.0;
};

inline void add_hypothesis(InequalityCheck& c, const std::string& name, bool ok) {
  c.hypotheses.emplace_back(name, ok);
  if (!ok) c.hypotheses_ok = false;
}

}  // namespace circle
