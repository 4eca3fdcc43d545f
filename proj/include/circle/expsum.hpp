#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <vector>

#include "circle/arith.hpp"
#include "circle/core.hpp"
#include "circle/cutoffs.hpp"

namespace circle {

inline constexpr double kDirectCap = 1e9;

// Parameters of S_{eta,q0}(x, alpha) = sum Lambda(n) e(alpha n) 1_{(n,q0)=1} eta(n/x).
// primorial_bound adds the condition (n, Q#) = 1 for moduli too large to form.
struct SumSpec {
  double x = 1;
  CutoffFn eta = CutoffFn::eta0();
  u64 q0 = 1;
  double primorial_bound = 0;

  bool admits_prime(u64 p) const {
    return (q0 % p != 0) && static_cast<double>(p) > primorial_bound;
  }
};

struct ExpSumValue {
  cplx value{};
  u64 terms = 0;
};

// The nonzero weights Lambda(n) eta(n/x) of a spec, ascending in n.
class PrimeWeights {
 public:
  explicit PrimeWeights(const SumSpec& spec, double cap = kDirectCap) : spec_(spec) {
    require(spec.x >= 1 && spec.q0 >= 1, "SumSpec: x >= 1, q0 >= 1");
    if (spec.eta.empty()) return;
    const double hi_real = spec.eta.support_hi() * spec.x;
    if (hi_real > cap) throw ResourceError("s_eval: x exceeds the direct-summation cap");
    const u64 lo = static_cast<u64>(std::max(1.0, std::ceil(spec.eta.support_lo() * spec.x)));
    const u64 hi = static_cast<u64>(std::floor(hi_real));
    arith::for_each_prime_power(lo, hi, [&](u64 n, u64 p) {
      if (!spec.admits_prime(p)) return;
      const double e = spec.eta(static_cast<double>(n) / spec.x);
      const double w = std::log(static_cast<double>(p)) * e;
      if (w != 0.0) {
        n_.push_back(n);
        w_.push_back(w);
        eta_.push_back(e);
      }
    });
  }

  const SumSpec& spec() const { return spec_; }
  std::size_t size() const { return n_.size(); }
  const std::vector<u64>& n() const { return n_; }
  const std::vector<double>& w() const { return w_; }

  ExpSumValue eval(double alpha) const {
    KahanComplex acc;
    for (std::size_t i = 0; i < n_.size(); ++i)
      acc.add(w_[i] * e_mul(alpha, static_cast<double>(n_[i])));
    return {acc.value(), n_.size()};
  }

  double total() const {
    KahanSum s;
    for (double v : w_) s.add(v);
    return s.value();
  }

  // S_{eta^2,q}(x,0).
  double total_eta_squared() const {
    KahanSum s;
    for (std::size_t i = 0; i < w_.size(); ++i) s.add(w_[i] * eta_[i]);
    return s.value();
  }

  double sum_squares() const {
    KahanSum s;
    for (double v : w_) s.add(v * v);
    return s.value();
  }

  // max over y <= y_max of |S_{1_[0,1],q}(y, alpha)|. The partial sums only
  // change at prime powers, so scanning them is exact.
  double running_sup_unsmoothed(double alpha, double y_max) const;

 private:
  SumSpec spec_;
  std::vector<u64> n_;
  std::vector<double> w_;
  std::vector<double> eta_;
};

inline ExpSumValue s_eval(const SumSpec& spec, double alpha, double cap = kDirectCap) {
  return PrimeWeights(spec, cap).eval(alpha);
}

// D_H(alpha) = sum_{1 <= h <= H} e(h alpha).
inline cplx dirichlet_kernel(double H, double alpha) {
  require(H >= 1, "dirichlet_kernel: H >= 1");
  const double Hn = std::floor(H);
  const double a = alpha - std::round(alpha);
  if (a == 0.0) return {Hn, 0.0};
  const double amp = e_mul(a, 0.5 * Hn).imag() / std::sin(kPi * a);
  return e_mul(a, 0.5 * (Hn + 1)) * amp;
}

// Exact value of the integral of |S|^2 over R/Z.
inline double l2_exact(const SumSpec& spec, double cap = kDirectCap) {
  return PrimeWeights(spec, cap).sum_squares();
}

inline double PrimeWeights::running_sup_unsmoothed(double alpha, double y_max) const {
  const u64 hi = static_cast<u64>(std::floor(y_max));
  KahanComplex acc;
  double best = 0;
  arith::for_each_prime_power(2, hi, [&](u64 n, u64 p) {
    if (!spec_.admits_prime(p)) return;
    acc.add(std::log(static_cast<double>(p)) * e_mul(alpha, static_cast<double>(n)));
    best = std::max(best, std::abs(acc.value()));
  });
  return best;
}

// |S_{eta,q0} - S_{eta,1}| <= omega(q0) ||eta||_inf log x, and the 2.52 sqrt(x)
// form when every prime factor of q0 is at most sqrt(x).
struct EtaSmashReport {
  InequalityCheck omega_form;
  InequalityCheck sqrt_form;
};

inline EtaSmashReport eta_smash_check(const SumSpec& spec, double alpha, double cap = kDirectCap) {
  SumSpec base = spec;
  base.q0 = 1;
  base.primorial_bound = 0;
  require(spec.primorial_bound == 0, "eta_smash_check: use q0 rather than a primorial bound");
  const double diff = std::abs(s_eval(spec, alpha, cap).value - s_eval(base, alpha, cap).value);
  const auto fac = arith::factorize(spec.q0);
  const double linf = spec.eta.norms().linf;
  EtaSmashReport r;
  r.omega_form = make_check("eta-smash", diff, static_cast<double>(fac.size()) * linf * std::log(spec.x));
  r.sqrt_form = make_check("eta-smash (sqrt form)", diff, 2.52 * std::sqrt(spec.x) * linf);
  const bool small = std::all_of(fac.begin(), fac.end(), [&](auto& pe) {
    return static_cast<double>(pe.first) <= std::sqrt(spec.x);
  });
  add_hypothesis(r.sqrt_form, "largest prime factor of q <= sqrt(x)", small);
  return r;
}

// |S_{eta,q}(x,alpha)| <= ||eta'||_1 sup_{y <= x} |S_{1_[0,1],q}(y,alpha)|.
inline InequalityCheck etail_check(const SumSpec& spec, double alpha, double cap = kDirectCap) {
  PrimeWeights pw(spec, cap);
  const double lhs = std::abs(pw.eval(alpha).value);
  const double ymax = std::max(1.0, spec.eta.support_hi()) * spec.x;
  const double sup = pw.running_sup_unsmoothed(alpha, ymax);
  const auto nm = spec.eta.norms();
  auto c = make_check("etail", lhs, nm.tv1 * sup);
  add_hypothesis(c, "eta supported in [0, 1]", spec.eta.support_lo() >= 0 && spec.eta.support_hi() <= 1);
  return c;
}

// CSV rows (alpha, Re S, Im S, |S|).
inline void write_csv(std::ostream& os, const PrimeWeights& pw, const std::vector<double>& alphas) {
  os << "alpha,re,im,abs\n";
  os.precision(17);
  for (double a : alphas) {
    const cplx v = pw.eval(a).value;
    os << a << ',' << v.real() << ',' << v.imag() << ',' << std::abs(v) << '\n';
  }
}

}  // namespace circle
