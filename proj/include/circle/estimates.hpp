#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "circle/arith.hpp"
#include "circle/core.hpp"
#include "circle/cutoffs.hpp"
#include "circle/expsum.hpp"
#include "circle/fft.hpp"
#include "circle/quadrature.hpp"

namespace circle::est {

// F(y) = amp * eta(y / X).
struct ScaledFn {
  CutoffFn eta;
  double X = 1;
  double amp = 1;

  double operator()(double y) const { return amp * eta(y / X); }
  double integral() const { return amp * X * eta.fourier(0.0).real(); }
  double l1() const { return std::fabs(amp) * X * eta.norms().l1; }
  // ||F^(k)||_1 in the total-variation sense.
  double deriv_norm(int k) const {
    const auto n = eta.norms();
    switch (k) {
      case 0: return l1();
      case 1: return std::fabs(amp) * n.tv1;
      case 2: return std::fabs(amp) * n.tv2 / X;
      default: throw PreconditionError("ScaledFn: derivative order above 2 unsupported");
    }
  }
  i64 n_lo() const { return static_cast<i64>(std::ceil(eta.support_lo() * X)); }
  i64 n_hi() const { return static_cast<i64>(std::floor(eta.support_hi() * X)); }
};

namespace detail {

// |sum F(n) e(alpha n)| over n (odd n only if requested).
inline double linear_sum(const ScaledFn& F, double alpha, bool odd_only) {
  KahanComplex acc;
  for (i64 n = F.n_lo(); n <= F.n_hi(); ++n) {
    if (odd_only && (n % 2 == 0)) continue;
    acc.add(F(static_cast<double>(n)) * e_mul(alpha, static_cast<double>(n)));
  }
  return std::abs(acc.value());
}

inline double sin_pi_dist(double t) { return std::sin(kPi * dist_to_int(t)); }

}  // namespace detail

// (f0): |sum F(n) - integral F| <= ||F'||_1 / 2.
inline InequalityCheck f0_check(const ScaledFn& F) {
  KahanSum s;
  for (i64 n = F.n_lo(); n <= F.n_hi(); ++n) s.add(F(static_cast<double>(n)));
  return make_check("lo (f0)", std::fabs(s.value() - F.integral()), 0.5 * F.deriv_norm(1));
}

// k = 0 is (f1); k >= 1 is (fk).
inline InequalityCheck poisson_bounds_check(const ScaledFn& F, double alpha, int k) {
  require(k >= 0 && k <= 2, "poisson_bounds_check: k in {0,1,2}");
  const double lhs = detail::linear_sum(F, alpha, false);
  if (k == 0) return make_check("lo (f1)", lhs, F.l1() + 0.5 * F.deriv_norm(1));
  const double den = std::pow(2 * detail::sin_pi_dist(alpha), k);
  return make_check("lo (fk)", lhs, ratio_or_inf(F.deriv_norm(k), den));
}

// Odd-n variant with the factor 2 saved.
inline InequalityCheck odd_restricted_check(const ScaledFn& F, double alpha, int k) {
  require(k >= 0 && k <= 2, "odd_restricted_check: k in {0,1,2}");
  const double lhs = detail::linear_sum(F, alpha, true);
  if (k == 0) return make_check("googly", lhs, 0.5 * F.l1() + 0.5 * F.deriv_norm(1));
  const double den = 2 * std::pow(detail::sin_pi_dist(2 * alpha), k);
  return make_check("googly", lhs, ratio_or_inf(F.deriv_norm(k), den));
}

// sum_{x<n<=y} min(A, B/|sin(pi alpha n + theta)|), theta in radians.
// The approximation is of alpha, or of 2 alpha when odd_only.
inline InequalityCheck vinogradov_sum(double alpha, const RationalApprox& ap, double x, double y, double A,
                                      double B, double theta, bool odd_only) {
  require(x < y, "vinogradov_sum: x < y");
  require(A > 0 && B >= 0, "vinogradov_sum: A > 0, B >= 0");
  const double q = static_cast<double>(ap.q);
  KahanSum s;
  for (i64 n = static_cast<i64>(std::floor(x)) + 1; static_cast<double>(n) <= y; ++n) {
    if (odd_only && (n % 2 == 0)) continue;
    const double sn = std::fabs(std::sin(kPi * frac_mul(alpha, static_cast<double>(n)) + theta));
    s.add(std::min(A, ratio_or_inf(B, sn)));
  }
  const double blocks = std::floor((y - x) / (odd_only ? 2 * q : q)) + 1;
  auto c = make_check(odd_only ? "vino-2" : "vino", s.value(),
                      blocks * (2 * A + (2 / kPi) * B * q * std::log(4 * q)));
  const double target = odd_only ? 2 * alpha : alpha;
  const double beta = target - static_cast<double>(ap.a) / q;
  add_hypothesis(c, "q >= 1", ap.q >= 1);
  add_hypothesis(c, "gcd(a,q) = 1", std::gcd(ap.a, ap.q) == 1);
  add_hypothesis(c, "|beta| <= 1/q^2", std::fabs(beta) <= 1 / (q * q) * (1 + 1e-12));
  return c;
}

// sum_i |sum_{n in I} a_n e(xi_i n)|^2 <= (|I| + 1/delta) ||a||^2, with a[k]
// attached to n = ceil(N1) + k.
inline InequalityCheck large_sieve_check(const std::vector<double>& xi, double N1, double N2,
                                         const std::vector<cplx>& a) {
  double delta = 1.0;
  for (std::size_t i = 0; i < xi.size(); ++i)
    for (std::size_t j = i + 1; j < xi.size(); ++j) delta = std::min(delta, dist_to_int(xi[i] - xi[j]));
  const i64 n0 = static_cast<i64>(std::ceil(N1));
  const i64 n1 = static_cast<i64>(std::floor(N2));
  require(static_cast<i64>(a.size()) == n1 - n0 + 1, "large_sieve_check: a must cover I");
  KahanSum lhs;
  for (double x : xi) {
    KahanComplex s;
    for (i64 k = 0; k < static_cast<i64>(a.size()); ++k) s.add(a[k] * e_mul(x, static_cast<double>(n0 + k)));
    lhs.add(std::norm(s.value()));
  }
  double a2 = 0;
  for (auto v : a) a2 += std::norm(v);
  auto c = make_check("large sieve", lhs.value(), (N2 - N1 + ratio_or_inf(1.0, delta)) * a2);
  add_hypothesis(c, "|I| >= 1", N2 - N1 >= 1);
  add_hypothesis(c, "points delta-separated", delta > 0);
  return c;
}

enum class BilinearVariant { Special, Odd, Subdivided };

// inf_{1 <= j <= J} ||m j alpha||.
inline double inf_multiple(double alpha, double mult, double J) {
  double best = kInf;
  for (i64 j = 1; static_cast<double>(j) <= J; ++j)
    best = std::min(best, dist_to_int(frac_mul(alpha * mult, static_cast<double>(j))));
  return best;
}

// a[k] sits at n = ceil(I1) + k, b[k] at m = ceil(J1) + k.
inline InequalityCheck bilinear_check(BilinearVariant v, double I1, double I2, double J1, double J2, double alpha,
                                      double M, const std::vector<cplx>& a, const std::vector<cplx>& b) {
  const i64 n0 = static_cast<i64>(std::ceil(I1));
  const i64 m0 = static_cast<i64>(std::ceil(J1));
  require(static_cast<i64>(a.size()) == static_cast<i64>(std::floor(I2)) - n0 + 1, "bilinear_check: a must cover I");
  require(static_cast<i64>(b.size()) == static_cast<i64>(std::floor(J2)) - m0 + 1, "bilinear_check: b must cover J");
  const bool odd = v != BilinearVariant::Special;
  KahanComplex tot;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const i64 n = n0 + static_cast<i64>(i);
    if (odd && n % 2 == 0) continue;
    KahanComplex inner;
    for (std::size_t k = 0; k < b.size(); ++k) {
      const i64 m = m0 + static_cast<i64>(k);
      if (odd && m % 2 == 0) continue;
      inner.add(b[k] * e_mul(alpha, static_cast<double>(n) * static_cast<double>(m)));
    }
    tot.add(a[i] * inner.value());
  }
  double a2 = 0, b2 = 0;
  for (auto z : a) a2 += std::norm(z);
  for (auto z : b) b2 += std::norm(z);
  const double I = I2 - I1, J = J2 - J1;
  double rhs;
  InequalityCheck c;
  switch (v) {
    case BilinearVariant::Special:
      rhs = std::sqrt(I + ratio_or_inf(1.0, inf_multiple(alpha, 1, J))) * std::sqrt(a2 * b2);
      c = make_check("sls", std::abs(tot.value()), rhs);
      add_hypothesis(c, "|I|,|J| >= 1", I >= 1 && J >= 1);
      break;
    case BilinearVariant::Odd:
      rhs = std::sqrt(0.5 * I + ratio_or_inf(1.0, inf_multiple(alpha, 4, 0.5 * J))) * std::sqrt(a2 * b2);
      c = make_check("sls-2", std::abs(tot.value()), rhs);
      add_hypothesis(c, "|I|,|J| >= 2", I >= 2 && J >= 2);
      break;
    case BilinearVariant::Subdivided:
      rhs = std::sqrt(0.5 * I + ratio_or_inf(1.0, inf_multiple(alpha, 4, M))) *
            std::sqrt(std::floor(J / (2 * M)) + 1) * std::sqrt(a2 * b2);
      c = make_check("sls-3", std::abs(tot.value()), rhs);
      add_hypothesis(c, "|I|,|J| >= 2", I >= 2 && J >= 2);
      add_hypothesis(c, "M >= 1", M >= 1);
      break;
  }
  return c;
}

// ---------------------------------------------------------------------------
// L^2 quantities.

struct Arc {
  double center = 0;
  double half_width = 0;
};

// Exact integral of |sum w_n e(n alpha)|^2 over a union of disjoint arcs:
// sum_{n,m} w_n w_m Re int e((n-m) alpha), with the kernel tabulated per gap.
inline double arcs_l2_exact(const PrimeWeights& pw, const std::vector<Arc>& arcs) {
  const auto& n = pw.n();
  const auto& w = pw.w();
  if (n.empty()) return 0.0;
  const std::size_t span = n.back() - n.front();
  std::vector<double> K(span + 1, 0.0);
  double len = 0;
  for (const auto& a : arcs) {
    len += 2 * a.half_width;
    for (std::size_t h = 1; h <= span; ++h) {
      const double hd = static_cast<double>(h);
      K[h] += e_mul(a.center, hd).real() * e_mul(a.half_width, hd).imag() / (kPi * hd);
    }
  }
  K[0] = len;
  KahanSum diag;
  for (double v : w) diag.add(v * v);
  double off = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    double row = 0;
    for (std::size_t j = i + 1; j < n.size(); ++j) row += w[j] * K[n[j] - n[i]];
    off += w[i] * row;
  }
  return diag.value() * len + 2 * off;
}

// Same integral by adaptive quadrature of |S|^2, panels sized to the
// oscillation count.
inline double arcs_l2_quadrature(const PrimeWeights& pw, const std::vector<Arc>& arcs, double rel_tol = 1e-8) {
  if (pw.size() == 0) return 0.0;
  const double span = static_cast<double>(pw.n().back());
  const double scale = pw.sum_squares();
  double total = 0;
  for (const auto& a : arcs) {
    const int panels = 1 + static_cast<int>(std::ceil(4 * a.half_width * span));
    auto f = [&](double t) { return std::norm(pw.eval(t).value); };
    total += quad::integrate_panels<double>(f, a.center - a.half_width, a.center + a.half_width, panels,
                                            rel_tol * scale * 2 * a.half_width, rel_tol);
  }
  return total;
}

// Riemann sum of |S|^2 over M equispaced nodes, exact once M > 2 max n.
inline double parseval_riemann(const PrimeWeights& pw, std::size_t M) {
  std::vector<cplx> c(M);
  for (std::size_t i = 0; i < pw.size(); ++i) c[pw.n()[i] % M] += pw.w()[i];
  const auto v = eval_on_grid(c);
  KahanSum s;
  for (const auto& z : v) s.add(std::norm(z));
  return s.value() / static_cast<double>(M);
}

inline InequalityCheck global_l2_check(const PrimeWeights& pw) {
  return make_check("global-l2", pw.sum_squares(), pw.total_eta_squared() * std::log(pw.spec().x));
}

// Every prime p <= bound is screened out by the SumSpec.
inline bool screens_primes_up_to(const SumSpec& spec, double bound) {
  if (bound < 2) return true;
  for (u64 p : arith::primes_up_to(static_cast<u64>(std::floor(bound))))
    if (spec.admits_prime(p)) return false;
  return true;
}

inline InequalityCheck montgomery_uncertainty_check(const PrimeWeights& pw, double alpha, u64 q0) {
  require(q0 >= 1, "montgomery_uncertainty_check: q0 >= 1");
  KahanSum lhs;
  for (u64 a = 0; a < q0; ++a) {
    if (std::gcd(a, q0) != 1) continue;
    lhs.add(std::norm(pw.eval(alpha + static_cast<double>(a) / static_cast<double>(q0)).value));
  }
  const int mu = arith::mobius(q0);
  const double rhs = (mu == 0 ? 0.0 : 1.0 / static_cast<double>(arith::euler_phi(q0))) *
                     std::norm(pw.eval(alpha).value);
  // Stated as lhs >= rhs; stored as -lhs <= -rhs.
  auto c = make_check("mup", rhs, lhs.value());
  // q0 = 2 on odd support is an identity; last-bit differences count as a tie.
  if (c.margin < 0 && -c.margin <= 1e-12 * rhs) c.margin = 0;
  bool divides = true;
  for (auto [p, e] : arith::factorize(q0)) divides = divides && !pw.spec().admits_prime(p);
  add_hypothesis(c, "q0 | q", divides);
  return c;
}

// G(R) = sum_{q <= R} mu^2(q)/phi(q).
inline double G_of(double R) {
  KahanSum s;
  for (u64 q = 1; static_cast<double>(q) <= R; ++q) {
    const int mu = arith::mobius(q);
    if (mu != 0) s.add(1.0 / static_cast<double>(arith::euler_phi(q)));
  }
  return s.value();
}

// Arcs a0/q0 +- 1/(2 Q^2 R^2) for q0 <= Q, (a0,q0) = 1.
inline std::vector<Arc> major_arcs(double Q, double R) {
  std::vector<Arc> arcs;
  const double hw = 1.0 / (2 * Q * Q * R * R);
  for (u64 q0 = 1; static_cast<double>(q0) <= Q; ++q0)
    for (u64 a0 = 0; a0 < q0; ++a0)
      if (std::gcd(a0, q0) == 1) arcs.push_back({static_cast<double>(a0) / static_cast<double>(q0), hw});
  return arcs;
}

inline InequalityCheck local_l2_bound(const PrimeWeights& pw, double Q, double R) {
  require(Q >= 1 && R >= 1, "local_l2_bound: Q, R >= 1");
  const double lhs = arcs_l2_exact(pw, major_arcs(Q, R));
  double prod = 1;
  for (u64 p : arith::primes_up_to(static_cast<u64>(std::floor(Q)))) prod *= double(p) / double(p - 1);
  const double rhs = prod * ratio_or_inf(std::log(pw.spec().x), std::log(R)) * pw.total_eta_squared();
  auto c = make_check("local-l2", lhs, rhs);
  add_hypothesis(c, "R# | q", screens_primes_up_to(pw.spec(), R));
  return c;
}

inline InequalityCheck uplow_check(const PrimeWeights& pw, double r) {
  const double x = pw.spec().x;
  const double lhs = arcs_l2_exact(pw, {{0.0, r}});
  const double rhs = 2.0 / (1 - std::log(2 * r * x) / std::log(x)) * pw.total_eta_squared();
  auto c = make_check("uplow", lhs, rhs);
  add_hypothesis(c, "0 < r < 1/2", r > 0 && r < 0.5);
  add_hypothesis(c, "sqrt(1/2r)# | q", screens_primes_up_to(pw.spec(), std::sqrt(1 / (2 * r))));
  return c;
}

// Lower bound from the (downlow) quotient.
inline double downlow_rhs(const PrimeWeights& pw, double r) {
  const auto nm = pw.spec().eta.norms();
  const double x = pw.spec().x;
  const double num = std::max(0.0, pw.total_eta_squared() - nm.l1_second_combo / (kPi * kPi * r * x) * pw.total());
  return num * num / (nm.l2sq * x + nm.l1_self_deriv);
}

inline InequalityCheck l2_lower_bound(const PrimeWeights& pw, double r) {
  require(r >= 0 && r <= 0.5, "l2_lower_bound: 0 <= r <= 1/2");
  const double lhs = r >= 0.5 ? pw.sum_squares() : arcs_l2_exact(pw, {{0.0, r}});
  auto c = make_check("downlow", downlow_rhs(pw, r), lhs);
  add_hypothesis(c, "0 <= r <= 1/2", true);
  return c;
}

// Hypotheses (c8), (neat), (alamo), (10q), (r0b) of the cleaned-up corollary,
// for a cutoff already normalised to unit L^2 norm.
inline std::vector<InequalityCheck> downlow2_hypotheses(double x, const CutoffNorms& nm, double c, double r) {
  std::vector<InequalityCheck> v;
  v.push_back(make_check("downlow-2 (c8)", 1e8, c * x));
  v.push_back(make_check("downlow-2 (neat)", 1e4 * nm.l1_self_deriv, x));
  v.push_back(make_check("downlow-2 (alamo)", 5 * nm.l1_self_deriv, std::log(c * x)));
  v.push_back(make_check("downlow-2 (10q)", 1e8 * std::pow(nm.linf, 4), x));
  v.push_back(make_check("downlow-2 (r0b)", 20 * nm.l1_second_combo * nm.linf, r * x));
  v.push_back(make_check("downlow-2 (range of r)", 1 / (2 * x), r));
  return v;
}

// (error) term of the mesoscopic estimate.
inline double meso_epsilon(double x, double H) {
  const double ll = std::log(std::log(2 * H));
  const double egamma = std::exp(std::numbers::egamma);
  return 0.13 * std::log(x) / H + (egamma * ll + 2.507 / ll) * std::log(9 * H) / (2 * H);
}

// sum_{h,h' <= H} sum_n a_n a_{n+h'-h}: each pair at gap d < H counts H - d times.
inline double meso_lhs_double_sum(const PrimeWeights& pw, double H) {
  const double Hn = std::floor(H);
  const auto& n = pw.n();
  const auto& w = pw.w();
  KahanSum s;
  s.add(Hn * pw.sum_squares());
  for (std::size_t i = 0; i < n.size(); ++i) {
    for (std::size_t j = i + 1; j < n.size(); ++j) {
      const double d = static_cast<double>(n[j] - n[i]);
      if (d >= Hn) break;
      s.add(2 * (Hn - d) * w[i] * w[j]);
    }
  }
  return s.value();
}

// The same integral as a Riemann sum of |S|^2 |D_H|^2 on M > 2(max n + H) nodes.
inline double meso_lhs_riemann(const PrimeWeights& pw, double H) {
  const double Hn = std::floor(H);
  const std::size_t M = pow2_at_least(2 * (static_cast<std::size_t>(pw.n().empty() ? 0 : pw.n().back()) +
                                           static_cast<std::size_t>(Hn)) + 1);
  std::vector<cplx> c(M);
  for (std::size_t i = 0; i < pw.size(); ++i) c[pw.n()[i]] += pw.w()[i];
  const auto v = eval_on_grid(c);
  KahanSum s;
  for (std::size_t j = 0; j < M; ++j) {
    const double a = static_cast<double>(j) / static_cast<double>(M);
    s.add(std::norm(v[j]) * std::norm(dirichlet_kernel(Hn, a)));
  }
  return s.value() / static_cast<double>(M);
}

inline InequalityCheck meso_bound(const PrimeWeights& pw, double H) {
  const double x = pw.spec().x;
  const double linf = pw.spec().eta.norms().linf;
  const double rhs = (1 + meso_epsilon(x, H)) * 8 * H * H * x * linf * linf;
  auto c = make_check("meso", meso_lhs_double_sum(pw, H), rhs);
  add_hypothesis(c, "H >= 100", H >= 100);
  add_hypothesis(c, "q = sqrt(x)#", screens_primes_up_to(pw.spec(), std::sqrt(x)));
  return c;
}

// Twin prime constant from the Euler product over p <= P; the tail lies in
// [1 - 1/(P-1), 1], so the returned interval contains the constant.
struct Interval {
  double lo = 0, hi = 0;
};

inline Interval twin_prime_constant(u64 P) {
  KahanSum logs;
  arith::for_each_prime(3, P, [&](u64 p) {
    const double pm = static_cast<double>(p - 1);
    logs.add(std::log1p(-1.0 / (pm * pm)));
  });
  const double partial = 2 * std::exp(logs.value());
  return {partial * (1 - 1.0 / static_cast<double>(P - 1)), partial};
}

// #{p <= x : p + h prime, p + h <= x} against Siebert's bound.
inline InequalityCheck siebert_empirical(u64 x, i64 h, double twin_const = 1.3203236316937391) {
  require(x <= 100000000ULL, "siebert_empirical: x <= 1e8");
  require(h != 0, "siebert_empirical: h != 0");
  const u64 ah = static_cast<u64>(h < 0 ? -h : h);
  std::vector<bool> comp(x + 1, false);
  comp[0] = true;
  if (x >= 1) comp[1] = true;
  for (u64 i = 2; i * i <= x; ++i)
    if (!comp[i])
      for (u64 j = i * i; j <= x; j += i) comp[j] = true;
  u64 count = 0;
  for (u64 p = 2; p <= x; ++p) {
    if (comp[p]) continue;
    const i64 m = static_cast<i64>(p) + h;
    if (m >= 2 && static_cast<u64>(m) <= x && !comp[static_cast<u64>(m)]) ++count;
  }
  double prod = 1;
  for (auto [p, e] : arith::factorize(ah))
    if (p > 2) prod *= double(p - 1) / double(p - 2);
  const double lx = std::log(static_cast<double>(x));
  auto c = make_check("meso (Siebert)", static_cast<double>(count),
                      8 * twin_const * static_cast<double>(x) / (lx * lx) * prod);
  add_hypothesis(c, "h even", ah % 2 == 0);
  return c;
}

// Randomized suites: many independent instances, reporting the worst margin.
struct SuiteResult {
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::size_t skipped = 0;  // hypotheses failed
  double min_margin = kInf;  // relative to the rhs
  std::string worst;
};

inline void suite_add(SuiteResult& r, const InequalityCheck& c, const std::string& where) {
  ++r.trials;
  if (!c.hypotheses_ok) {
    ++r.skipped;
    return;
  }
  if (c.violated()) ++r.violations;
  const double rel = std::isinf(c.rhs) ? kInf : c.margin / std::max(std::fabs(c.rhs), 1e-300);
  if (rel < r.min_margin) {
    r.min_margin = rel;
    r.worst = where;
  }
}

inline SuiteResult large_sieve_suite(std::size_t trials, u64 seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  SuiteResult r;
  for (std::size_t t = 0; t < trials; ++t) {
    const double N1 = std::floor(U(rng) * 1000);
    const double len = 1 + std::floor(U(rng) * 300);
    std::vector<double> xi;
    if (t % 3 == 0) {
      // Farey points a/q, q <= Q: separation at least 1/Q^2.
      const int Q = 2 + static_cast<int>(U(rng) * 12);
      for (int q = 1; q <= Q; ++q)
        for (int a = 0; a < q; ++a)
          if (std::gcd(a, q) == 1) xi.push_back(static_cast<double>(a) / q);
    } else {
      const int R = 2 + static_cast<int>(U(rng) * 60);
      for (int i = 0; i < R; ++i) xi.push_back(U(rng));
    }
    std::vector<cplx> a(static_cast<std::size_t>(len) + 1);
    for (auto& v : a) v = {U(rng) * 2 - 1, U(rng) * 2 - 1};
    suite_add(r, large_sieve_check(xi, N1, N1 + len, a),
              "trial " + std::to_string(t) + " seed " + std::to_string(seed));
  }
  return r;
}

inline SuiteResult vinogradov_suite(std::size_t trials, u64 seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  SuiteResult r;
  for (std::size_t t = 0; t < trials; ++t) {
    const i64 q = 1 + static_cast<i64>(U(rng) * 200);
    i64 a = static_cast<i64>(U(rng) * static_cast<double>(q));
    while (std::gcd(a, q) != 1) ++a;
    const bool odd = t % 2 == 1;
    const double qd = static_cast<double>(q);
    const double beta = (2 * U(rng) - 1) / (qd * qd) * 0.999;
    const double target = static_cast<double>(a) / qd + beta;
    const double alpha = odd ? target / 2 : target;
    const double x = std::floor(U(rng) * 1e4);
    const double y = x + 1 + std::floor(U(rng) * 5000);
    const double A = 0.1 + U(rng) * 100, B = U(rng) * 10, theta = U(rng) * kPi;
    RationalApprox ap;
    ap.a = a;
    ap.q = q;
    ap.beta = beta;
    ap.target = target;
    suite_add(r, vinogradov_sum(alpha, ap, x, y, A, B, theta, odd),
              "trial " + std::to_string(t) + " seed " + std::to_string(seed));
  }
  return r;
}

}  // namespace circle::est
