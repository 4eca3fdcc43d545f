#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "circle/arith.hpp"
#include "circle/core.hpp"
#include "circle/cutoffs.hpp"
#include "circle/expsum.hpp"

namespace circle::vaughan {

struct Params {
  double U = 40;
  double V = 40;
};

struct TypeIIWeight {
  u64 w = 1;
  double value = 0;
};

// g(w) = sum_{b | w, b > V} Lambda(b) - (1/2) log w.
inline TypeIIWeight g_weight(u64 w, double V) {
  require(w >= 1, "g_weight: w >= 1");
  double s = 0;
  for (auto [p, e] : arith::factorize(w)) {
    double pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= static_cast<double>(p);
      if (pk > V) s += std::log(static_cast<double>(p));
    }
  }
  return {w, s - 0.5 * std::log(static_cast<double>(w))};
}

struct IdentityReport {
  double max_deviation = 0;
  u64 worst_n = 0;
  InequalityCheck check;
};

// Pointwise Lambda = mu1_{<=U}*log - mu1_{<=U}*Lambda1_{<=V}*1
//                    + mu1_{>U}*Lambda1_{>V}*1 + Lambda1_{<=V} on [1, n_max].
inline IdentityReport vaughan_identity_check(u64 n_max, double U, double V) {
  require(n_max >= 1 && n_max <= 1000000, "vaughan_identity_check: 1 <= n_max <= 1e6");
  require(U >= 1 && V >= 1, "vaughan_identity_check: U, V >= 1");
  const auto t = arith::sieve(1, n_max);
  const std::size_t N = n_max;
  auto Lam = [&](u64 n) { return t.Lambda(n); };
  std::vector<double> small(N + 1, 0.0), large(N + 1, 0.0);  // Lambda1_{<=V}*1, Lambda1_{>V}*1
  for (u64 b = 2; b <= N; ++b) {
    const double l = Lam(b);
    if (l == 0) continue;
    auto& tgt = static_cast<double>(b) <= V ? small : large;
    for (u64 m = b; m <= N; m += b) tgt[m] += l;
  }
  std::vector<double> rhs(N + 1, 0.0);
  for (u64 d = 1; d <= N; ++d) {
    const int mu = t.mu(d);
    if (mu == 0) continue;
    const bool le_u = static_cast<double>(d) <= U;
    for (u64 k = 1, n = d; n <= N; ++k, n += d) {
      if (le_u)
        rhs[n] += mu * (std::log(static_cast<double>(k)) - small[k]);
      else
        rhs[n] += mu * large[k];
    }
  }
  IdentityReport r;
  for (u64 n = 1; n <= N; ++n) {
    const double l = Lam(n);
    const double total = rhs[n] + (static_cast<double>(n) <= V ? l : 0.0);
    const double dev = std::fabs(total - l);
    if (dev > r.max_deviation) {
      r.max_deviation = dev;
      r.worst_n = n;
    }
  }
  r.check = make_check("vaughan identity", r.max_deviation, 1e-9);
  return r;
}

struct Decomposition {
  double lhs = 0;               // |sum Lambda(n) F(n)|
  double T_I = 0;
  double T_II = 0;
  double T_II_classical = 0;    // with g(w) + (1/2) log w
  double boundary_mass = 0;     // sum_{U<d<=UV} (1/2)|sum_w mu(d) log w F(dw)|
  double identity_residual = 0; // |sum Lambda F - (Type I + Type II expansion)|
  std::vector<cplx> c_d;        // indexed by odd d <= UV, in order
  InequalityCheck check;
  InequalityCheck classical_check;  // |T_II| <= |T_II classical| + boundary mass
};

// F(n) = e(alpha n) eta0(n/x) 1_{(n,2)=1}.
inline Decomposition decompose(double x, double alpha, const Params& prm, double cap = 2e7) {
  require(x >= 8 && x <= cap, "decompose: 8 <= x <= cap");
  const double U = prm.U, V = prm.V;
  const CutoffFn eta = CutoffFn::eta0();
  const u64 X = static_cast<u64>(std::floor(x));
  auto F = [&](u64 n) -> cplx {
    if (n % 2 == 0) return {};
    const double e = eta(static_cast<double>(n) / x);
    return e == 0.0 ? cplx{} : e * e_mul(alpha, static_cast<double>(n));
  };
  Decomposition r;
  SumSpec spec{x, eta, 2, 0};
  const cplx direct = s_eval(spec, alpha, cap).value;
  r.lhs = std::abs(direct);

  const auto t = arith::sieve(1, X);
  const u64 n_lo = static_cast<u64>(std::ceil(x / 4));
  std::vector<cplx> Fv(X + 1);
  for (u64 n = n_lo; n <= X; ++n) Fv[n] = F(n);

  // Type I.
  const double UV = U * V;
  KahanSum ti;
  KahanComplex expansion;
  for (u64 d = 1; static_cast<double>(d) <= UV && d <= X; d += 2) {
    KahanComplex P, Q;
    for (u64 n = std::max<u64>(1, (n_lo + d - 1) / d); n * d <= X; ++n) {
      const cplx f = Fv[n * d];
      if (f == cplx{}) continue;
      P.add(std::log(static_cast<double>(n)) * f);
      Q.add(f);
    }
    const cplx p = P.value(), q = Q.value();
    const double ld = std::log(static_cast<double>(d));
    ti.add(std::abs(p) + ld * std::abs(q));
    cplx c{1, 0};
    if (std::abs(p) > 0 && std::abs(q) > 0) c = (p / std::abs(p)) * std::conj(q / std::abs(q));
    r.c_d.push_back(c);
    // Exact expansion: mu(d) P_d for d <= U, minus f(d) Q_d.
    if (static_cast<double>(d) <= U) expansion.add(static_cast<double>(t.mu(d)) * p);
    double fd = 0;
    for (auto [pr, e] : arith::factorize(d)) {
      u64 b = 1;
      for (int k = 1; k <= e; ++k) {
        b *= pr;
        if (static_cast<double>(b) <= V && static_cast<double>(d / b) <= U)
          fd += t.mu(d / b) * std::log(static_cast<double>(pr));
      }
    }
    expansion.add(-fd * q);
  }
  r.T_I = ti.value();

  // Type II via h(n) = sum_{dw = n, d > U, w > V} mu(d) g(w).
  const u64 wmax = static_cast<u64>(std::floor(x / U));
  std::vector<double> big(wmax + 1, 0.0);  // sum_{b|w, b>V} Lambda(b)
  for (u64 b = 2; b <= wmax; ++b) {
    if (static_cast<double>(b) <= V) continue;
    const double l = t.Lambda(b);
    if (l == 0) continue;
    for (u64 m = b; m <= wmax; m += b) big[m] += l;
  }
  KahanComplex t2, t2c;
  KahanSum boundary;
  for (u64 d = static_cast<u64>(std::floor(U)) + 1; d <= X; ++d) {
    if (d % 2 == 0) continue;
    const int mu = t.mu(d);
    if (mu == 0) continue;
    u64 w0 = std::max<u64>(static_cast<u64>(std::floor(V)) + 1, (n_lo + d - 1) / d);
    if (w0 % 2 == 0) ++w0;
    KahanComplex half;
    for (u64 w = w0; w * d <= X; w += 2) {
      const cplx f = Fv[w * d];
      if (f == cplx{}) continue;
      const double lw = std::log(static_cast<double>(w));
      t2.add(static_cast<double>(mu) * (big[w] - 0.5 * lw) * f);
      t2c.add(static_cast<double>(mu) * big[w] * f);
      half.add(static_cast<double>(mu) * 0.5 * lw * f);
    }
    boundary.add(std::abs(half.value()));
  }
  r.T_II = std::abs(t2.value());
  r.T_II_classical = std::abs(t2c.value());
  r.boundary_mass = boundary.value();
  expansion.add(t2c.value());
  r.identity_residual = std::abs(expansion.value() - direct);

  r.check = make_check("vaughan-lemma", r.lhs, r.T_I + r.T_II);
  add_hypothesis(r.check, "UV <= x/4", UV <= x / 4);
  add_hypothesis(r.check, "UV^2 >= x", U * V * V >= x);
  add_hypothesis(r.check, "U, V >= 40", U >= 40 && V >= 40);
  r.classical_check = make_check("vaughan-lemma (classical Type II)", r.T_II, r.T_II_classical + r.boundary_mass);
  return r;
}

}  // namespace circle::vaughan
