#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "circle/circle.hpp"

using namespace circle;
using json = nlohmann::json;

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kUsage = 2, kResource = 3 };

std::string g_repro;

int finish(const json& report, bool ok, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream f(out);
    f << report.dump(2) << "\n";
  }
  if (!ok) std::cerr << "check failed; reproduce with:\n  " << g_repro << "\n";
  return ok ? kPass : kCheckFailed;
}

json check_json(const InequalityCheck& c) {
  json h = json::array();
  for (const auto& [n, ok] : c.hypotheses) h.push_back({{"name", n}, {"ok", ok}});
  return {{"anchor", c.anchor}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"margin", c.margin},
          {"hypotheses_ok", c.hypotheses_ok}, {"hypotheses", h}, {"holds", c.holds()}};
}

CutoffFn cutoff_by_name(const std::string& s) {
  if (s == "eta0") return CutoffFn::eta0();
  if (s == "eta1") return CutoffFn::eta1();
  if (s == "indicator") return CutoffFn::indicator01();
  throw PreconditionError("unknown cutoff: " + s);
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) g_repro += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"circle: exponential sums over primes and the five-primes pipeline"};
  app.require_subcommand(1);
  std::string out = "-";
  app.add_option("--out", out, "report path (default stdout)");

  // sieve
  auto* sieve = app.add_subcommand("sieve", "arithmetic tables and psi");
  double s_lo = 1, s_hi = 1e6;
  std::string s_dump;
  sieve->add_option("--lo", s_lo);
  sieve->add_option("--hi", s_hi);
  sieve->add_option("--dump", s_dump, "write a binary table");

  // expsum
  auto* expsum = app.add_subcommand("expsum", "evaluate S_{eta,q}(x, alpha)");
  double e_x = 1e5, e_alpha = 0;
  std::string e_eta = "eta0", e_csv;
  u64 e_q0 = 1;
  int e_grid = 0;
  expsum->add_option("--x", e_x);
  expsum->add_option("--alpha", e_alpha);
  expsum->add_option("--eta", e_eta)->check(CLI::IsMember({"eta0", "eta1", "indicator"}));
  expsum->add_option("--q0", e_q0);
  expsum->add_option("--csv", e_csv, "write |S| on a uniform alpha grid");
  expsum->add_option("--grid", e_grid, "grid size for --csv");

  // lemmas
  auto* lemmas = app.add_subcommand("lemmas", "randomized large-sieve and Vinogradov suites");
  std::size_t l_trials = 200;
  u64 l_seed = 1;
  lemmas->add_option("--trials", l_trials);
  lemmas->add_option("--seed", l_seed);

  // vaughan
  auto* vaughan = app.add_subcommand("vaughan", "identity and Type I/II decomposition");
  double v_x = 1e5, v_alpha = 0.1, v_U = 40, v_V = 40;
  u64 v_identity = 0;
  vaughan->add_option("--x", v_x);
  vaughan->add_option("--alpha", v_alpha);
  vaughan->add_option("--U", v_U);
  vaughan->add_option("--V", v_V);
  vaughan->add_option("--identity", v_identity, "check the identity pointwise up to N instead");

  // bounds
  auto* bnd = app.add_subcommand("bounds", "minor-arc bound evaluators");
  bnd->require_subcommand(1);
  auto* b_check = bnd->add_subcommand("check", "evaluate one regime at (x, q)");
  std::string b_x = "1e20", b_q = "1e4", b_regime = "Sax";
  b_check->add_option("--x", b_x);
  b_check->add_option("--q", b_q);
  b_check->add_option("--regime", b_regime);
  auto* b_desk = bnd->add_subcommand("desk", "compare the strong-minor bound with the true sum");
  double bd_x = 1e5, bd_alpha = 0.025;
  b_desk->add_option("--x", bd_x);
  b_desk->add_option("--alpha", bd_alpha);
  auto* b_chain = bnd->add_subcommand("chain", "specialisation chain on a log grid");
  std::string bc_lo = "1e20", bc_hi = "1e100";
  double bc_density = 20;
  int bc_q = 6;
  b_chain->add_option("--regime", b_regime);
  b_chain->add_option("--x-lo", bc_lo);
  b_chain->add_option("--x-hi", bc_hi);
  b_chain->add_option("--per-decade", bc_density);
  b_chain->add_option("--q-points", bc_q);

  // majorarc
  auto* major = app.add_subcommand("majorarc", "explicit formula and major-arc residual");
  double m_x = 1e5, m_alpha = 0;
  std::string m_eta = "eta1", m_zeros;
  std::size_t m_count = 0;
  major->add_option("--x", m_x);
  major->add_option("--alpha", m_alpha);
  major->add_option("--eta", m_eta)->check(CLI::IsMember({"eta0", "eta1"}));
  major->add_option("--zeros", m_zeros, "zero table (default: CIRCLE_ZEROS or the bundled table)");
  major->add_option("--count", m_count, "use only the first N zeros");

  // goldbach
  auto* gb = app.add_subcommand("goldbach", "verify even Goldbach up to --max");
  double g_max = 1e6;
  std::string g_ck;
  bool g_resume = false;
  gb->add_option("--max", g_max);
  gb->add_option("--checkpoint", g_ck);
  gb->add_flag("--resume", g_resume);

  // gap
  auto* gap = app.add_subcommand("gap", "prime in (x - x/2.8e7, x]");
  u64 gp_x = 0;
  std::size_t gp_random = 0;
  u64 gp_seed = 1;
  gap->add_option("--x", gp_x);
  gap->add_option("--random", gp_random, "check N random x in [1.1e10, 1e12]");
  gap->add_option("--seed", gp_seed);

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "desk-scale five-primes quantity");
  bool p_desk = false;
  u64 p_x = 100001, p_N0s = 300;
  double p_K = 10;
  std::string p_config;
  pipe->add_flag("--desk", p_desk);
  pipe->add_option("--x", p_x);
  pipe->add_option("--K", p_K);
  pipe->add_option("--N0s", p_N0s);
  pipe->add_option("--config", p_config, "JSON config (keys: version, x, K, N0, T0, N_T0, zero_table, ...)");

  // ledger
  auto* ledger = app.add_subcommand("ledger", "constants ledger at 50 digits");
  bool lg_paper = false;
  double lg_density = 2;
  ledger->add_flag("--paper-constants", lg_paper);
  ledger->add_option("--per-decade", lg_density);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  }

  try {
    if (*sieve) {
      const auto t = arith::sieve(static_cast<u64>(s_lo), static_cast<u64>(s_hi));
      u64 primes = 0;
      double psi = 0;
      for (u64 n = t.lo; n <= t.hi; ++n) {
        primes += t.prime(n);
        psi += t.Lambda(n);
      }
      if (!s_dump.empty()) {
        std::ofstream f(s_dump, std::ios::binary);
        arith::dump(t, f);
      }
      return finish({{"lo", t.lo}, {"hi", t.hi}, {"primes", primes}, {"psi_partial", psi}}, true, out);
    }
    if (*expsum) {
      SumSpec spec{e_x, cutoff_by_name(e_eta), e_q0, 0};
      PrimeWeights pw(spec);
      if (!e_csv.empty()) {
        std::vector<double> as;
        for (int i = 0; i < std::max(1, e_grid); ++i) as.push_back(static_cast<double>(i) / std::max(1, e_grid));
        std::ofstream f(e_csv);
        write_csv(f, pw, as);
      }
      const cplx v = pw.eval(e_alpha).value;
      return finish({{"x", e_x}, {"alpha", e_alpha}, {"eta", e_eta}, {"q0", e_q0}, {"re", v.real()},
                     {"im", v.imag()}, {"abs", std::abs(v)}, {"terms", pw.size()}},
                    true, out);
    }
    if (*lemmas) {
      const auto ls = est::large_sieve_suite(l_trials, l_seed);
      const auto vs = est::vinogradov_suite(l_trials, l_seed);
      auto js = [](const est::SuiteResult& r) {
        return json{{"trials", r.trials}, {"violations", r.violations}, {"skipped", r.skipped},
                    {"min_rel_margin", r.min_margin}, {"worst", r.worst}};
      };
      const bool ok = ls.violations == 0 && vs.violations == 0 && ls.min_margin >= 0 && vs.min_margin >= 0;
      return finish({{"large_sieve", js(ls)}, {"vinogradov", js(vs)}}, ok, out);
    }
    if (*vaughan) {
      if (v_identity) {
        const auto r = vaughan::vaughan_identity_check(v_identity, v_U, v_V);
        return finish({{"max_deviation", r.max_deviation}, {"worst_n", r.worst_n}, {"check", check_json(r.check)}},
                      r.check.holds(), out);
      }
      const auto d = vaughan::decompose(v_x, v_alpha, {v_U, v_V});
      return finish({{"lhs", d.lhs}, {"T_I", d.T_I}, {"T_II", d.T_II}, {"identity_residual", d.identity_residual},
                     {"check", check_json(d.check)}},
                    !d.check.violated(), out);
    }
    if (*bnd) {
      using bounds::mp;
      if (*b_check) {
        const auto r = bounds::parse_regime(b_regime);
        const mp x(b_x), q(b_q);
        json j{{"x", b_x}, {"q", b_q}, {"regime", b_regime}};
        if (r == bounds::Regime::ChenWang) {
          j["bound"] = bounds::bound_chen_wang(x, q).str(20);
          return finish(j, true, out);
        }
        j["bound"] = bounds::bound_theorem12(x, q, r).str(20);
        const auto c = bounds::derivation_chain_check(x, q, r);
        j["chain"] = check_json(c);
        return finish(j, c.holds(), out);
      }
      if (*b_desk) {
        PrimeWeights pw(SumSpec{bd_x, CutoffFn::eta0(), 2, 0});
        const auto r = bounds::verify_bound_at_desk(pw, bd_alpha);
        json h = json::array();
        for (const auto& [n, ok] : r.hypotheses) h.push_back({{"name", n}, {"ok", ok}});
        return finish({{"bound", r.bound}, {"actual", r.actual}, {"margin", r.margin}, {"q", r.approx.q},
                       {"a", r.approx.a}, {"beta", r.approx.beta}, {"U", r.U}, {"V", r.V}, {"hypotheses", h}},
                      !r.hypotheses_ok() || r.margin >= 0, out);
      }
      const auto r = bounds::parse_regime(b_regime);
      const auto s = bounds::derivation_chain_grid(r, mp(bc_lo), mp(bc_hi), bc_density, bc_q, true);
      return finish({{"regime", b_regime}, {"points", s.points}, {"violations", s.violations},
                     {"hypothesis_failures", s.hypothesis_failures}, {"min_rel_margin", s.min_margin},
                     {"worst", s.worst}},
                    s.violations == 0 && s.hypothesis_failures == 0, out);
    }
    if (*major) {
      auto zeros = major::load_zeros(m_zeros.empty() ? major::default_zero_path() : m_zeros);
      if (m_count) zeros = zeros.prefix(m_count);
      const auto eta = cutoff_by_name(m_eta);
      const auto r = major::major_arc_eval(m_x, m_alpha, eta, zeros);
      json j{{"x", m_x},       {"alpha", m_alpha}, {"eta", m_eta}, {"T0", r.T0},         {"zeros", r.zero_count},
             {"residual", r.residual}, {"bound", r.bound}, {"A", r.a_const}, {"check", check_json(r.check)}};
      if (m_alpha == 0) {
        const auto ef = major::explicit_formula(eta, m_x, zeros);
        j["explicit_formula"] = ef.value.real();
        j["direct"] = r.s_value.real();
        j["explicit_residual"] = std::abs(ef.value - r.s_value);
      }
      return finish(j, r.check.holds(), out);
    }
    if (*gb) {
      harness::GoldbachOptions o;
      o.checkpoint = g_ck;
      o.resume = g_resume;
      const auto s = harness::goldbach_verify(static_cast<u64>(g_max), o);
      return finish(harness::to_json(s), s.complete && s.exceptions == 0, out);
    }
    if (*gap) {
      std::vector<u64> xs;
      if (gp_x) xs.push_back(gp_x);
      std::mt19937_64 rng(gp_seed);
      std::uniform_int_distribution<u64> d(11000000000ull, 1000000000000ull);
      for (std::size_t i = 0; i < gp_random; ++i) xs.push_back(d(rng));
      if (xs.empty()) throw PreconditionError("gap: give --x or --random");
      std::size_t fails = 0;
      double worst = kInf;
      for (u64 x : xs) {
        const auto r = harness::prime_gap_check(x);
        if (!(r.margin >= 0)) ++fails;
        worst = std::min(worst, r.margin / r.bound);
      }
      return finish({{"checked", xs.size()}, {"failures", fails}, {"min_rel_margin", worst}}, fails == 0, out);
    }
    if (*pipe) {
      if (!p_config.empty()) {
        const auto cfg = harness::load_config(p_config);
        p_desk = p_desk || cfg.desk;
        if (cfg.x > 0) p_x = static_cast<u64>(cfg.x);
      }
      if (!p_desk) throw PreconditionError("pipeline: only --desk mode evaluates sums; use `ledger` for the printed constants");
      const auto q = harness::quant_positive(p_x, p_K, p_N0s);
      return finish({{"mode", "desk"}, {"x", p_x}, {"K", p_K}, {"N0s", p_N0s}, {"H", q.H}, {"direct", q.direct},
                     {"integral", q.integral}, {"rel_diff", q.rel_diff}, {"positive", q.positive}},
                    q.positive && q.rel_diff <= 1e-6, out);
    }
    if (*ledger) {
      harness::PipelineConfig cfg;
      const auto L = harness::constants_ledger(cfg, lg_density);
      json j = harness::to_json(L);
      j["paper_constants"] = lg_paper;
      j["thresholds"] = {harness::threshold_chain(cfg).bullet1, harness::threshold_chain(cfg).bullet2,
                         harness::threshold_chain(cfg).bullet3};
      return finish(j, L.all_pass(), out);
    }
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const PreconditionError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const IngestError& e) {
    std::cerr << "input: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
