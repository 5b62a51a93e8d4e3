#pragma once

// Randomized invariant suites for every module, runnable from the CLI.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "logint/corpus.hpp"
#include "logint/fnorm.hpp"
#include "logint/json_io.hpp"
#include "logint/nevanlinna.hpp"
#include "logint/operator_space.hpp"
#include "logint/sampling.hpp"
#include "logint/step_function.hpp"
#include "logint/witnesses.hpp"

namespace logint::selftest {

struct CheckResult {
  std::string suite;
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_excess = 0.0;  // largest violation amount seen

  bool passed() const noexcept { return trials > 0 && failures == 0; }
};

/// Counts trials of one invariant. `lhs <= rhs + slack` style checks pass the
/// violation amount so the report can show how far off the worst case was.
class Tally {
 public:
  Tally(std::string suite, std::string name) : r_{std::move(suite), std::move(name)} {}

  void expect(bool ok, double excess = 0.0) {
    ++r_.trials;
    if (!ok) {
      ++r_.failures;
      r_.worst_excess = std::max(r_.worst_excess, excess);
    }
  }

  void expect_le(double lhs, double rhs, double slack) { expect(lhs <= rhs + slack, lhs - rhs); }

  CheckResult result() const { return r_; }

 private:
  CheckResult r_;
};

struct Options {
  std::uint64_t seed = 20150910;
  int step_trials = 2000;
  int matrix_trials = 300;
  int max_level = 12;
};

inline std::vector<CheckResult> core_suite(const Options& opt) {
  sampling::Rng rng(opt.seed);
  const char* s = "core_fnorm";
  Tally positive(s, "positivity"), scaling(s, "scaling monotonicity"), vanish(s, "scaling continuity at 0"),
      triangle(s, "triangle inequality"), k_bound(s, "||Kf|| <= max(K,1)||f||"), product(s, "||fg|| <= ||f||+||g||"),
      dominated(s, "|g|<=|h| => ||fg|| <= ||fh||"), orlicz_lo(s, "orlicz < 1 => lognorm <= orlicz"),
      orlicz_hi(s, "lognorm <= 1/N^2 => orlicz < 1/N"), l1(s, "lognorm <= l1norm"),
      km(s, "l1(f_M) <= K_M lognorm(f_M)"), density(s, "truncation distance nonincreasing, reaches 0"),
      rearr(s, "rearrangement preserves lognorm"), cont(s, "continuity of multiplication");

  for (int t = 0; t < opt.step_trials; ++t) {
    const double total = (t % 3 == 0) ? infinite_measure : 1.0;
    const StepFunction f = sampling::random_step_function(rng, total);
    const StepFunction g = sampling::random_step_function(rng, total);
    const double nf = lognorm(f), ng = lognorm(g);

    if (!f.is_zero()) positive.expect(nf > 0.0);
    const double alpha = sampling::uniform(rng, -1.0, 1.0);
    scaling.expect_le(lognorm(f.scaled(alpha)), nf, 1e-12);
    vanish.expect(lognorm(f.scaled(std::ldexp(1.0, -60))) <= std::ldexp(1.0, -60) * l1norm(f) + 1e-300);
    triangle.expect_le(lognorm(f + g), nf + ng, 1e-12);

    const double K = std::pow(10.0, sampling::uniform(rng, -2.0, 2.0));
    k_bound.expect_le(lognorm(f.scaled(K)), std::max(K, 1.0) * nf, 1e-12);
    product.expect_le(lognorm(f * g), nf + ng, 1e-12);
    // h dominates g pointwise: |h| = |g| + |bump|.
    const StepFunction bump = sampling::random_step_function(rng, total);
    const Refinement r = common_refinement(g, bump);
    std::vector<Complex> hv(r.cells());
    for (std::size_t c = 0; c < r.cells(); ++c) hv[c] = std::abs(r.values[0][c]) + std::abs(r.values[1][c]);
    const StepFunction h = from_refinement(r, hv, total);
    dominated.expect_le(lognorm(f * g), lognorm(f * h), 1e-12);

    const double phi = orlicz_fnorm(f);
    if (phi < 1.0) orlicz_lo.expect_le(nf, phi, 1e-10);
    if (!f.is_zero()) {
      const int N = sampling::uniform_int(rng, 2, 10);
      // Scale so lognorm = 1/N^2 by bisection on the scale factor.
      double lo = 0.0, hi = 1.0;
      const double target = 1.0 / (N * N);
      while (lognorm(f.scaled(hi)) < target) hi *= 2.0;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (lognorm(f.scaled(mid)) <= target ? lo : hi) = mid;
      }
      const StepFunction fN = f.scaled(lo);
      if (lognorm(fN) <= target) orlicz_hi.expect(orlicz_fnorm(fN) < 1.0 / N, orlicz_fnorm(fN) - 1.0 / N);
    }

    l1.expect_le(nf, l1norm(f), 1e-12);
    const double M = std::pow(10.0, sampling::uniform(rng, -2.0, 3.0));
    const StepFunction fM = truncate(f, M);
    km.expect_le(l1norm(fM), l1_log_constant(M) * lognorm(fM), 1e-12 * (1.0 + l1norm(fM)));

    double prev = infinite_measure;
    bool mono = true;
    double last = 0.0;
    for (double cut = 1e-3; cut < 2e3; cut *= 2.0) {
      last = dlog(f, truncate(f, cut));
      mono = mono && last <= prev;
      prev = last;
    }
    density.expect(mono && last == 0.0);

    rearr.expect(std::abs(lognorm(decreasing_rearrangement(f)) - nf) <= 1e-12 * std::max(1.0, nf));

    if (t % 10 == 0) {
      std::vector<double> d;
      for (int k = 0; k < 64; ++k) {
        const double eps = std::ldexp(1.0, -k);
        const StepFunction fk = f + g.scaled(eps);
        const StepFunction gk = truncate(g, std::ldexp(1.0, k - 10));
        d.push_back(dlog(fk * gk, f * g));
      }
      bool tail_mono = true;
      for (std::size_t k = d.size() / 2; k + 1 < d.size(); ++k) tail_mono = tail_mono && d[k + 1] <= d[k] + 1e-15;
      cont.expect(tail_mono && d.back() < 1e-9, d.back());
    }
  }
  return {positive.result(), scaling.result(), vanish.result(), triangle.result(), k_bound.result(),
          product.result(),  dominated.result(), orlicz_lo.result(), orlicz_hi.result(), l1.result(),
          km.result(),       density.result(), rearr.result(),  cont.result()};
}

inline std::vector<CheckResult> operator_suite(const Options& opt) {
  sampling::Rng rng(opt.seed + 1);
  const char* s = "operator_space";
  Tally positive(s, "positivity"), adjoint(s, "adjoint invariance"), scaling(s, "scaling monotonicity"),
      vanish(s, "scaling continuity at 0"), triangle(s, "triangle inequality"), product(s, "||ST|| <= ||S||+||T||"),
      bounded(s, "||ST|| <= max(||S||,1)||T||"), fk_prod(s, "int log(1+mu(ST)) <= int log(1+mu(S)mu(T))"),
      measure(s, "tau(E[delta,inf)) <= ||3A/delta||_log"), series(s, "dtau closed form = series"),
      diag(s, "diagonal embedding consistency"), one_sided(s, "S T_k -> 0 monotonically"),
      split(s, "split reconstructs, bounded part <= K"), proj(s, "projections idempotent and self-adjoint"),
      integral(s, "lognorm_op = singular-step integral");

  for (int t = 0; t < opt.matrix_trials; ++t) {
    const int n = sampling::uniform_int(rng, 1, 8);
    const MatrixOperator S = sampling::random_matrix(rng, n);
    const MatrixOperator T = sampling::random_matrix(rng, n);
    const double ns = lognorm_op(S), nt = lognorm_op(T);

    positive.expect(ns > 0.0);
    adjoint.expect(std::abs(lognorm_op(S.adjoint()) - ns) <= 1e-12 * std::max(1.0, ns));
    scaling.expect_le(lognorm_op(S.scaled(std::polar(sampling::uniform(rng, 0.0, 1.0), 1.0))), ns, 1e-10);
    vanish.expect(lognorm_op(S.scaled(std::ldexp(1.0, -60))) <= std::ldexp(1.0, -60) * operator_norm(S) + 1e-300);
    triangle.expect_le(lognorm_op(S + T), ns + nt, 1e-10);
    product.expect_le(lognorm_op(S * T), ns + nt, 1e-10);
    bounded.expect_le(lognorm_op(S * T), std::max(operator_norm(S), 1.0) * nt, 1e-10);

    const auto ss = singular_values(S), st = singular_values(T), sst = singular_values(S * T);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < ss.size(); ++i) {
      lhs += std::log1p(sst[i]);
      rhs += std::log1p(ss[i] * st[i]);
    }
    fk_prod.expect_le(lhs / n, rhs / n, 1e-10);

    for (double delta : {0.1, 1.0, 10.0})
      measure.expect_le(spectral_trace_above(S, delta), lognorm_op(S.scaled(3.0 / delta)), 1e-12);

    series.expect(std::abs(dtau(S, T) - dtau_series(S, T, 60)) <= std::ldexp(1.0, -60) + 1e-12);

    integral.expect(std::abs(lognorm(singular_numbers(S)) - ns) <= 1e-12 * std::max(1.0, ns));

    const int cells = 1 << sampling::uniform_int(rng, 0, 4);
    const StepFunction f = sampling::random_grid_step_function(rng, cells);
    const MatrixOperator D = embed_diagonal(f, cells);
    diag.expect(std::abs(lognorm_op(D) - lognorm(f)) <= 1e-12 &&
                singular_numbers(D).positive_part() == decreasing_rearrangement(f));

    std::vector<double> seq;
    for (int k = 0; k < 40; ++k) seq.push_back(lognorm_op(S * T.scaled(std::ldexp(1.0, -k))));
    bool mono = true;
    for (std::size_t k = seq.size() / 2; k + 1 < seq.size(); ++k) mono = mono && seq[k + 1] <= seq[k];
    one_sided.expect(mono && seq.back() < 1e-6);

    const double K = std::pow(10.0, sampling::uniform(rng, -2.0, 2.0));
    const SpectralSplit sp = split_at(S, K);
    const double recon = (sp.bounded_part.entries() + sp.tail_part.entries() - S.entries()).cwiseAbs().maxCoeff();
    split.expect(recon <= 1e-12 * std::max(1.0, operator_norm(S)) && operator_norm(sp.bounded_part) <= K + 1e-10);

    const MatrixOperator P = spectral_project(S, SpectralInterval::at_least(K));
    const double idem = (P.entries() * P.entries() - P.entries()).cwiseAbs().maxCoeff();
    const double herm = (P.entries().adjoint() - P.entries()).cwiseAbs().maxCoeff();
    proj.expect(idem <= 1e-10 && herm <= 1e-10);
  }
  return {positive.result(), adjoint.result(), scaling.result(), vanish.result(), triangle.result(),
          product.result(),  bounded.result(), fk_prod.result(), measure.result(), series.result(),
          diag.result(),     one_sided.result(), split.result(), proj.result(),   integral.result()};
}

inline std::vector<CheckResult> nevanlinna_suite(const Options& opt) {
  using namespace nevanlinna;
  sampling::Rng rng(opt.seed + 2);
  const char* s = "nevanlinna";
  Tally radial(s, "radial means nondecreasing"), fatou(s, "L(f) >= ||Phi(f)||_log"),
      tri(s, "d_N triangle inequality"), scal(s, "d_N scaling monotonicity"), hom(s, "Phi multiplicative and additive"),
      inner(s, "inner functions have boundary norm log 2");

  const auto entries = corpus();
  for (const auto& e : entries) {
    const auto sweep = radial_sweep(e.f, opt.max_level, 1e-10);
    for (std::size_t i = 0; i + 1 < sweep.size(); ++i)
      radial.expect_le(sweep[i].value, sweep[i + 1].value, 1e-9);
    const double b = boundary_norm(e.f, 4096);
    fatou.expect_le(b, sweep.back().value + (e.bounded ? 1e-2 : 0.0), 1e-6);
    if (e.inner) inner.expect(std::abs(b - std::log(2.0)) <= 1e-6, std::abs(b - std::log(2.0)));
  }

  const std::size_t m = 1024;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& f = entries[i].f;
    const auto& g = entries[(i + 3) % entries.size()].f;
    const auto& h = entries[(i + 7) % entries.size()].f;
    tri.expect_le(distance(f, h, m), distance(f, g, m) + distance(g, h, m), 1e-9);
    const double alpha = sampling::uniform(rng, -1.0, 1.0);
    scal.expect_le(boundary_norm(HoloFunction::constant(alpha) * f, m), boundary_norm(f, m), 1e-9);

    const auto pf = phi_sample(f, m), pg = phi_sample(g, m);
    const auto pfg = phi_sample(f * g, m), psum = phi_sample(f + g, m);
    double worst = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double scale = 1.0 + std::abs(pf.values[j]) * std::abs(pg.values[j]);
      worst = std::max(worst, std::abs(pfg.values[j] - pf.values[j] * pg.values[j]) / scale);
      worst = std::max(worst, std::abs(psum.values[j] - pf.values[j] - pg.values[j]) / scale);
    }
    hom.expect(worst <= 1e-10, worst);
  }
  return {radial.result(), fatou.result(), tri.result(), scal.result(), hom.result(), inner.result()};
}

inline std::vector<CheckResult> witness_suite(const Options& opt) {
  sampling::Rng rng(opt.seed + 3);
  const char* s = "witnesses";
  Tally unb(s, "unboundedness witness re-verified"), split_sum(s, "convex split norms and reconstruction"),
      split_min(s, "convex split n is minimal"), sep(s, "separation: measure -> 0, lognorm -> inf"),
      cauchy(s, "Cauchy detection");

  for (double eps : {0.01, 0.1, 1.0, 5.0})
    for (int N : {1, 2, 3, 10, 100}) {
      const auto w = witness::unboundedness_witness(eps, N);
      unb.expect(w.holds() && lognorm(w.f) < eps && lognorm(w.f.scaled(1.0 / N)) >= eps / 2.0);
    }

  for (int t = 0; t < 40; ++t) {
    const StepFunction f = sampling::random_step_function(rng, 1.0, 4);
    const double eps = std::pow(10.0, sampling::uniform(rng, -1.5, 0.5));
    const auto cs = witness::convex_split(f, eps);
    const double total = lognorm(f.scaled(cs.n));
    double sum = 0.0;
    bool each = true;
    for (const auto& p : cs.pieces) {
      const double v = lognorm(p);
      sum += v;
      each = each && v < eps && std::abs(v - total / cs.n) <= 1e-12 * std::max(1.0, total);
    }
    split_sum.expect(each && std::abs(sum - total) <= 1e-12 * std::max(1.0, total) &&
                     sup_distance(cs.average(), f) <= 1e-13 * std::max(1.0, f.sup_abs()));
    if (cs.n > 1) split_min.expect(lognorm(f.scaled(cs.n - 1)) / (cs.n - 1) >= eps);
  }

  bool sep_ok = true;
  for (int k = 1; k < 20; ++k) {
    const auto a = witness::separation_sequence(k), b = witness::separation_sequence(k + 1);
    sep_ok = sep_ok && b.support_measure < a.support_measure && b.lognorm_value > a.lognorm_value;
    for (double delta : {1e-3, 1.0, 1e3}) {
      // nu{|f_k| >= delta} = 1/k once e^{k^2} >= delta
      if (std::log(delta) <= a.height_log) sep_ok = sep_ok && b.measure_at_least(delta) < a.measure_at_least(delta);
      sep_ok = sep_ok && b.measure_at_least(delta) <= b.support_measure;
    }
  }
  sep.expect(sep_ok);

  const StepFunction f = sampling::random_step_function(rng, 1.0, 5);
  std::vector<StepFunction> trunc;
  for (int k = -10; k <= 30; ++k) trunc.push_back(truncate(f, std::ldexp(1.0, k)));
  const auto rep = witness::cauchy_limit(trunc, 1e-9);
  cauchy.expect(rep.cauchy && rep.limit && *rep.limit == f);
  std::vector<StepFunction> alt;
  for (int k = 0; k < 10; ++k) alt.push_back(k % 2 ? StepFunction::constant(1.0, 0.0, 1.0, 1.0) : StepFunction(1.0));
  const auto bad = witness::cauchy_limit(alt, 1e-3);
  cauchy.expect(!bad.cauchy && std::abs(bad.gap - std::log(2.0)) <= 1e-12);
  return {unb.result(), split_sum.result(), split_min.result(), sep.result(), cauchy.result()};
}

inline std::vector<CheckResult> io_suite(const Options& opt) {
  sampling::Rng rng(opt.seed + 4);
  Tally rt("cli", "JSON emission is stable under re-ingestion");
  for (int t = 0; t < 200; ++t) {
    const auto f = sampling::random_step_function(rng, t % 2 ? 1.0 : infinite_measure);
    const auto j1 = io::to_json(f);
    rt.expect(io::to_json(io::step_function_from_json(j1)) == j1);
    const auto m = sampling::random_matrix(rng, sampling::uniform_int(rng, 1, 4));
    const auto k1 = io::to_json(m);
    rt.expect(io::to_json(io::matrix_from_json(k1)) == k1);
  }
  for (const auto& e : nevanlinna::corpus()) {
    const auto j1 = io::to_json(e.f);
    rt.expect(io::to_json(io::holo_from_json(j1)) == j1);
  }
  return {rt.result()};
}

inline std::vector<CheckResult> run_all(const Options& opt = {}) {
  std::vector<CheckResult> out;
  for (auto suite : {core_suite, operator_suite, nevanlinna_suite, witness_suite, io_suite}) {
    auto part = suite(opt);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace logint::selftest
