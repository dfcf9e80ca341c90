// Acceptance suite. Runs criteria 1-9 (or the one given as argv[1]) and prints
// one PASS/FAIL line per criterion. Exit status is nonzero if any selected
// criterion fails. Tolerances are fixed here and in table1.hpp.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "halfosc/hilbert.hpp"
#include "halfosc/pcf.hpp"
#include "halfosc/spectrum.hpp"
#include "halfosc/table1.hpp"

namespace hs = halfosc;
namespace t1 = halfosc::table1;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const hs::QuadratureRule& rule() {
  static const hs::QuadratureRule r = hs::quadrature_rule();
  return r;
}

const t1::Grid& grid() {
  static const t1::Grid g = t1::table1_grid();
  return g;
}

double pcf_inner(double a, double b, const hs::QuadratureRule& r) {
  const hs::PcfEvaluator ea(a), eb(b);
  return hs::inner_product([&](double x) { return ea.value(x); }, [&](double x) { return eb.value(x); }, r);
}

Outcome table_reproduction() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = t1::table1_grid();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Outcome o;
  int passed = 0;
  double worst_ratio = 0.0;
  for (const auto& cell : t1::compare(g)) {
    worst_ratio = std::max(worst_ratio, cell.deviation / cell.tolerance);
    if (cell.pass()) {
      ++passed;
    } else {
      o.pass = false;
      o.detail += fmt("eta=%.2f M=%zu computed=%.6f printed=%.6g |dev|=%.3g > %.0e; ",
                      t1::kEtaLabels[cell.col], cell.row + 1, cell.computed, cell.published,
                      cell.deviation, cell.tolerance);
    }
  }
  if (seconds >= 5.0) o.pass = false;
  o.detail += fmt("%d/77 cells, worst |dev|/tol %.3g, %.3f s", passed, worst_ratio, seconds);
  return o;
}

Outcome root_residual_and_uniqueness() {
  Outcome o;
  double worst = 0.0;
  int bad_scans = 0;
  for (std::size_t c = 0; c < t1::kCols; ++c) {
    const auto p = t1::column_parameter(c);
    const double eta = *p.eta;
    for (std::size_t r = 0; r < t1::kRows; ++r) {
      const double nu = grid()[r][c];
      const auto y = hs::y_ratio(nu);
      const double res = std::abs(y.value - eta) / (1.0 + std::abs(eta));
      worst = std::max(worst, res);
      if (!(res <= 1e-10)) o.pass = false;

      const int level = static_cast<int>(r) + 1;
      const auto iv = hs::level_interval(level);
      const double lo = level == 1 ? -40.0 : iv.lo;
      int changes = 0;
      double prev = hs::y_ratio(lo + 5e-3).value - eta;
      for (double x = lo + 1.5e-2; x < iv.hi - 4e-3; x += 1e-2) {
        const double f = hs::y_ratio(x).value - eta;
        if ((f > 0) != (prev > 0)) ++changes;
        prev = f;
      }
      if (changes != 1) {
        ++bad_scans;
        o.pass = false;
      }
    }
  }
  o.detail = fmt("max |y-eta|/(1+|eta|) %.3g (tol 1e-10), %d scans without exactly one sign change",
                 worst, bad_scans);
  return o;
}

Outcome orthonormality() {
  Outcome o;
  std::vector<hs::ExtensionParameter> params = {hs::xi_to_eta(0.0)};
  for (double eta : {-2.18, 0.0, 0.51, 2.18}) params.push_back(hs::eta_to_parameter(eta));
  const auto doubled = hs::quadrature_rule(30.0, 1.0, 48);
  double worst_dev = 0.0, worst_change = 0.0;
  for (const auto& p : params) {
    const auto s = hs::spectrum(p, 8);
    const auto g = hs::gram_matrix(s, 8, rule());
    const auto g2 = hs::gram_matrix(s, 8, doubled);
    worst_dev = std::max(worst_dev, g.max_deviation_from_identity());
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) worst_change = std::max(worst_change, std::abs(g(i, j) - g2(i, j)));
  }
  o.pass = worst_dev <= 1e-6 && worst_change <= 1e-9;
  o.detail = fmt("max |G-I| %.3g (tol 1e-6), node doubling change %.3g (tol 1e-9)", worst_dev, worst_change);
  return o;
}

Outcome closed_form_cross_validation() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-1.0, 8.0);
  double worst = 0.0;
  int pairs = 0;
  while (pairs < 10) {
    const double a = u(rng), b = u(rng);
    if (std::abs(a - std::nearbyint(a)) < 1e-3 || std::abs(b - std::nearbyint(b)) < 1e-3 ||
        std::abs(a - b) < 1e-3)
      continue;
    worst = std::max(worst, std::abs(hs::cross_inner_closed(a, b) - pcf_inner(a, b, rule())));
    ++pairs;
  }
  const double elementary = std::abs(hs::cross_inner_closed(0.0, 1.0) - 1.0);
  Outcome o;
  o.pass = worst <= 1e-6 && elementary <= 1e-12;
  o.detail = fmt("10 pairs max |closed-quad| %.3g (tol 1e-6), |<D0,D1>-1| %.3g (tol 1e-12)", worst, elementary);
  return o;
}

Outcome normalization() {
  double worst = 0.0;
  auto check = [&](double nu) {
    const double c = hs::normalization(nu).c;
    worst = std::max(worst, std::abs(c * c * pcf_inner(nu, nu, rule()) - 1.0));
  };
  for (const auto& row : grid())
    for (double nu : row) check(nu);
  double integer_branch = 0.0;
  for (int n = 0; n <= 3; ++n) {
    check(n);
    const double c = hs::normalization(n).c;
    integer_branch =
        std::max(integer_branch, std::abs(1.0 / (c * c) / (std::tgamma(n + 1.0) * std::sqrt(pi / 2)) - 1.0));
  }
  Outcome o;
  o.pass = worst <= 1e-6 && integer_branch <= 1e-14;
  o.detail = fmt("max |c^2<D,D>-1| %.3g over 77 roots and nu=0..3 (tol 1e-6), integer branch rel %.3g",
                 worst, integer_branch);
  return o;
}

Outcome weber_residual() {
  // Low-lying eigen-orders from two columns of the table.
  const std::vector<double> orders = {grid()[0][0], grid()[1][0], grid()[2][0],
                                      grid()[0][4], grid()[1][4], grid()[2][4]};
  const hs::UniformGrid g{10.0, 0.01};
  Outcome o;
  double worst = 0.0, weakest_ratio = INFINITY;
  for (double nu : orders) {
    const double r = hs::weber_residual(nu, g);
    const double ratio = std::min(hs::weber_residual(nu, g, nu + 0.1), hs::weber_residual(nu, g, nu - 0.1)) / r;
    worst = std::max(worst, r);
    weakest_ratio = std::min(weakest_ratio, ratio);
  }
  o.pass = worst <= 1e-5 && weakest_ratio >= 10.0;
  o.detail = fmt("6 orders, max residual %.3g (tol 1e-5), min inflation under +-0.1 %.3g (need >= 10)", worst,
                 weakest_ratio);
  return o;
}

Outcome structural_properties() {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> u(1e-3, 1.0 - 1e-3);
  int failures = 0, samples = 0;
  auto expect = [&](bool ok) {
    ++samples;
    if (!ok) ++failures;
  };
  // beta(-nu) sign by interval
  for (int m = 1; m <= 10; ++m)
    for (int i = 0; i < 5; ++i) {
      expect(hs::beta_series(-(2.0 * m - 1.0 + u(rng))).value >= 0.0);
      expect(hs::beta_series(-(2.0 * m - 2.0 + u(rng))).value < 0.0);
    }
  for (int i = 0; i < 50; ++i) expect(hs::beta_series(40.0 * u(rng)).value >= 0.0);
  // sgn Gamma(-nu) = sgn beta(-nu)
  for (int i = 0; i < 60; ++i) {
    const double nu = -10.0 + 30.0 * u(rng);
    if (std::abs(nu - std::nearbyint(nu)) < 1e-6) continue;
    expect(std::signbit(hs::gamma(-nu).value) == std::signbit(hs::beta_series(-nu).value));
  }
  // y strictly decreasing on each level, zeros exactly at even integers, asymptotes
  for (int m = 1; m <= 10; ++m) {
    const auto iv = hs::level_interval(m);
    const double lo = m == 1 ? -20.0 : iv.lo;
    for (int i = 0; i < 10; ++i) {
      double a = lo + (iv.hi - lo) * u(rng), b = lo + (iv.hi - lo) * u(rng);
      if (a > b) std::swap(a, b);
      if (a < b) expect(hs::y_ratio(a).value > hs::y_ratio(b).value);
    }
    expect(hs::y_ratio(iv.hi - 1e-8).value < -1e6);
    if (m > 1) expect(hs::y_ratio(iv.lo + 1e-8).value > 1e6);
  }
  for (int n = 0; n <= 20; n += 2) expect(hs::y_ratio(n).value == 0.0);
  for (int i = 0; i < 50; ++i) {
    const double nu = -20.0 + 60.0 * u(rng);
    if (std::abs(nu - std::nearbyint(nu)) > 1e-6) expect(hs::y_ratio(nu).value != 0.0);
  }
  Outcome o;
  o.pass = failures == 0;
  o.detail = fmt("%d/%d sampled property checks hold", samples - failures, samples);
  return o;
}

Outcome completeness_substitute() {
  const auto& r = rule();
  std::vector<double> f(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) f[i] = std::exp(-r.nodes[i]);
  const double norm2 = hs::inner_product_samples(f, f, r);
  Outcome o;
  for (double eta : {0.0, 0.51}) {
    const auto s = hs::spectrum(hs::eta_to_parameter(eta), 20);
    const auto a = hs::project_samples(f, s, 20, r);
    const double r5 = hs::projection_residual(f, a, s, 5, r);
    const double r10 = hs::projection_residual(f, a, s, 10, r);
    const double r20 = hs::projection_residual(f, a, s, 20, r);
    bool parseval_ok = true;
    double partial = 0.0, prev = 0.0;
    for (double v : a) {
      partial += v * v;
      if (partial < prev || partial > norm2 + 1e-8) parseval_ok = false;
      prev = partial;
    }
    const bool ok = r5 > r10 && r10 > r20 && parseval_ok;
    o.pass = o.pass && ok;
    o.detail += fmt("eta=%g residuals %.3g > %.3g > %.3g, Parseval %.10f <= %.10f; ", eta, r5, r10, r20,
                    partial, norm2);
  }
  o.detail += "basis property itself not provable numerically";
  return o;
}

Outcome full_line() {
  const auto b = hs::fullline_basis(0.0, pi / 2, 4);
  const auto g = hs::fullline_gram(b, rule());
  double cross = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 4; j < 8; ++j) cross = std::max(cross, std::abs(g(i, j)));
  Outcome o;
  o.pass = g.max_deviation_from_identity() <= 1e-6 && cross == 0.0;
  o.detail = fmt("two-sided max |G-I| %.3g (tol 1e-6), max cross-family |G| %.3g (need exactly 0)",
                 g.max_deviation_from_identity(), cross);
  return o;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"table reproduction", table_reproduction},
      {"eigenvalue-equation residual and uniqueness", root_residual_and_uniqueness},
      {"orthonormality", orthonormality},
      {"closed-form cross-validation", closed_form_cross_validation},
      {"normalization", normalization},
      {"Weber ODE residual", weber_residual},
      {"sign, monotonicity and asymptote properties", structural_properties},
      {"completeness substitute", completeness_substitute},
      {"full-line combination", full_line},
  };
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: %s [criterion 1-%zu]\n", argv[0], criteria.size());
      return 2;
    }
  }
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("AC%zu %s: %s -- %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].name, o.detail.c_str());
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
