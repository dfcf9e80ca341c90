// Parabolic cylinder functions D_nu(x) on x >= 0: values, derivatives,
// origin data, L2 normalization on the half-line and the closed-form cross
// inner product of two orders.
//
// Evaluation routes, chosen by abscissa:
//   x <= x_switch          Kummer-series representation (long double).
//   x_switch < x < anchor  Taylor-series integration of the Weber equation,
//                          inward from the anchor, where D_nu is dominant.
//   x >= anchor            Large-x asymptotic expansion.
// Orders within 1e-9 of a nonnegative integer use the Hermite form instead.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "halfosc/specfun.hpp"

namespace halfosc {

inline constexpr double kNuMin = -15.0;
inline constexpr double kNuMax = 45.0;
inline constexpr double kPcfXMax = 60.0;
inline constexpr double kIntegerOrderTolerance = 1e-9;

struct ValueAndDerivative {
  double value = 0.0;
  double derivative = 0.0;
};

struct PcfConfig {
  double x_switch = 4.0;           // series/ODE handover for nu >= -1/2
  double step = 1.0 / 128.0;       // ODE checkpoint spacing
  double asymptotic_tol = 1e-16;   // relative size of the last kept term
  double halving_tol = 1e-12;      // step-halving agreement, relative to path max
};

namespace detail {

using Real = long double;

/// Nonnegative integer n with |nu - n| < tol, if any.
inline std::optional<unsigned> integer_order(double nu) {
  const double n = std::nearbyint(nu);
  if (n < 0 || std::abs(nu - n) >= kIntegerOrderTolerance) return std::nullopt;
  return static_cast<unsigned>(n);
}

// For nu < -1/2 the Kummer combination cancels faster with x, while the
// inward integration stays stable down to the origin; move the handover in.
inline double effective_switch(double nu, double nominal) {
  if (nu >= -0.5) return nominal;
  return std::max(1.0, nominal + 0.45 * (nu + 0.5));
}

inline void check_order(double nu) {
  if (!std::isfinite(nu) || nu < kNuMin || nu > kNuMax) {
    std::ostringstream os;
    os << "parabolic cylinder order " << nu << " outside supported range [" << kNuMin
       << ", " << kNuMax << "]";
    throw DomainError(os.str());
  }
}

inline void check_abscissa(double x) {
  if (!std::isfinite(x) || x < 0.0 || x > kPcfXMax) {
    std::ostringstream os;
    os << "parabolic cylinder abscissa " << x << " outside [0, " << kPcfXMax << "]";
    throw DomainError(os.str());
  }
}

// Coefficients of the even and odd Kummer parts:
// D_nu(x) = e^{-x^2/4} [ even * M(-nu/2, 1/2, x^2/2) - odd * x M((1-nu)/2, 3/2, x^2/2) ].
struct SeriesCoefficients {
  double even;
  double odd;
};

inline SeriesCoefficients series_coefficients(double nu) {
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  return {sqrt_pi * std::exp2(0.5 * nu) * recip_gamma(0.5 * (1.0 - nu)),
          sqrt_pi * std::exp2(0.5 * (nu + 1.0)) * recip_gamma(-0.5 * nu)};
}

inline ValueAndDerivative series_route(double nu, SeriesCoefficients coef, double x) {
  if (x == 0.0) return {coef.even, -coef.odd};
  const Real xl = x;
  const Real z = 0.5L * xl * xl;
  const Real v = nu;
  const Real a1 = -0.5L * v, a2 = 0.5L * (1.0L - v);
  const Real m1 = kummer<Real>(a1, 0.5L, z);
  const Real m2 = kummer<Real>(a2, 1.5L, z);
  const Real m1p = kummer<Real>(a1 + 1.0L, 1.5L, z);
  const Real m2p = kummer<Real>(a2 + 1.0L, 2.5L, z);
  const Real even = coef.even, odd = coef.odd;
  const Real gauss = std::exp(-0.5L * z);
  // F = even M1 - odd x M2;  F' = even x (a1/b1) M1' - odd (M2 + x^2 (a2/b2) M2')
  CompensatedSum<Real> f, fp;
  f.add(even * m1);
  f.add(-odd * xl * m2);
  fp.add(even * xl * (-v) * m1p);
  fp.add(-odd * m2);
  fp.add(-odd * xl * xl * (a2 / 1.5L) * m2p);
  const Real fv = f.value();
  return {static_cast<double>(gauss * fv),
          static_cast<double>(gauss * (fp.value() - 0.5L * xl * fv))};
}

struct AsymptoticResult {
  ValueAndDerivative vd;
  bool converged;
};

// D_nu(x) ~ e^{-x^2/4} x^nu sum_k a_k x^{-2k},
// a_{k+1} = -a_k (nu-2k)(nu-2k-1) / (2(k+1)); truncated before the smallest term.
inline AsymptoticResult asymptotic(double nu, double x, double rel_tol) {
  const Real v = nu;
  const Real inv2 = 1.0L / (static_cast<Real>(x) * x);
  Real term = 1.0L;  // a_k x^{-2k}
  CompensatedSum<Real> sum;
  CompensatedSum<Real> dsum;  // sum a_k (nu - 2k) x^{-2k}
  bool converged = false;
  for (int k = 0; k < 400; ++k) {
    sum.add(term);
    dsum.add(term * (v - 2.0L * k));
    const Real next = -term * (v - 2.0L * k) * (v - 2.0L * k - 1.0L) / (2.0L * (k + 1)) * inv2;
    if (next == 0.0L) {
      converged = true;
      break;
    }
    if (std::abs(next) >= std::abs(term)) {
      converged = std::abs(term) <= rel_tol * std::abs(sum.value());
      break;
    }
    term = next;
    if (std::abs(term) <= 1e-3L * rel_tol * std::abs(sum.value())) {
      converged = true;
      break;
    }
  }
  const Real xl = x;
  const Real scale = std::exp(v * std::log(xl) - 0.25L * xl * xl);
  const Real s = sum.value();
  const Real value = scale * s;
  const Real deriv = scale * (dsum.value() / xl - 0.5L * xl * s);
  return {{static_cast<double>(value), static_cast<double>(deriv)}, converged};
}

struct OdeState {
  Real y;
  Real dy;
};

// One Taylor-series step of y'' = (x^2/4 - nu - 1/2) y from x0 by t.
inline OdeState taylor_step(Real nu, Real x0, OdeState s, Real t) {
  const Real q0 = 0.25L * x0 * x0 - nu - 0.5L;
  const Real q1 = 0.5L * x0;
  const Real q2 = 0.25L;
  Real cm2 = 0, cm1 = 0;  // c_{k-2}, c_{k-1}
  Real ck = s.y, ck1 = s.dy;
  Real tp = 1;  // t^k
  CompensatedSum<Real> y, dy;
  y.add(ck);
  dy.add(ck1);
  int quiet = 0;
  for (int k = 0; k < 400; ++k) {
    // c_{k+2} from c_k, c_{k-1}, c_{k-2}
    const Real ck2 = (q0 * ck + q1 * cm1 + q2 * cm2) / ((k + 1.0L) * (k + 2.0L));
    tp *= t;  // t^{k+1}
    const Real ty = ck1 * tp;
    y.add(ty);
    const Real tdy = (k + 2.0L) * ck2 * tp;
    dy.add(tdy);
    const Real scale = std::max(std::abs(y.value()), std::abs(dy.value()));
    if (std::abs(ty) <= 1e-22L * scale && std::abs(tdy) <= 1e-22L * scale) {
      if (++quiet == 2) break;
    } else {
      quiet = 0;
    }
    cm2 = cm1;
    cm1 = ck;
    ck = ck1;
    ck1 = ck2;
  }
  return {y.value(), dy.value()};
}

}  // namespace detail

/// Evaluator for D_nu with a fixed order. Construction integrates the Weber
/// equation once from the anchor down to x_switch - 1 and keeps checkpoints,
/// so repeated evaluation is cheap. Immutable after construction.
class PcfEvaluator {
 public:
  explicit PcfEvaluator(double nu, PcfConfig config = {}) : nu_(nu), config_(config) {
    detail::check_order(nu);
    if (!(config_.x_switch > 0.0)) throw DomainError("PcfEvaluator: x_switch must be positive");
    config_.x_switch = detail::effective_switch(nu, config_.x_switch);
    integer_ = detail::integer_order(nu);
    coef_ = detail::series_coefficients(nu);
    if (integer_) {
      anchor_x_ = std::max(12.0, 2.0 * std::sqrt(std::abs(nu) + 1.0));
      return;
    }
    choose_anchor();
    build_checkpoints();
  }

  [[nodiscard]] double nu() const { return nu_; }
  [[nodiscard]] double x_switch() const { return config_.x_switch; }
  [[nodiscard]] double anchor_x() const { return anchor_x_; }
  [[nodiscard]] bool integer_order() const { return integer_.has_value(); }

  [[nodiscard]] double value(double x) const { return evaluate(x).value; }
  [[nodiscard]] double derivative(double x) const { return evaluate(x).derivative; }

  [[nodiscard]] ValueAndDerivative evaluate(double x) const {
    detail::check_abscissa(x);
    if (integer_) return {hermite_pcf(*integer_, x), hermite_pcf_derivative(*integer_, x)};
    if (x <= config_.x_switch) return series(x);
    if (x >= anchor_x_) return asymptotic(x);
    return ode(x);
  }

  /// Kummer-series route; exact origin values at x = 0.
  [[nodiscard]] ValueAndDerivative series(double x) const {
    return detail::series_route(nu_, coef_, x);
  }

  /// Inward ODE route, valid on [x_switch - 1, anchor].
  [[nodiscard]] ValueAndDerivative ode(double x) const {
    if (integer_) return {hermite_pcf(*integer_, x), hermite_pcf_derivative(*integer_, x)};
    if (x < ode_low_ || x > anchor_x_) {
      std::ostringstream os;
      os << "ODE route for nu=" << nu_ << " covers [" << ode_low_ << ", " << anchor_x_
         << "], requested x=" << x;
      throw DomainError(os.str());
    }
    const double h = config_.step;
    auto j = static_cast<std::size_t>(std::floor((anchor_x_ - x) / h));
    j = std::min(j, checkpoints_.size() - 1);
    const double xj = anchor_x_ - static_cast<double>(j) * h;
    const auto s = detail::taylor_step(nu_, xj, checkpoints_[j], static_cast<detail::Real>(x) - xj);
    return {static_cast<double>(s.y), static_cast<double>(s.dy)};
  }

  [[nodiscard]] ValueAndDerivative asymptotic(double x) const {
    return detail::asymptotic(nu_, x, config_.asymptotic_tol).vd;
  }

 private:
  void choose_anchor() {
    const double h = config_.step;
    double anchor = std::max(12.0, 2.0 * std::sqrt(std::abs(nu_) + 1.0));
    anchor = std::ceil(anchor / h) * h;
    while (!detail::asymptotic(nu_, anchor, config_.asymptotic_tol).converged) {
      anchor += 1.0;
      if (anchor > kPcfXMax) {
        std::ostringstream os;
        os << "no admissible asymptotic anchor for nu=" << nu_;
        throw EvaluationError(os.str());
      }
    }
    anchor_x_ = anchor;
  }

  // Inward integration with step h, recording every node; the same path with
  // step h/2 must agree at the lower end.
  void build_checkpoints() {
    ode_low_ = std::max(0.0, config_.x_switch - 1.0);
    const auto seed = detail::asymptotic(nu_, anchor_x_, config_.asymptotic_tol).vd;
    const double h = config_.step;
    const auto n_steps = static_cast<std::size_t>(std::ceil((anchor_x_ - ode_low_) / h));
    ode_low_ = anchor_x_ - static_cast<double>(n_steps) * h;
    if (ode_low_ < 0.0) ode_low_ = 0.0;

    checkpoints_.clear();
    checkpoints_.reserve(n_steps + 1);
    detail::OdeState s{seed.value, seed.derivative};
    checkpoints_.push_back(s);
    detail::Real path_max = std::abs(s.y);
    for (std::size_t j = 0; j < n_steps; ++j) {
      const double xj = anchor_x_ - static_cast<double>(j) * h;
      s = detail::taylor_step(nu_, xj, s, -static_cast<detail::Real>(h));
      checkpoints_.push_back(s);
      path_max = std::max(path_max, std::abs(s.y));
    }

    detail::OdeState half{seed.value, seed.derivative};
    for (std::size_t j = 0; j < 2 * n_steps; ++j) {
      const double xj = anchor_x_ - static_cast<double>(j) * (0.5 * h);
      half = detail::taylor_step(nu_, xj, half, -0.5L * static_cast<detail::Real>(h));
    }
    const detail::Real diff = std::abs(half.y - checkpoints_.back().y);
    if (diff > config_.halving_tol * path_max) {
      std::ostringstream os;
      os << "ODE step-halving check failed for nu=" << nu_ << ": |dy|="
         << static_cast<double>(diff) << " path max=" << static_cast<double>(path_max);
      throw EvaluationError(os.str());
    }
  }

  double nu_;
  PcfConfig config_;
  std::optional<unsigned> integer_;
  detail::SeriesCoefficients coef_{};
  double anchor_x_ = 0.0;
  double ode_low_ = 0.0;
  std::vector<detail::OdeState> checkpoints_;
};

/// D_nu(x) for x in [0, 60].
inline double pcf_value(double nu, double x) {
  if (auto n = detail::integer_order(nu)) {
    detail::check_order(nu);
    detail::check_abscissa(x);
    return hermite_pcf(*n, x);
  }
  detail::check_order(nu);
  detail::check_abscissa(x);
  if (x <= detail::effective_switch(nu, PcfConfig{}.x_switch))
    return detail::series_route(nu, detail::series_coefficients(nu), x).value;
  return PcfEvaluator(nu).value(x);
}

/// dD_nu/dx for x in [0, 60].
inline double pcf_derivative(double nu, double x) {
  if (auto n = detail::integer_order(nu)) {
    detail::check_order(nu);
    detail::check_abscissa(x);
    return hermite_pcf_derivative(*n, x);
  }
  detail::check_order(nu);
  detail::check_abscissa(x);
  if (x <= detail::effective_switch(nu, PcfConfig{}.x_switch))
    return detail::series_route(nu, detail::series_coefficients(nu), x).derivative;
  return PcfEvaluator(nu).derivative(x);
}

/// D_nu(0) = sqrt(pi) 2^{nu/2} / Gamma((1-nu)/2),
/// D_nu'(0) = -sqrt(pi) 2^{(nu+1)/2} / Gamma(-nu/2).
inline ValueAndDerivative pcf_origin(double nu) {
  const auto c = detail::series_coefficients(nu);
  return {c.even, -c.odd};
}

struct NormalizationConstant {
  double nu;
  double c;  // c^2 * integral_0^inf D_nu^2 = 1
};

/// c(nu) with 1/c^2 = sqrt(pi/2) beta(-nu) / Gamma(-nu); at integer orders
/// 1/c^2 = n! sqrt(pi/2).
inline NormalizationConstant normalization(double nu) {
  if (!std::isfinite(nu) || std::abs(nu) > 150.0)
    throw DomainError("normalization: order outside [-150, 150]");
  const double root_half_pi = std::sqrt(0.5 * std::numbers::pi);
  double inv_c2 = 0.0;
  if (auto n = detail::integer_order(nu)) {
    inv_c2 = std::tgamma(static_cast<double>(*n) + 1.0) * root_half_pi;
  } else {
    const SpecialValue b = beta_series(-nu);
    inv_c2 = root_half_pi * b.value * recip_gamma(-nu);
  }
  if (!(inv_c2 > 0.0) || !std::isfinite(inv_c2)) {
    std::ostringstream os;
    os << "normalization: Gamma(-nu)/beta(-nu) not positive at nu=" << nu
       << " (1/c^2=" << inv_c2 << ")";
    throw EvaluationError(os.str());
  }
  return {nu, 1.0 / std::sqrt(inv_c2)};
}

/// integral_0^inf D_nu D_mu dx for nu != mu:
/// pi 2^{(nu+mu+1)/2} / (mu-nu) [ 1/(G((1-mu)/2) G(-nu/2)) - 1/(G((1-nu)/2) G(-mu/2)) ].
inline double cross_inner_closed(double nu, double mu) {
  detail::check_order(nu);
  detail::check_order(mu);
  if (std::abs(nu - mu) <= 1e-9)
    throw DomainError("cross_inner_closed: coincident orders; use normalization() for the norm");
  const double bracket = recip_gamma(0.5 * (1.0 - mu)) * recip_gamma(-0.5 * nu) -
                         recip_gamma(0.5 * (1.0 - nu)) * recip_gamma(-0.5 * mu);
  return std::numbers::pi * std::exp2(0.5 * (nu + mu + 1.0)) / (mu - nu) * bracket;
}

/// Uniform grid x_i = i h, i = 1..N, with N h = x_max.
struct UniformGrid {
  double x_max = 10.0;
  double h = 0.01;

  [[nodiscard]] std::vector<double> nodes() const {
    const auto n = static_cast<std::size_t>(std::llround(x_max / h));
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<double>(i + 1) * h;
    return xs;
  }
};

/// max over interior nodes of |D'' + (nu_eq + 1/2 - x^2/4) D| with D = D_nu and
/// D'' from 5-point central differences. nu_eq defaults to nu.
inline double weber_residual(double nu, const UniformGrid& grid,
                             std::optional<double> nu_eq = std::nullopt) {
  if (!(grid.h > 0.0) || grid.h > 0.05)
    throw DomainError("weber_residual: grid spacing must lie in (0, 0.05]");
  const auto xs = grid.nodes();
  if (xs.size() < 5) throw DomainError("weber_residual: grid needs at least 5 nodes");
  const PcfEvaluator eval(nu);
  std::vector<double> d(xs.size());
  std::transform(xs.begin(), xs.end(), d.begin(), [&](double x) { return eval.value(x); });
  const double e = nu_eq.value_or(nu) + 0.5;
  const double inv = 1.0 / (12.0 * grid.h * grid.h);
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < xs.size(); ++i) {
    const double d2 = (-d[i - 2] + 16.0 * d[i - 1] - 30.0 * d[i] + 16.0 * d[i + 1] - d[i + 2]) * inv;
    worst = std::max(worst, std::abs(d2 + (e - 0.25 * xs[i] * xs[i]) * d[i]));
  }
  return worst;
}

}  // namespace halfosc
