// Point spectrum of the half-line oscillator -d^2/dx^2 + x^2/4 under the
// boundary condition f(0) cos(xi) - f'(0) sin(xi) = 0.
//
// Eigen-orders nu are the level sets y(nu) = eta of
//   y(nu) = Gamma((1-nu)/2) / Gamma(-nu/2),   eta = cot(xi) / sqrt(2),
// with one root between each pair of consecutive odd asymptotes of y.
// Energies are nu + 1/2.
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "halfosc/pcf.hpp"
#include "halfosc/specfun.hpp"

namespace halfosc {

/// Boundary-condition angle xi in [0, pi) and the derived eta. eta is empty
/// (infinite) exactly when xi == 0.
struct ExtensionParameter {
  double xi = 0.0;
  std::optional<double> eta;

  [[nodiscard]] bool dirichlet() const { return !eta.has_value(); }
  [[nodiscard]] bool neumann() const { return eta.has_value() && *eta == 0.0; }
};

inline ExtensionParameter xi_to_eta(double xi) {
  if (!(xi >= 0.0 && xi < std::numbers::pi)) {
    std::ostringstream os;
    os << "xi=" << xi << " outside [0, pi)";
    throw DomainError(os.str());
  }
  if (xi == 0.0) return {0.0, std::nullopt};
  if (xi == 0.5 * std::numbers::pi) return {xi, 0.0};
  return {xi, std::cos(xi) / std::sin(xi) / std::numbers::sqrt2};
}

/// Inverse of xi_to_eta for finite eta: xi = arccot(sqrt(2) eta) in (0, pi).
inline ExtensionParameter eta_to_parameter(double eta) {
  if (!std::isfinite(eta)) throw DomainError("eta must be finite; use xi = 0 for the Dirichlet case");
  return {0.5 * std::numbers::pi - std::atan(std::numbers::sqrt2 * eta), eta};
}

/// y(nu) = Gamma((1-nu)/2) / Gamma(-nu/2). Exact zeros at even nonnegative
/// integers; pole_flag exactly at the odd positive integers.
inline SpecialValue y_ratio(double nu) {
  if (!std::isfinite(nu)) throw DomainError("y_ratio: non-finite order");
  const double a = 0.5 * (1.0 - nu);  // Gamma numerator argument
  const double b = -0.5 * nu;         // reciprocal-Gamma argument
  if (a <= 0.0 && a == std::nearbyint(a))
    return {std::numeric_limits<double>::quiet_NaN(), true, false};
  if (b <= 0.0 && b == std::nearbyint(b)) return {0.0, false, false};

  constexpr double kDirectLimit = 150.0;
  if (std::abs(nu) <= 2.0 * kDirectLimit) {
    double g;
    if (a >= 0.5) {
      g = detail::gamma_positive(a);
    } else {
      g = std::numbers::pi / (detail::sin_pi(a) * detail::gamma_positive(1.0 - a));
    }
    return {g * recip_gamma(b), false, false};
  }
  if (nu < 0.0) return {std::exp(log_gamma(a) - log_gamma(b)), false, false};
  // Both arguments negative: reflect into Gamma(1+nu/2) / Gamma((1+nu)/2).
  const double ratio = std::exp(log_gamma(1.0 - b) - log_gamma(1.0 - a));
  return {detail::sin_pi(b) / detail::sin_pi(a) * ratio, false, false};
}

struct LevelInterval {
  double lo;  // -inf for the first level
  double hi;
};

/// I_1 = (-inf, 1), I_M = (2M-3, 2M-1) for M >= 2.
inline LevelInterval level_interval(int level) {
  if (level < 1) throw DomainError("level index must be >= 1");
  if (level == 1) return {-std::numeric_limits<double>::infinity(), 1.0};
  return {2.0 * level - 3.0, 2.0 * level - 1.0};
}

/// The unique nu in I_M with y(nu) = eta, by bisection on the monotone
/// (decreasing) branch of y followed by one secant polish.
inline double solve_level(double eta, int level, double tol = 1e-10) {
  if (!std::isfinite(eta)) throw DomainError("solve_level: eta must be finite");
  if (!(tol >= 1e-12)) throw DomainError("solve_level: tol must be >= 1e-12");
  const LevelInterval iv = level_interval(level);
  auto f = [eta](double nu) { return y_ratio(nu).value - eta; };

  constexpr double kInset = 1e-9;
  double lo = 0.0;
  double hi = iv.hi - kInset;
  if (f(hi) > 0.0) throw EvaluationError("solve_level: no sign change near right asymptote");
  if (level == 1) {
    double d = kInset;
    while (f(1.0 - d) < 0.0) {
      d *= 2.0;
      if (1.0 - d < -1e6) {
        std::ostringstream os;
        os << "solve_level: bracket expansion for eta=" << eta << " exceeded nu=-1e6";
        throw EvaluationError(os.str());
      }
    }
    lo = 1.0 - d;
    if (d > kInset) hi = 1.0 - 0.5 * d;
  } else {
    lo = iv.lo + kInset;
    if (f(lo) < 0.0) {
      std::ostringstream os;
      os << "solve_level: no sign change near left asymptote of level " << level
         << " for eta=" << eta;
      throw EvaluationError(os.str());
    }
  }

  double flo = f(lo);
  double fhi = f(hi);
  for (int it = 0; it < 400; ++it) {
    const double width_floor =
        std::max(1e-12, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(lo));
    if (hi - lo <= width_floor) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (fm > 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }

  double best = std::abs(flo) <= std::abs(fhi) ? lo : hi;
  double best_res = std::min(std::abs(flo), std::abs(fhi));
  if (flo != fhi) {
    const double sec = lo + (hi - lo) * flo / (flo - fhi);
    if (sec > lo && sec < hi) {
      const double r = std::abs(f(sec));
      if (r < best_res) {
        best = sec;
        best_res = r;
      }
    }
  }
  if (best_res > tol * (1.0 + std::abs(eta))) {
    std::ostringstream os;
    os << "solve_level: residual " << best_res << " above tolerance at level " << level
       << ", eta=" << eta;
    throw EvaluationError(os.str());
  }
  return best;
}

struct EigenLevel {
  int level = 0;
  double nu = 0.0;
  double energy = 0.0;  // nu + 1/2
  double c = 0.0;       // normalization of D_nu on the half-line
};

struct Spectrum {
  ExtensionParameter parameter;
  std::vector<EigenLevel> levels;  // strictly increasing nu

  [[nodiscard]] std::size_t size() const { return levels.size(); }
  [[nodiscard]] const EigenLevel& operator[](std::size_t i) const { return levels[i]; }
};

inline constexpr int kMaxLevels = 60;

/// Levels M = 1..m_max. xi = 0 gives the odd integers, eta = 0 the even ones.
inline Spectrum spectrum(const ExtensionParameter& param, int m_max, double tol = 1e-10) {
  if (m_max < 1 || m_max > kMaxLevels) {
    std::ostringstream os;
    os << "spectrum: level count " << m_max << " outside [1, " << kMaxLevels << "]";
    throw DomainError(os.str());
  }
  Spectrum out{param, {}};
  out.levels.reserve(static_cast<std::size_t>(m_max));
  for (int m = 1; m <= m_max; ++m) {
    double nu;
    if (param.dirichlet())
      nu = 2.0 * m - 1.0;
    else if (param.neumann())
      nu = 2.0 * m - 2.0;
    else
      nu = solve_level(*param.eta, m, tol);
    out.levels.push_back({m, nu, nu + 0.5, normalization(nu).c});
  }
  return out;
}

}  // namespace halfosc
