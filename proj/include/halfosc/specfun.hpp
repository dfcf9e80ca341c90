// Real-valued special functions: Gamma, 1/Gamma, digamma, the alternating
// beta series, Kummer's confluent hypergeometric series and integer-order
// parabolic cylinder functions.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace halfosc {

/// Result of evaluating a function that has poles on the real line.
struct SpecialValue {
  double value = 0.0;
  bool pole_flag = false;
  bool overflow = false;  // finite argument, result beyond the double range

  [[nodiscard]] bool finite() const { return !pole_flag && !overflow; }
};

/// Thrown for arguments outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when a numerical method fails to reach its target accuracy.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline constexpr double kPoleTolerance = 1e-9;

// Neumaier-compensated running sum.
template <typename T>
class CompensatedSum {
 public:
  void add(T v) {
    const T t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  [[nodiscard]] T value() const { return sum_ + comp_; }

 private:
  T sum_{0};
  T comp_{0};
};

/// Nearest nonpositive integer when x is within the pole tolerance of one.
inline bool near_nonpositive_integer(double x) {
  if (x > kPoleTolerance) return false;
  return std::abs(x - std::nearbyint(x)) < kPoleTolerance;
}

// sin(pi x) and cos(pi x) with exact argument reduction, so that zeros at the
// integers (resp. half-integers) are exact.
inline double sin_pi(double x) {
  const double n = std::nearbyint(x);
  const double r = x - n;  // exact, |r| <= 1/2
  const double s = std::sin(std::numbers::pi * r);
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

inline double cos_pi(double x) {
  const double n = std::nearbyint(x);
  const double r = x - n;
  if (std::abs(r) == 0.5) return 0.0;
  const double c = std::cos(std::numbers::pi * r);
  return std::fmod(n, 2.0) == 0.0 ? c : -c;
}

// Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficients).
inline constexpr double kLanczosG = 607.0 / 128.0;
inline constexpr std::array<double, 15> kLanczosCoef = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,
    .15808870322491248884e-3,   -.21026444172410488319e-3,
    .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,
    .36899182659531622704e-5};

inline double lanczos_series(double z) {  // z = x - 1
  double s = kLanczosCoef[0];
  for (std::size_t i = kLanczosCoef.size() - 1; i >= 1; --i)
    s += kLanczosCoef[i] / (z + static_cast<double>(i));
  return s;
}

// Gamma(x) for x >= 0.5 without overflow checks.
inline double gamma_positive(double x) {
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  const double s = lanczos_series(z);
  // Split the power to delay overflow for x up to ~171.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * s;
}

inline double log_gamma_positive(double x) {
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(lanczos_series(z));
}

inline constexpr double kGammaOverflow = 171.6;

}  // namespace detail

/// Gamma function. Poles at the nonpositive integers are flagged rather than
/// reported as infinities; overflow beyond the double range is reported
/// separately with a signed infinite value.
inline SpecialValue gamma(double x) {
  if (!std::isfinite(x)) throw DomainError("gamma: non-finite argument");
  if (detail::near_nonpositive_integer(x))
    return {std::numeric_limits<double>::quiet_NaN(), true, false};
  if (x >= 0.5) {
    if (x > detail::kGammaOverflow)
      return {std::numeric_limits<double>::infinity(), false, true};
    return {detail::gamma_positive(x), false, false};
  }
  // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
  const double one_minus = 1.0 - x;
  if (one_minus > detail::kGammaOverflow) {
    // |Gamma(x)| underflows to zero long before this matters for callers.
    return {0.0, false, false};
  }
  return {std::numbers::pi / (detail::sin_pi(x) * detail::gamma_positive(one_minus)),
          false, false};
}

/// 1/Gamma(x), an entire function: exactly zero at the nonpositive integers.
inline double recip_gamma(double x) {
  if (!std::isfinite(x)) throw DomainError("recip_gamma: non-finite argument");
  if (x >= 0.5) {
    if (x > detail::kGammaOverflow) return 0.0;
    return 1.0 / detail::gamma_positive(x);
  }
  if (x == std::nearbyint(x)) return 0.0;
  const double one_minus = 1.0 - x;
  if (one_minus > detail::kGammaOverflow) {
    const double sign = detail::sin_pi(x) > 0 ? 1.0 : -1.0;
    return sign * std::numeric_limits<double>::infinity();
  }
  return detail::sin_pi(x) * detail::gamma_positive(one_minus) / std::numbers::pi;
}

/// log|Gamma(x)| for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  if (x < 0.5) return std::log(std::numbers::pi / (std::sin(std::numbers::pi * x))) -
                      detail::log_gamma_positive(1.0 - x);
  return detail::log_gamma_positive(x);
}

/// Digamma function psi(x) = d/dx log Gamma(x).
inline SpecialValue digamma(double x) {
  if (!std::isfinite(x)) throw DomainError("digamma: non-finite argument");
  if (detail::near_nonpositive_integer(x))
    return {std::numeric_limits<double>::quiet_NaN(), true, false};

  double reflection = 0.0;
  if (x < 0.5) {
    // psi(x) = psi(1-x) - pi cot(pi x)
    reflection = -std::numbers::pi * detail::cos_pi(x) / detail::sin_pi(x);
    x = 1.0 - x;
  }
  detail::CompensatedSum<double> acc;
  acc.add(reflection);
  while (x < 10.0) {
    acc.add(-1.0 / x);
    x += 1.0;
  }
  // Asymptotic series with Bernoulli numbers B_2k / (2k).
  constexpr std::array<double, 8> kBern = {1.0 / 12.0,        -1.0 / 120.0,
                                           1.0 / 252.0,       -1.0 / 240.0,
                                           1.0 / 132.0,       -691.0 / 32760.0,
                                           1.0 / 12.0,        -3617.0 / 8160.0};
  const double inv2 = 1.0 / (x * x);
  double tail = 0.0;
  for (std::size_t k = kBern.size(); k-- > 0;) tail = (tail + kBern[k]) * inv2;
  acc.add(std::log(x));
  acc.add(-0.5 / x);
  acc.add(-tail);
  return {acc.value(), false, false};
}

/// Alternating series beta(x) = sum_k (-1)^k / (x + k), evaluated in the
/// pairwise-grouped form sum_k 1/((x+2k)(x+2k+1)) with an Euler-Maclaurin tail.
inline SpecialValue beta_series(double x) {
  if (!std::isfinite(x)) throw DomainError("beta_series: non-finite argument");
  if (detail::near_nonpositive_integer(x))
    return {std::numeric_limits<double>::quiet_NaN(), true, false};

  constexpr long kTerms = 10000;
  // Start the tail only once the grouped terms are all positive and small.
  long n_terms = kTerms;
  if (x < 0) n_terms += static_cast<long>(std::ceil(-x / 2.0));

  detail::CompensatedSum<double> acc;
  for (long k = 0; k < n_terms; ++k) {
    const double u = x + 2.0 * static_cast<double>(k);
    acc.add(1.0 / (u * (u + 1.0)));
  }
  // Tail sum_{k>=N} f(k), f(k) = 1/(u(u+1)), u = x + 2k:
  // integral + f/2 - f'/12 + f'''/720.
  const double u = x + 2.0 * static_cast<double>(n_terms);
  const double integral = 0.5 * std::log1p(1.0 / u);
  const double f = 1.0 / (u * (u + 1.0));
  // f(k) = 1/u - 1/(u+1); derivatives in k carry a factor 2 per order.
  const double d1 = 2.0 * (-1.0 / (u * u) + 1.0 / ((u + 1.0) * (u + 1.0)));
  const double d3 = 8.0 * (-6.0 / std::pow(u, 4) + 6.0 / std::pow(u + 1.0, 4));
  acc.add(integral + 0.5 * f - d1 / 12.0 + d3 / 720.0);
  return {acc.value(), false, false};
}

/// beta(x) through the digamma identity beta(x) = (psi((x+1)/2) - psi(x/2)) / 2.
inline SpecialValue beta_via_digamma(double x) {
  if (detail::near_nonpositive_integer(x))
    return {std::numeric_limits<double>::quiet_NaN(), true, false};
  const SpecialValue a = digamma(0.5 * (x + 1.0));
  const SpecialValue b = digamma(0.5 * x);
  if (a.pole_flag || b.pole_flag)
    return {std::numeric_limits<double>::quiet_NaN(), true, false};
  return {0.5 * (a.value - b.value), false, false};
}

/// Kummer's function 1F1(a; b; z) by direct power series. Summation stops once
/// two consecutive terms fall below 1e-17 of the running sum.
template <typename T = double>
T kummer(T a, T b, T z, std::size_t max_terms = 20000) {
  if (b <= 0 && b == std::nearbyint(b))
    throw DomainError("kummer: b must not be a nonpositive integer");
  detail::CompensatedSum<T> acc;
  T term = 1;
  acc.add(term);
  std::size_t small_run = 0;
  for (std::size_t k = 0; k < max_terms; ++k) {
    const T kk = static_cast<T>(k);
    term *= (a + kk) / (b + kk) * z / (kk + 1);
    acc.add(term);
    if (term == 0) return acc.value();
    if (std::abs(term) <= T(1e-17) * std::abs(acc.value())) {
      if (++small_run == 2) return acc.value();
    } else {
      small_run = 0;
    }
  }
  throw EvaluationError("kummer: series did not converge within " +
                        std::to_string(max_terms) + " terms (a=" +
                        std::to_string(static_cast<double>(a)) + ", b=" +
                        std::to_string(static_cast<double>(b)) + ", z=" +
                        std::to_string(static_cast<double>(z)) + ")");
}

/// Integer-order parabolic cylinder function D_n(x) = exp(-x^2/4) He_n(x),
/// with He_n the probabilists' Hermite polynomial (= 2^{-n/2} H_n(x/sqrt 2)).
inline double hermite_pcf(unsigned n, double x) {
  const double gauss = std::exp(-0.25 * x * x);
  if (n == 0) return gauss;
  double prev = 1.0;
  double cur = x;
  for (unsigned k = 1; k < n; ++k) {
    const double next = x * cur - static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  return gauss * cur;
}

/// dD_n/dx = n D_{n-1}(x) - (x/2) D_n(x).
inline double hermite_pcf_derivative(unsigned n, double x) {
  const double dn = hermite_pcf(n, x);
  if (n == 0) return -0.5 * x * dn;
  return static_cast<double>(n) * hermite_pcf(n - 1, x) - 0.5 * x * dn;
}

}  // namespace halfosc
