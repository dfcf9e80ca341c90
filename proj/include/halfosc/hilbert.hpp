// Half-line L2 machinery: composite Gauss-Legendre quadrature on [0, x_max],
// inner products, Gram matrices, boundary residuals, expansion in the
// eigenbasis and the mirrored full-line basis.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "halfosc/pcf.hpp"
#include "halfosc/specfun.hpp"
#include "halfosc/spectrum.hpp"

namespace halfosc {

struct QuadratureRule {
  double x_max = 0.0;
  std::vector<std::pair<double, double>> panels;
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

namespace detail {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    x[lo] = -z;
    x[hi] = z;
    w[lo] = w[hi] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

}  // namespace detail

/// Composite Gauss-Legendre rule on [0, x_max]. With the defaults (30, 1, 24)
/// the truncated tail of integrands bounded by e^{-x^2/2} x^{2 nu}, nu <= 20,
/// is below 1e-12: at x = 30 the bound is e^{-450} 30^{40} ~ e^{-314}.
inline QuadratureRule quadrature_rule(double x_max = 30.0, double panel_width = 1.0,
                                      int nodes_per_panel = 24) {
  if (!(x_max >= 10.0 && x_max <= 60.0)) throw DomainError("quadrature_rule: x_max outside [10, 60]");
  if (nodes_per_panel < 8 || nodes_per_panel > 64)
    throw DomainError("quadrature_rule: nodes_per_panel outside [8, 64]");
  if (!(panel_width > 0.0) || panel_width > x_max)
    throw DomainError("quadrature_rule: panel_width must lie in (0, x_max]");

  std::vector<double> gx, gw;
  detail::gauss_legendre(nodes_per_panel, gx, gw);

  QuadratureRule rule;
  rule.x_max = x_max;
  const auto n_panels = static_cast<std::size_t>(std::ceil(x_max / panel_width - 1e-12));
  for (std::size_t p = 0; p < n_panels; ++p) {
    const double a = static_cast<double>(p) * panel_width;
    const double b = p + 1 == n_panels ? x_max : std::min(x_max, a + panel_width);
    rule.panels.emplace_back(a, b);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < gx.size(); ++i) {
      rule.nodes.push_back(mid + half * gx[i]);
      rule.weights.push_back(half * gw[i]);
    }
  }
  return rule;
}

/// Quadrature of f over [0, x_max], fixed order with compensated accumulation.
template <typename F>
double integrate(F&& f, const QuadratureRule& rule) {
  detail::CompensatedSum<double> acc;
  for (std::size_t i = 0; i < rule.size(); ++i) acc.add(rule.weights[i] * f(rule.nodes[i]));
  return acc.value();
}

template <typename F, typename G>
double inner_product(F&& f, G&& g, const QuadratureRule& rule) {
  detail::CompensatedSum<double> acc;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i];
    acc.add(rule.weights[i] * f(x) * g(x));
  }
  return acc.value();
}

/// Weighted dot product of two sample vectors taken at the rule nodes.
inline double inner_product_samples(const std::vector<double>& f, const std::vector<double>& g,
                                    const QuadratureRule& rule) {
  detail::CompensatedSum<double> acc;
  for (std::size_t i = 0; i < rule.size(); ++i) acc.add(rule.weights[i] * f[i] * g[i]);
  return acc.value();
}

/// Normalized eigenfunction c D_nu on the half-line.
class Eigenfunction {
 public:
  Eigenfunction(double nu, double c) : eval_(nu), c_(c) {}
  explicit Eigenfunction(const EigenLevel& level) : Eigenfunction(level.nu, level.c) {}

  double operator()(double x) const { return c_ * eval_.value(x); }
  [[nodiscard]] double derivative(double x) const { return c_ * eval_.derivative(x); }
  [[nodiscard]] double nu() const { return eval_.nu(); }
  [[nodiscard]] double c() const { return c_; }

 private:
  PcfEvaluator eval_;
  double c_;
};

inline std::vector<Eigenfunction> eigenbasis(const Spectrum& spec, std::size_t n) {
  if (n > spec.size()) throw DomainError("eigenbasis: more functions requested than levels");
  std::vector<Eigenfunction> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(spec[i]);
  return out;
}

inline std::vector<double> sample(const Eigenfunction& e, const std::vector<double>& xs) {
  std::vector<double> v(xs.size());
  std::transform(xs.begin(), xs.end(), v.begin(), [&](double x) { return e(x); });
  return v;
}

/// Dense row-major square matrix.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  [[nodiscard]] std::size_t size() const { return n_; }

  [[nodiscard]] double max_deviation_from_identity() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        worst = std::max(worst, std::abs((*this)(i, j) - (i == j ? 1.0 : 0.0)));
    return worst;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// G_ij = <c_i D_{nu_i}, c_j D_{nu_j}> for the first n levels.
inline Matrix gram_matrix(const Spectrum& spec, std::size_t n, const QuadratureRule& rule) {
  const auto basis = eigenbasis(spec, n);
  std::vector<std::vector<double>> samples;
  samples.reserve(n);
  for (const auto& e : basis) samples.push_back(sample(e, rule.nodes));
  Matrix g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      g(i, j) = g(j, i) = inner_product_samples(samples[i], samples[j], rule);
  return g;
}

/// Magnitude-based residual of D_nu(0) cos(xi) - D_nu'(0) sin(xi) = 0:
/// | |D(0) cos xi| - |D'(0) sin xi| | / max(|D(0)|, |D'(0)|, 1).
/// Comparing magnitudes makes the check independent of the sign attached to eta.
inline double boundary_residual(double nu, double xi) {
  if (!(xi >= 0.0 && xi < std::numbers::pi)) throw DomainError("boundary_residual: xi outside [0, pi)");
  const auto o = pcf_origin(nu);
  const double c = xi == 0.5 * std::numbers::pi ? 0.0 : std::cos(xi);
  const double s = std::sin(xi);
  const double scale = std::max({std::abs(o.value), std::abs(o.derivative), 1.0});
  return std::abs(std::abs(o.value * c) - std::abs(o.derivative * s)) / scale;
}

/// Real samples of a function on a strictly increasing grid.
struct GridFunction {
  std::vector<double> grid;
  std::vector<double> values;

  void validate() const {
    if (grid.size() != values.size()) throw DomainError("GridFunction: grid/value length mismatch");
    if (grid.empty()) throw DomainError("GridFunction: empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!std::isfinite(grid[i]) || !std::isfinite(values[i]))
        throw DomainError("GridFunction: non-finite sample at index " + std::to_string(i));
      if (i > 0 && !(grid[i] > grid[i - 1]))
        throw DomainError("GridFunction: abscissas not strictly increasing at index " +
                          std::to_string(i));
    }
  }

  /// Cubic (4-point Lagrange) interpolation; zero beyond the last sample.
  [[nodiscard]] double interpolate(double x) const {
    if (x < grid.front()) {
      std::ostringstream os;
      os << "GridFunction: x=" << x << " below first sample " << grid.front();
      throw DomainError(os.str());
    }
    if (x > grid.back()) return 0.0;
    const std::size_t n = grid.size();
    if (n < 4) throw DomainError("GridFunction: cubic interpolation needs at least 4 samples");
    auto it = std::upper_bound(grid.begin(), grid.end(), x);
    auto k = static_cast<std::size_t>(std::distance(grid.begin(), it));
    // Stencil k-2 .. k+1, clamped to the grid.
    std::size_t s = k >= 2 ? k - 2 : 0;
    s = std::min(s, n - 4);
    double acc = 0.0;
    for (std::size_t i = s; i < s + 4; ++i) {
      double l = 1.0;
      for (std::size_t j = s; j < s + 4; ++j)
        if (j != i) l *= (x - grid[j]) / (grid[i] - grid[j]);
      acc += l * values[i];
    }
    return acc;
  }
};

inline constexpr double kMaxInterpolationSpacing = 0.25;

/// Samples of f at the rule nodes by cubic interpolation.
inline std::vector<double> resample(const GridFunction& f, const QuadratureRule& rule) {
  f.validate();
  for (std::size_t i = 1; i < f.grid.size(); ++i)
    if (f.grid[i] - f.grid[i - 1] > kMaxInterpolationSpacing) {
      std::ostringstream os;
      os << "GridFunction: spacing " << f.grid[i] - f.grid[i - 1] << " at x=" << f.grid[i - 1]
         << " exceeds " << kMaxInterpolationSpacing;
      throw DomainError(os.str());
    }
  std::vector<double> v(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) v[i] = f.interpolate(rule.nodes[i]);
  return v;
}

/// a_M = <f, c_M D_{nu_M}>, M = 1..n, for f given by its samples at the rule nodes.
inline std::vector<double> project_samples(const std::vector<double>& f, const Spectrum& spec,
                                           std::size_t n, const QuadratureRule& rule) {
  if (f.size() != rule.size()) throw DomainError("project: sample count differs from rule size");
  std::vector<double> a;
  a.reserve(n);
  for (const auto& e : eigenbasis(spec, n))
    a.push_back(inner_product_samples(f, sample(e, rule.nodes), rule));
  return a;
}

template <typename F>
std::vector<double> project(F&& f, const Spectrum& spec, std::size_t n, const QuadratureRule& rule) {
  std::vector<double> v(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) v[i] = f(rule.nodes[i]);
  return project_samples(v, spec, n, rule);
}

inline std::vector<double> project(const GridFunction& f, const Spectrum& spec, std::size_t n,
                                   const QuadratureRule& rule) {
  return project_samples(resample(f, rule), spec, n, rule);
}

/// Pointwise sum_M a_M c_M D_{nu_M}(x) on the grid.
inline GridFunction reconstruct(const std::vector<double>& coeffs, const Spectrum& spec,
                                const std::vector<double>& grid) {
  if (coeffs.size() > spec.size()) throw DomainError("reconstruct: more coefficients than levels");
  GridFunction out{grid, std::vector<double>(grid.size(), 0.0)};
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    if (coeffs[m] == 0.0) continue;
    const Eigenfunction e(spec[m]);
    for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] += coeffs[m] * e(grid[i]);
  }
  return out;
}

/// ||f - sum_{M<=n} a_M e_M|| over the rule, f given at the rule nodes.
inline double projection_residual(const std::vector<double>& f, const std::vector<double>& coeffs,
                                  const Spectrum& spec, std::size_t n, const QuadratureRule& rule) {
  std::vector<double> r = f;
  const auto basis = eigenbasis(spec, n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < rule.size(); ++i) r[i] -= coeffs[m] * basis[m](rule.nodes[i]);
  return std::sqrt(inner_product_samples(r, r, rule));
}

enum class HalfLine { Right, Left };

/// Element of the combined basis on the real line: c D_nu on one half-line,
/// zero on the other; the left family is the mirror D_nu(-x).
class FullLineElement {
 public:
  FullLineElement(HalfLine side, const EigenLevel& level) : side_(side), level_(level), e_(level) {}

  double operator()(double x) const {
    if (side_ == HalfLine::Right) return x < 0.0 ? 0.0 : e_(x);
    return x > 0.0 ? 0.0 : e_(-x);
  }
  [[nodiscard]] HalfLine side() const { return side_; }
  [[nodiscard]] const EigenLevel& level() const { return level_; }

 private:
  HalfLine side_;
  EigenLevel level_;
  Eigenfunction e_;
};

struct FullLineBasis {
  Spectrum right;  // xi family on x > 0
  Spectrum left;   // sigma family on x < 0
  std::vector<FullLineElement> elements;  // right family first, then left
};

inline FullLineBasis fullline_basis(double xi, double sigma, int m_max) {
  FullLineBasis b{spectrum(xi_to_eta(xi), m_max), spectrum(xi_to_eta(sigma), m_max), {}};
  for (const auto& l : b.right.levels) b.elements.emplace_back(HalfLine::Right, l);
  for (const auto& l : b.left.levels) b.elements.emplace_back(HalfLine::Left, l);
  return b;
}

/// Inner product over the real line using the half-line rule on both sides.
template <typename F, typename G>
double inner_product_two_sided(F&& f, G&& g, const QuadratureRule& rule) {
  detail::CompensatedSum<double> acc;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i];
    acc.add(rule.weights[i] * f(x) * g(x));
    acc.add(rule.weights[i] * f(-x) * g(-x));
  }
  return acc.value();
}

inline Matrix fullline_gram(const FullLineBasis& basis, const QuadratureRule& rule) {
  const std::size_t n = basis.elements.size();
  std::vector<std::vector<double>> pos(n), neg(n);
  for (std::size_t k = 0; k < n; ++k) {
    pos[k].resize(rule.size());
    neg[k].resize(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
      pos[k][i] = basis.elements[k](rule.nodes[i]);
      neg[k][i] = basis.elements[k](-rule.nodes[i]);
    }
  }
  Matrix g(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      detail::CompensatedSum<double> acc;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        acc.add(rule.weights[i] * pos[a][i] * pos[b][i]);
        acc.add(rule.weights[i] * neg[a][i] * neg[b][i]);
      }
      g(a, b) = g(b, a) = acc.value();
    }
  return g;
}

/// Reads two-column CSV (x, value). Blank lines and '#' lines are skipped; a
/// first non-numeric row is taken as a header.
inline GridFunction read_grid_function_csv(std::istream& in) {
  GridFunction f;
  std::string line;
  std::size_t row = 0;
  bool first_data = true;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      if (first_data) {
        first_data = false;
        continue;
      }
      throw DomainError("CSV row " + std::to_string(row) + ": expected 2 columns, found 1");
    }
    if (line.find(',', comma + 1) != std::string::npos)
      throw DomainError("CSV row " + std::to_string(row) + ": expected 2 columns, found more");
    const std::string cols[2] = {line.substr(0, comma), line.substr(comma + 1)};
    double v[2];
    bool numeric = true;
    for (int c = 0; c < 2; ++c) {
      try {
        std::size_t used = 0;
        v[c] = std::stod(cols[c], &used);
        if (cols[c].find_first_not_of(" \t", used) != std::string::npos) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
      if (!numeric) {
        if (first_data && f.grid.empty()) break;
        throw DomainError("CSV row " + std::to_string(row) + ", column " + std::to_string(c + 1) +
                          ": not a number: '" + cols[c] + "'");
      }
    }
    first_data = false;
    if (!numeric) continue;
    if (!f.grid.empty() && !(v[0] > f.grid.back()))
      throw DomainError("CSV row " + std::to_string(row) + ", column 1: x not strictly increasing");
    f.grid.push_back(v[0]);
    f.values.push_back(v[1]);
  }
  if (f.grid.empty()) throw DomainError("CSV: no data rows");
  f.validate();
  return f;
}

}  // namespace halfosc
