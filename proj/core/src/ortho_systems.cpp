// ortho_systems.cpp

#include "ladderlab/ortho_systems.hpp"

#include "ladderlab/errors.hpp"
#include "ladderlab/zeta_critical.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace ladderlab::ortho {
namespace {

// Excursions are measured against the height: u and v carry absolute
// errors of order (solver tolerance) * T.
constexpr double kMaxExcursion = 1e-9;

void check_depths(const Depths& d) {
  for (int p : d) {
    if (p < 0 || p > kMaxDepth) throw DomainError("ortho: depths must be in 0..3");
  }
}

}  // namespace

double legendre(int n, double x) {
  if (n < 0) throw DomainError("legendre: n must be >= 0");
  if (n == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

void legendre_all(double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() > 1) out[1] = x;
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    const double kd = static_cast<double>(k);
    out[k + 1] = ((2.0 * kd + 1.0) * x * out[k] - kd * out[k - 1]) / (kd + 1.0);
  }
}

// ---------------------------------------------------------------------------

Generator::Generator(const hl::ZetaGrid& grid, double T, Depths depths, const ladder::LadderConstants& k)
    : grid_(&grid), T_(T), depths_(depths), k_(k) {
  if (!(T >= ladder::kMinHeight && T <= kMaxBaseT)) throw DomainError("ortho: T must be in [100, 1e4]");
  check_depths(depths);
  const int deepest = *std::max_element(depths.begin(), depths.end());
  levels_[0] = {0, T, T + 2.0};
  if (deepest > 0) {
    const auto lo = ladder::reverse_iterate(grid, T, deepest, k);
    const auto hi = ladder::reverse_iterate(grid, T + 2.0, deepest, k);
    for (int p = 1; p <= deepest; ++p) {
      levels_[static_cast<std::size_t>(p)] = {p, lo.reverse[static_cast<std::size_t>(p)],
                                              hi.reverse[static_cast<std::size_t>(p)]};
    }
  }
}

const LevelMap& Generator::level(int p) const {
  if (p < 0 || p > kMaxDepth) throw DomainError("ortho: level out of range");
  return levels_[static_cast<std::size_t>(p)];
}

double Generator::check_into(double x, double lo, double hi) const {
  const double out = std::max({lo - x, x - hi, 0.0}) / T_;
  if (out > kMaxExcursion) {
    throw ConvergenceError("ortho: ladder map left its interval [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "] at " + std::to_string(x),
                           out);
  }
  max_excursion_ = std::max(max_excursion_, out);
  return std::clamp(x, lo, hi);
}

LevelValue Generator::map(int p, double t) const {
  if (!(t >= -1.0 && t <= 1.0)) throw DomainError("ortho: t must be in [-1, 1]");
  LevelValue out;
  if (p == 0) {
    out.u = t;
    return out;
  }
  const LevelMap& L = level(p);
  if (L.hi <= L.lo) throw DomainError("ortho: depth not prepared for this generator");
  double x = t == 1.0 ? L.hi : L.lo + 0.5 * (t + 1.0) * (L.hi - L.lo);
  for (int r = 0; r < p; ++r) {
    const LevelMap& Lr = levels_[static_cast<std::size_t>(p - r)];
    x = check_into(x, Lr.lo, Lr.hi);
    out.v.push_back(x);
    x = ladder::phi1(*grid_, x, k_);
  }
  out.u = check_into(x - T_ - 1.0, -1.0, 1.0);
  return out;
}

Generator::Point Generator::evaluate(double t) const {
  Point pt{t, 1.0};
  // p3 acts first, p1 last.
  for (int i = 2; i >= 0; --i) {
    const int p = depths_[static_cast<std::size_t>(i)];
    if (p == 0) continue;
    const LevelValue lv = map(p, pt.argument);
    for (std::size_t r = 0; r < lv.v.size(); ++r) {
      // phi1(v^r) is v^(r+1), or T + 1 + u for the last node.
      const double y = r + 1 < lv.v.size() ? lv.v[r + 1] : lv.u + T_ + 1.0;
      pt.weight *= std::sqrt(zeta::modulus_sq(lv.v[r]) / (std::log(y) + 1.0 + k_.c - kLnTwoPi));
    }
    pt.argument = lv.u;
  }
  return pt;
}

double Generator::function(int n, double t) const {
  if (n < 0 || n > kMaxDegree) throw DomainError("ortho: n must be in [0, 8]");
  const Point pt = evaluate(t);
  return legendre(n, pt.argument) * pt.weight;
}

double Generator::jacobian_scale() const {
  double s = 1.0;
  for (int p : depths_) {
    if (p > 0) s *= 2.0 / (level(p).hi - level(p).lo);
  }
  return s;
}

// ---------------------------------------------------------------------------

double automorphism_u(const hl::ZetaGrid& grid, double T, int p, double t, const ladder::LadderConstants& k) {
  return Generator(grid, T, {p, 0, 0}, k).map(p, t).u;
}

std::vector<double> automorphism_v(const hl::ZetaGrid& grid, double T, int p, double t,
                                   const ladder::LadderConstants& k) {
  return Generator(grid, T, {p, 0, 0}, k).map(p, t).v;
}

double generated_function(const hl::ZetaGrid& grid, double T, Depths depths, int n, double t,
                          const ladder::LadderConstants& k) {
  return Generator(grid, T, depths, k).function(n, t);
}

std::vector<WeightTerm> weight_log_decomposition(const hl::ZetaGrid& grid, double T, Depths depths, double t,
                                                 const ladder::LadderConstants& k) {
  const Generator gen(grid, T, depths, k);
  std::vector<WeightTerm> out;
  double s = t;
  for (int i = 2; i >= 0; --i) {
    const int p = depths[static_cast<std::size_t>(i)];
    if (p == 0) continue;
    const LevelValue lv = gen.map(p, s);
    for (std::size_t r = 0; r < lv.v.size(); ++r) {
      const double y = r + 1 < lv.v.size() ? lv.v[r + 1] : lv.u + T + 1.0;
      WeightTerm w;
      w.level = i + 1;
      w.r = static_cast<int>(r);
      w.v = lv.v[r];
      w.log_zeta = 0.5 * std::log(zeta::modulus_sq(w.v));
      w.log_density = std::log(std::log(y) + 1.0 + k.c - kLnTwoPi);
      w.log_zt = w.log_zeta - 0.5 * w.log_density;
      out.push_back(w);
    }
    s = lv.u;
  }
  return out;
}

// ---------------------------------------------------------------------------

double GeneratedSystem::max_normalized_offdiagonal(int limit) const {
  limit = std::min(limit, n_max);
  double worst = 0.0;
  for (int n = 0; n <= limit; ++n) {
    for (int m = 0; m <= limit; ++m) {
      if (n == m) continue;
      worst = std::max(worst, std::abs(entry(n, m)) / std::sqrt(entry(n, n) * entry(m, m)));
    }
  }
  return worst;
}

double GeneratedSystem::max_diagonal_deviation() const {
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const double expected = 2.0 / (2.0 * n + 1.0) * jacobian_scale;
    worst = std::max(worst, std::abs(entry(n, n) / expected - 1.0));
  }
  return worst;
}

namespace {

struct Panel {
  double a, b;
  std::vector<double> value;
  double error;
};

}  // namespace

GeneratedSystem gram_matrix(const hl::ZetaGrid& grid, double T, Depths depths, int n_max,
                            const GramOptions& options, const ladder::LadderConstants& k) {
  if (n_max < 0 || n_max > kMaxDegree) throw DomainError("gram_matrix: n_max must be in [0, 8]");
  const Generator gen(grid, T, depths, k);
  const std::size_t dim = static_cast<std::size_t>(n_max) + 1;
  const std::size_t pairs = dim * (dim + 1) / 2;

  GeneratedSystem sys;
  sys.base_T = T;
  sys.depths = depths;
  sys.n_max = n_max;
  sys.jacobian_scale = gen.jacobian_scale();

  const auto& xk = boost::math::quadrature::gauss_kronrod<double, 15>::abscissa();
  const auto& wk = boost::math::quadrature::gauss_kronrod<double, 15>::weights();
  const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();

  // Integrand vector at one node: P_n P_m W^2 for n <= m.
  auto integrand = [&](double t, std::vector<double>& out) {
    const auto pt = gen.evaluate(t);
    sys.automorphism_cache.push_back({t, pt.argument, pt.weight});
    std::vector<double> P(dim);
    legendre_all(pt.argument, P);
    const double w2 = pt.weight * pt.weight;
    std::size_t idx = 0;
    for (std::size_t n = 0; n < dim; ++n) {
      for (std::size_t m = n; m < dim; ++m) out[idx++] = P[n] * P[m] * w2;
    }
  };

  auto panel = [&](double a, double b) {
    Panel pn{a, b, std::vector<double>(pairs, 0.0), 0.0};
    std::vector<double> gauss(pairs, 0.0), f(pairs);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (std::size_t i = 0; i < xk.size(); ++i) {
      for (int side = 0; side < (i == 0 ? 1 : 2); ++side) {
        integrand(side == 0 ? c + h * xk[i] : c - h * xk[i], f);
        for (std::size_t j = 0; j < pairs; ++j) {
          pn.value[j] += wk[i] * f[j];
          if (i % 2 == 0) gauss[j] += wg[i / 2] * f[j];
        }
      }
    }
    for (std::size_t j = 0; j < pairs; ++j) {
      pn.value[j] *= h;
      pn.error = std::max(pn.error, std::abs(pn.value[j] - h * gauss[j]));
    }
    return pn;
  };

  // Coarse pass fixes the scale of the error test.
  constexpr int kStart = 8;
  std::vector<Panel> todo;
  for (int i = kStart - 1; i >= 0; --i) {
    todo.push_back(panel(-1.0 + 2.0 * i / kStart, -1.0 + 2.0 * (i + 1) / kStart));
  }
  double scale = 0.0;
  for (const auto& pn : todo) scale += std::abs(pn.value[0]);
  scale = std::max(scale, 1e-300);

  std::vector<double> total(pairs, 0.0);
  while (!todo.empty()) {
    Panel pn = std::move(todo.back());
    todo.pop_back();
    const double width = pn.b - pn.a;
    if (pn.error <= options.rel_tol * scale * width * 0.5 || width < 1e-6) {
      for (std::size_t j = 0; j < pairs; ++j) total[j] += pn.value[j];
      ++sys.panels;
      continue;
    }
    if (sys.panels + static_cast<int>(todo.size()) + 2 > options.max_panels) {
      throw ConvergenceError("gram_matrix: panel budget exhausted", pn.error / scale);
    }
    const double mid = 0.5 * (pn.a + pn.b);
    todo.push_back(panel(mid, pn.b));
    todo.push_back(panel(pn.a, mid));
  }

  sys.gram.assign(dim * dim, 0.0);
  std::size_t idx = 0;
  for (std::size_t n = 0; n < dim; ++n) {
    for (std::size_t m = n; m < dim; ++m) {
      sys.gram[n * dim + m] = total[idx];
      sys.gram[m * dim + n] = total[idx];
      ++idx;
    }
  }
  for (std::size_t n = 0; n < dim; ++n) {
    if (!(sys.gram[n * dim + n] > 0.0)) throw ConvergenceError("gram_matrix: nonpositive diagonal", sys.gram[n * dim + n]);
  }
  sys.max_excursion = gen.max_excursion();
  return sys;
}

void write_gram_csv(const GeneratedSystem& system, std::ostream& out) {
  out << "n,m,value\n";
  const auto old = out.precision(17);
  for (int n = 0; n <= system.n_max; ++n) {
    for (int m = 0; m <= system.n_max; ++m) out << n << ',' << m << ',' << system.entry(n, m) << '\n';
  }
  out.precision(old);
}

}  // namespace ladderlab::ortho
