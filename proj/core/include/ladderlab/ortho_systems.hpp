// ortho_systems.hpp
//
// Legendre systems regenerated through the ladder. For depth p the affine map
//
//     A_p(t) = T^p + (t + 1) ((T+2)^p - T^p) / 2
//
// sends [-1,1] onto [T^p, (T+2)^p] (reverse iterates), and
//
//     u_p(t)   = phi1^p(A_p(t)) - T - 1       in [-1, 1]
//     v_p^r(t) = phi1^r(A_p(t))               in [T^(p-r), (T+2)^(p-r)], r < p.
//
// Printed with "- T^p" in place of "+ T^p" the affine map lands at negative
// heights; the version above is the one consistent with the containment of
// v_p^r. The generated system of depths (p1, p2, p3) is
//
//     P_n(u_p1(u_p2(u_p3(t)))) * W(t),
//     W(t) = prod_r |Zt(v_p1^r(u_p2(u_p3 t)))| prod_r |Zt(v_p2^r(u_p3 t))| prod_r |Zt(v_p3^r(t))|,
//
// with Zt^2 = d phi1 / dt. By the chain rule W^2 = d u / dt times a constant,
// so the Gram matrix is diagonal with G_nn = 2/(2n+1) prod_i 2/((T+2)^pi - T^pi).
// W^2 is smooth (|zeta|^2 is analytic on the line), which is what gets
// integrated; no panel splitting at zeros is needed.
//
// Depth 0 is the identity map, so depths (0,0,0) give plain Legendre.

#pragma once

#include "ladderlab/hl_integral.hpp"
#include "ladderlab/ladder.hpp"

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

namespace ladderlab::ortho {

inline constexpr int kMaxDepth = 3;
inline constexpr int kMaxDegree = 8;
inline constexpr double kMaxBaseT = 1e4;

// P_n(x) by the three-term recurrence.
double legendre(int n, double x);
// P_0..P_{out.size()-1} at x.
void legendre_all(double x, std::span<double> out);

using Depths = std::array<int, 3>;  // p1, p2, p3; p3 is applied first

// Interval [T^p, (T+2)^p] of one level.
struct LevelMap {
  int p = 0;
  double lo = 0.0;
  double hi = 0.0;
};

// u and the v-chain of one level evaluated at t.
struct LevelValue {
  double u = 0.0;
  std::vector<double> v;  // v^0 .. v^(p-1)
};

// Precomputed intervals for base T and the given depths; evaluates the
// generated functions. Containment of u and v is enforced at every point
// evaluated (excursions up to 1e-9 are clamped; larger ones throw).
class Generator {
 public:
  Generator(const hl::ZetaGrid& grid, double T, Depths depths,
            const ladder::LadderConstants& k = {});

  double base_T() const noexcept { return T_; }
  const Depths& depths() const noexcept { return depths_; }
  const LevelMap& level(int p) const;

  LevelValue map(int p, double t) const;
  // u_p1(u_p2(u_p3(t))) and W(t).
  struct Point {
    double argument = 0.0;
    double weight = 0.0;
  };
  Point evaluate(double t) const;
  double function(int n, double t) const;

  // Largest excursion of u or v outside its interval met so far (before clamping).
  double max_excursion() const noexcept { return max_excursion_; }
  // prod_i 2 / ((T+2)^pi - T^pi); 1 for depth 0.
  double jacobian_scale() const;

 private:
  double check_into(double x, double lo, double hi) const;

  const hl::ZetaGrid* grid_;
  double T_;
  Depths depths_;
  ladder::LadderConstants k_;
  std::array<LevelMap, kMaxDepth + 1> levels_{};
  mutable double max_excursion_ = 0.0;
};

double automorphism_u(const hl::ZetaGrid& grid, double T, int p, double t,
                      const ladder::LadderConstants& k = {});
// v_p^0 .. v_p^(p-1) at t.
std::vector<double> automorphism_v(const hl::ZetaGrid& grid, double T, int p, double t,
                                   const ladder::LadderConstants& k = {});
double generated_function(const hl::ZetaGrid& grid, double T, Depths depths, int n, double t,
                          const ladder::LadderConstants& k = {});

// ln W(t) split per ladder node: ln|Zt(v)| = ln|zeta(1/2+iv)| - ln(ln phi1(v) + 1 + c - ln 2pi)/2.
struct WeightTerm {
  int level = 0;  // 1, 2, 3 for p1, p2, p3
  int r = 0;
  double v = 0.0;
  double log_zt = 0.0;
  double log_zeta = 0.0;
  double log_density = 0.0;  // ln(ln phi1(v) + 1 + c - ln 2pi)
};
std::vector<WeightTerm> weight_log_decomposition(const hl::ZetaGrid& grid, double T, Depths depths,
                                                 double t, const ladder::LadderConstants& k = {});

struct GramOptions {
  double rel_tol = 1e-10;
  int max_panels = 4096;
};

struct GeneratedSystem {
  double base_T = 0.0;
  Depths depths{};
  int n_max = 0;
  // Nodes visited by the quadrature: t, composed argument, weight.
  struct Node {
    double t;
    double argument;
    double weight;
  };
  std::vector<Node> automorphism_cache;
  std::vector<double> gram;  // (n_max+1)^2, row-major
  double jacobian_scale = 1.0;
  double max_excursion = 0.0;
  int panels = 0;

  double entry(int n, int m) const { return gram[static_cast<std::size_t>(n * (n_max + 1) + m)]; }
  // max over n != m <= limit of |G_nm| / sqrt(G_nn G_mm).
  double max_normalized_offdiagonal(int limit) const;
  // max over n of |G_nn / (2/(2n+1) jacobian_scale) - 1|.
  double max_diagonal_deviation() const;
};

// 100 <= T <= 1e4, depths in 0..3, 0 <= n_max <= 8.
GeneratedSystem gram_matrix(const hl::ZetaGrid& grid, double T, Depths depths, int n_max,
                            const GramOptions& options = {}, const ladder::LadderConstants& k = {});

// Columns n,m,value.
void write_gram_csv(const GeneratedSystem& system, std::ostream& out);

}  // namespace ladderlab::ortho
