#include "ladderlab/errors.hpp"
#include "ladderlab/hl_integral.hpp"
#include "ladderlab/ortho_systems.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

using namespace ladderlab;
using namespace ladderlab::ortho;

namespace {

const hl::ZetaGrid& grid() {
  static const hl::ZetaGrid g = hl::build_grid(1.3e4, 1e-9);
  return g;
}

}  // namespace

TEST(Legendre, KnownValuesAndRecurrence) {
  EXPECT_EQ(legendre(0, 0.3), 1.0);
  EXPECT_EQ(legendre(1, 0.3), 0.3);
  EXPECT_NEAR(legendre(2, 0.3), (3 * 0.09 - 1) / 2, 1e-15);
  EXPECT_NEAR(legendre(3, 0.5), (5 * 0.125 - 3 * 0.5) / 2, 1e-15);
  for (int n = 0; n <= 8; ++n) {
    EXPECT_NEAR(legendre(n, 1.0), 1.0, 1e-14);
    EXPECT_NEAR(legendre(n, -1.0), n % 2 ? -1.0 : 1.0, 1e-14);
  }
  std::vector<double> all(9);
  legendre_all(-0.7, all);
  for (int n = 0; n <= 8; ++n) EXPECT_DOUBLE_EQ(all[static_cast<std::size_t>(n)], legendre(n, -0.7));
  EXPECT_THROW(legendre(-1, 0.0), DomainError);
}

TEST(Automorphism, EndpointsMapToEndpoints) {
  for (int p = 1; p <= 3; ++p) {
    EXPECT_NEAR(automorphism_u(grid(), 1e3, p, -1.0), -1.0, 1e-8) << p;
    EXPECT_NEAR(automorphism_u(grid(), 1e3, p, 1.0), 1.0, 1e-8) << p;
  }
}

TEST(Automorphism, DepthZeroIsIdentity) {
  for (double t : {-1.0, -0.3, 0.0, 0.8, 1.0}) EXPECT_EQ(automorphism_u(grid(), 500.0, 0, t), t);
  EXPECT_TRUE(automorphism_v(grid(), 500.0, 0, 0.2).empty());
}

TEST(Automorphism, ContainmentOnRandomPoints) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Generator gen(grid(), 1e3, {3, 2, 1});
  for (int i = 0; i < 1000; ++i) {
    const double t = u(rng);
    for (int p = 1; p <= 3; ++p) {
      const auto lv = gen.map(p, t);
      ASSERT_GE(lv.u, -1.0);
      ASSERT_LE(lv.u, 1.0);
      ASSERT_EQ(lv.v.size(), static_cast<std::size_t>(p));
      for (int r = 0; r < p; ++r) {
        const auto& target = gen.level(p - r);
        ASSERT_GE(lv.v[static_cast<std::size_t>(r)], target.lo);
        ASSERT_LE(lv.v[static_cast<std::size_t>(r)], target.hi);
      }
    }
    const auto pt = gen.evaluate(t);
    ASSERT_GE(pt.argument, -1.0);
    ASSERT_LE(pt.argument, 1.0);
    ASSERT_GE(pt.weight, 0.0);
  }
  EXPECT_LE(gen.max_excursion(), 1e-9);
}

TEST(Automorphism, MonotoneIncreasing) {
  double prev = -2.0;
  for (double t = -1.0; t <= 1.0; t += 0.01) {
    const double u = automorphism_u(grid(), 2000.0, 2, t);
    ASSERT_GT(u, prev) << t;
    prev = u;
  }
}

TEST(Generator, LevelsAreReverseIterates) {
  Generator gen(grid(), 1e3, {1, 2, 3});
  EXPECT_EQ(gen.level(0).lo, 1e3);
  EXPECT_EQ(gen.level(0).hi, 1002.0);
  for (int p = 1; p <= 3; ++p) {
    EXPECT_GT(gen.level(p).lo, gen.level(p - 1).lo);
    EXPECT_NEAR(ladder::phi1(grid(), gen.level(p).lo), gen.level(p - 1).lo, 1e-8 * gen.level(p).lo);
  }
  // second reverse iterate of 1e3 (engine value at tol 1e-6)
  EXPECT_NEAR(gen.level(2).lo, 1137.359, 1e-2);
}

TEST(Generator, WeightSquaredIsDerivativeOfArgument) {
  const Depths d{1, 1, 1};
  Generator gen(grid(), 1e3, d);
  const double h = 1e-5;
  for (double t : {-0.9, -0.31, 0.2, 0.77}) {
    const double du = (gen.evaluate(t + h).argument - gen.evaluate(t - h).argument) / (2 * h);
    const double w = gen.evaluate(t).weight;
    EXPECT_NEAR(w * w, du * gen.jacobian_scale(), 1e-5 * std::max(1.0, w * w)) << t;
  }
}

TEST(Generator, ZeroDegreeIsWeight) {
  const Depths d{2, 0, 1};
  Generator gen(grid(), 3000.0, d);
  for (double t : {-0.5, 0.0, 0.5}) {
    EXPECT_DOUBLE_EQ(generated_function(grid(), 3000.0, d, 0, t), gen.evaluate(t).weight);
    EXPECT_DOUBLE_EQ(gen.function(0, t), gen.evaluate(t).weight);
  }
}

TEST(Generator, LogDecompositionSumsToLogWeight) {
  const Depths d{1, 2, 1};
  Generator gen(grid(), 1e3, d);
  for (double t : {-0.8, 0.1, 0.6}) {
    const auto terms = weight_log_decomposition(grid(), 1e3, d, t);
    EXPECT_EQ(terms.size(), 4u);
    double sum = 0.0;
    for (const auto& term : terms) {
      EXPECT_NEAR(term.log_zt, term.log_zeta - 0.5 * term.log_density, 1e-12);
      sum += term.log_zt;
    }
    EXPECT_NEAR(sum, std::log(gen.evaluate(t).weight), 1e-9) << t;
  }
}

TEST(Generator, Domain) {
  EXPECT_THROW(Generator(grid(), 50.0, {1, 1, 1}), DomainError);
  EXPECT_THROW(Generator(grid(), 2e4, {1, 1, 1}), DomainError);
  EXPECT_THROW(Generator(grid(), 1e3, {4, 0, 0}), DomainError);
  EXPECT_THROW(Generator(grid(), 1e3, {-1, 0, 0}), DomainError);
  Generator gen(grid(), 1e3, {1, 0, 0});
  EXPECT_THROW(gen.evaluate(1.5), DomainError);
  const auto small = hl::build_grid(1100.0, 1e-6);
  EXPECT_THROW(Generator(small, 1e3, {3, 0, 0}), GridExhaustedError);
}

TEST(Gram, PlainLegendre) {
  const auto sys = gram_matrix(grid(), 1e3, {0, 0, 0}, 8);
  EXPECT_EQ(sys.jacobian_scale, 1.0);
  for (int n = 0; n <= 8; ++n) {
    for (int m = 0; m <= 8; ++m) {
      const double expected = n == m ? 2.0 / (2 * n + 1) : 0.0;
      EXPECT_NEAR(sys.entry(n, m), expected, 1e-10) << n << "," << m;
    }
  }
}

TEST(Gram, LadderSystemIsOrthogonal) {
  const auto sys = gram_matrix(grid(), 1e3, {1, 1, 1}, 6);
  for (int n = 0; n <= 6; ++n) EXPECT_GT(sys.entry(n, n), 0.0);
  EXPECT_LE(sys.max_normalized_offdiagonal(6), 1e-3);
  EXPECT_LE(sys.max_diagonal_deviation(), 1e-3);
  EXPECT_LE(sys.max_excursion, 1e-9);
  EXPECT_FALSE(sys.automorphism_cache.empty());
  for (int n = 0; n <= 6; ++n) {
    for (int m = 0; m <= 6; ++m) EXPECT_EQ(sys.entry(n, m), sys.entry(m, n));
  }
}

TEST(Gram, MixedDepths) {
  const auto sys = gram_matrix(grid(), 2000.0, {2, 1, 3}, 4);
  EXPECT_LE(sys.max_normalized_offdiagonal(4), 1e-3);
  EXPECT_LE(sys.max_diagonal_deviation(), 1e-3);
}

TEST(Gram, PreconditionsAndCsv) {
  EXPECT_THROW(gram_matrix(grid(), 1e3, {0, 0, 0}, 9), DomainError);
  EXPECT_THROW(gram_matrix(grid(), 1e3, {0, 0, 0}, -1), DomainError);
  GramOptions starve;
  starve.max_panels = 8;
  starve.rel_tol = 1e-14;
  EXPECT_THROW(gram_matrix(grid(), 1e3, {3, 3, 3}, 8, starve), ConvergenceError);

  const auto sys = gram_matrix(grid(), 1e3, {0, 0, 0}, 1);
  std::ostringstream out;
  write_gram_csv(sys, out);
  const auto text = out.str();
  EXPECT_EQ(text.rfind("n,m,value\n", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}
