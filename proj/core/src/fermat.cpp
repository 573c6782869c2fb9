// fermat.cpp

#include "ladderlab/arithmetic.hpp"

#include "ladderlab/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace ladderlab::arith {

BigRational FermatRational::gap() const {
  BigInt diff = numerator - denominator;
  if (diff < 0) diff = -diff;
  return BigRational(diff, denominator);
}

double FermatRational::value() const {
  using boost::multiprecision::cpp_bin_float_50;
  return static_cast<double>(cpp_bin_float_50(numerator) / cpp_bin_float_50(denominator));
}

FermatRational fermat_rational(const BigInt& x, const BigInt& y, const BigInt& z, int n) {
  if (n < 3) {
    throw FermatClassError("fermat_rational: exponent n=" + std::to_string(n) +
                           " outside the class n >= 3");
  }
  if (x < 1 || y < 1 || z < 1) throw DomainError("fermat_rational: x, y, z must be positive");
  FermatRational f;
  f.x = x;
  f.y = y;
  f.z = z;
  f.n = n;
  const auto e = static_cast<unsigned>(n);
  f.numerator = boost::multiprecision::pow(x, e) + boost::multiprecision::pow(y, e);
  f.denominator = boost::multiprecision::pow(z, e);
  return f;
}

FermatScan fermat_scan(int z_max, int n_min, int n_max) {
  if (z_max < 2 || n_min < 3 || n_max < n_min) throw DomainError("fermat_scan: bad ranges");
  FermatScan scan;
  bool first = true;
  for (int n = n_min; n <= n_max; ++n) {
    const auto e = static_cast<unsigned>(n);
    std::vector<BigInt> powers(static_cast<std::size_t>(z_max) + 1);
    for (int v = 1; v <= z_max; ++v) powers[static_cast<std::size_t>(v)] = boost::multiprecision::pow(BigInt(v), e);
    for (int z = 2; z <= z_max; ++z) {
      const BigInt& zn = powers[static_cast<std::size_t>(z)];
      for (int x = 1; x < z; ++x) {
        for (int y = 1; y < z; ++y) {
          ++scan.checked;
          BigInt diff = powers[static_cast<std::size_t>(x)] + powers[static_cast<std::size_t>(y)] - zn;
          if (diff == 0) {
            scan.hits.push_back(fermat_rational(x, y, z, n));
            continue;
          }
          if (diff < 0) diff = -diff;
          BigRational gap(diff, zn);
          if (first || gap < scan.smallest_gap) {
            first = false;
            scan.smallest_gap = gap;
            scan.smallest_gap_at = fermat_rational(x, y, z, n);
          }
        }
      }
    }
  }
  return scan;
}

}  // namespace ladderlab::arith
