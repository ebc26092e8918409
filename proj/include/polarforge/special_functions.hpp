#pragma once

#include <cstddef>

namespace polarforge {

// Complementary error function. Thin validated wrapper over the C library
// implementation, which meets the 1e-10 relative-accuracy contract on
// [-6, 26]; beyond x ~ 26.2 the true value underflows double range, so the
// upper tail of the contract is carried by erfc_log below. NaN -> numeric_error.
double erfc(double x);

// log(erfc(x)) for x in [-6, 200]: exact log of the library value while
// erfc(x) is representable, and an asymptotic continuation above x = 26 where
// erfc underflows. Relative accuracy of the represented value ~1e-12.
double erfc_log(double x);

// Inverse of erfc on (0, 2). Round-trips to |erfc(erfcinv(y)) - y| <=
// 1e-12 * max(y, 1e-300). Arguments below 1e-300 saturate at
// erfcinv(1e-300) = 26.2094699605161239 (documented cap); outside (0,2)
// -> numeric_error.
double erfcinv(double y);

// Gaussian-approximation transfer function, simplified variant:
//   phi_simplified(x) = erfc(sqrt(x)/2), defined for x >= 0.
// Strictly decreasing from 1 to 0; x < 0 or NaN -> numeric_error.
double phi_simplified(double x);

// Its inverse on (0, 1]: phi_inv(y) = 4 * erfcinv(y)^2.
double phi_inv(double y);

// Reference transfer function without the simplification:
//   phi_exact(x) = 1 - (1/sqrt(4 pi x)) Int tanh(u/2) exp(-(u-x)^2/(4x)) du,
// evaluated after the substitution u = x + 2 sqrt(x) v as
//   erfc(8) + (1/sqrt(pi)) Int_{-8}^{8} (1 - tanh((x + 2 sqrt(x) v)/2)) e^{-v^2} dv
// with a fixed composite Gauss-Legendre rule (bit-stable across runs).
// phi_exact(0) = 1 exactly.
double phi_exact(double x);

// Numeric inversion of phi_exact on (0, 1] by bisection.
double phi_exact_inv(double y);

// --- Optional lookup-table acceleration (off by default) -------------------
//
// Two monotone-cubic (Fritsch-Carlson) tables, 4096 knots each:
//   A: s -> erfc(s)             on s in [0, 27]
//   B: t -> erfcinv(exp(-t))    on t in [0, 691]   (erfc values down to 1e-300)
// Interpolation preserves monotonicity, so GA updates stay order-preserving.
class LookupTables {
 public:
  static const LookupTables& instance();

  double erfc_s(double s) const;      // s clamped to [0, 27]
  double erfcinv_t(double t) const;   // t clamped to [0, 691]

 private:
  LookupTables();
  static constexpr std::size_t kKnots = 4096;
  struct Table {
    double a = 0, b = 0, h = 0;
    double y[kKnots];
    double m[kKnots];  // Fritsch-Carlson slopes
    double eval(double x) const;
  };
  Table erfc_table_;
  Table erfcinv_table_;
};

// Table-backed counterparts used when GaOptions::use_table is set.
double phi_simplified_table(double x);
double phi_inv_table(double y);

}  // namespace polarforge
