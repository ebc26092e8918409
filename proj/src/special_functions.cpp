#include "polarforge/special_functions.hpp"

#include <cmath>
#include <string>

#include "polarforge/errors.hpp"

namespace polarforge {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrtPi = 1.772453850905516027298167483341145183;
constexpr double kHalfSqrtPi = 0.886226925452758013649083741670572591;   // sqrt(pi)/2
constexpr double kTwoOverSqrtPi = 1.128379167095512573896158903121545172;

// erfc(8), the tail mass outside the fixed [-8, 8] quadrature window.
const double kErfc8 = std::erfc(8.0);

}  // namespace

double erfc(double x) {
  if (std::isnan(x)) throw numeric_error("erfc: NaN argument");
  return std::erfc(x);
}

double erfc_log(double x) {
  if (std::isnan(x)) throw numeric_error("erfc_log: NaN argument");
  if (x <= 26.0) {
    // erfc(26) ~ 5.66e-296 is still a normal double; the direct log is exact.
    return std::log(std::erfc(x));
  }
  // Asymptotic continuation: erfc(x) = e^{-x^2} / (x sqrt(pi)) * S(x),
  // S(x) = sum_k (-1)^k (2k-1)!! / (2x^2)^k.  At x >= 26 the k=8 term is
  // below 1e-20 relative, far inside the 1e-12 contract.
  const double ix2 = 1.0 / (2.0 * x * x);
  double term = 1.0, s = 1.0;
  for (int k = 1; k <= 8; ++k) {
    term *= -static_cast<double>(2 * k - 1) * ix2;
    s += term;
  }
  return -x * x - std::log(x * kSqrtPi) + std::log(s);
}

namespace {

// Newton refinement helpers for erfcinv.

double erfcinv_central(double y) {
  // y in [0.25, 1): start from the Maclaurin series of the inverse error
  // function at s = 1 - y, then Newton on erfc.
  const double s = 1.0 - y;
  const double s2 = s * s;
  double x = kHalfSqrtPi * s *
             (1.0 + s2 * (0.26179938779914943654 +
                          s2 * (0.14393173084921979613 + s2 * 0.09766361943993)));
  for (int it = 0; it < 4; ++it) {
    const double diff = std::erfc(x) - y;
    x += diff * kHalfSqrtPi * std::exp(x * x);
  }
  return x;
}

double erfcinv_tail(double y) {
  // y in (0, 0.25): Newton in the log domain, stable down to y = 1e-300.
  const double ly = std::log(y);
  const double t = -ly;
  double x = std::sqrt(t);
  for (int it = 0; it < 2; ++it) {
    const double arg = t - std::log(x * kSqrtPi);
    x = std::sqrt(arg > 0.25 ? arg : 0.25);
  }
  for (int it = 0; it < 6; ++it) {
    const double el = erfc_log(x);
    const double deriv = -kTwoOverSqrtPi * std::exp(-x * x - el);  // d/dx log erfc
    x -= (el - ly) / deriv;
    if (!(x > 0.0)) x = 1e-8;
  }
  return x;
}

}  // namespace

double erfcinv(double y) {
  if (!(y > 0.0 && y < 2.0)) {  // also rejects NaN
    throw numeric_error("erfcinv: argument must lie in (0,2)");
  }
  if (y == 1.0) return 0.0;
  if (y > 1.0) return -erfcinv(2.0 - y);
  if (y < 1e-300) {
    static const double cap = erfcinv_tail(1e-300);  // documented saturation
    return cap;
  }
  return y >= 0.25 ? erfcinv_central(y) : erfcinv_tail(y);
}

double phi_simplified(double x) {
  if (std::isnan(x) || x < 0.0) {
    throw numeric_error("phi_simplified: argument must be >= 0");
  }
  return std::erfc(0.5 * std::sqrt(x));
}

double phi_inv(double y) {
  if (!(y > 0.0 && y <= 1.0)) {
    throw numeric_error("phi_inv: argument must lie in (0,1]");
  }
  if (y == 1.0) return 0.0;
  const double r = erfcinv(y);
  return 4.0 * r * r;
}

// --- phi_exact --------------------------------------------------------------

namespace {

struct GaussLegendre20 {
  double x[20];
  double w[20];
  GaussLegendre20() {
    // Nodes as roots of P_20 by Newton from the Chebyshev initial guesses.
    const int npts = 20;
    const int m = npts / 2;
    for (int i = 0; i < m; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (npts + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 64; ++it) {
        double p1 = 1.0, p2 = 0.0;
        for (int j = 0; j < npts; ++j) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
        }
        pp = npts * (z * p1 - p2) / (z * z - 1.0);
        const double z1 = z;
        z = z1 - p1 / pp;
        if (std::fabs(z - z1) < 1e-15) break;
      }
      x[i] = -z;
      x[npts - 1 - i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
      w[npts - 1 - i] = w[i];
    }
  }
};

const GaussLegendre20& gl20() {
  static const GaussLegendre20 q;
  return q;
}

}  // namespace

double phi_exact(double x) {
  if (std::isnan(x) || x < 0.0) {
    throw numeric_error("phi_exact: argument must be >= 0");
  }
  if (x == 0.0) return 1.0;
  const GaussLegendre20& q = gl20();
  const double sx = 2.0 * std::sqrt(x);
  const int panels = 32;
  const double lo = -8.0, hi = 8.0;
  const double ph = (hi - lo) / panels;
  double sum = 0.0;  // fixed summation order keeps results bit-identical
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * ph;
    const double hw = 0.5 * ph;
    for (int i = 0; i < 20; ++i) {
      const double v = c + hw * q.x[i];
      const double warg = x + sx * v;  // = 2 * ((x + 2 sqrt(x) v) / 2)
      // 1 - tanh(w/2) = 2 / (1 + e^w); exp overflow saturates cleanly to 0.
      const double one_minus_tanh = 2.0 / (1.0 + std::exp(warg));
      sum += hw * q.w[i] * one_minus_tanh * std::exp(-v * v);
    }
  }
  double val = kErfc8 + sum / kSqrtPi;
  if (val > 1.0) val = 1.0;
  if (val < 0.0) val = 0.0;
  return val;
}

double phi_exact_inv(double y) {
  if (!(y > 0.0 && y <= 1.0)) {
    throw numeric_error("phi_exact_inv: argument must lie in (0,1]");
  }
  if (y == 1.0) return 0.0;
  if (y < 1e-25) {
    throw numeric_error("phi_exact_inv: argument below invertible floor");
  }
  double lo = 0.0, hi = 400.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (phi_exact(mid) > y) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-13 * (1.0 + lo)) break;
  }
  return 0.5 * (lo + hi);
}

// --- lookup tables ----------------------------------------------------------

double LookupTables::Table::eval(double x) const {
  if (x <= a) return y[0];
  if (x >= b) return y[kKnots - 1];
  double u = (x - a) / h;
  std::size_t j = static_cast<std::size_t>(u);
  if (j > kKnots - 2) j = kKnots - 2;
  const double th = u - static_cast<double>(j);
  const double t2 = th * th;
  const double t3 = t2 * th;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + th;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * y[j] + h10 * h * m[j] + h01 * y[j + 1] + h11 * h * m[j + 1];
}

namespace {

void fc_slopes(const double* y, double* m, std::size_t count, double h) {
  // Fritsch-Carlson slopes on a uniform grid: harmonic mean of adjacent
  // secants, zero at local extrema -- interpolant stays monotone.
  const std::size_t segs = count - 1;
  for (std::size_t i = 0; i < count; ++i) {
    auto secant = [&](std::size_t s) { return (y[s + 1] - y[s]) / h; };
    if (i == 0) {
      m[i] = secant(0);
    } else if (i == segs) {
      m[i] = secant(segs - 1);
    } else {
      const double d0 = secant(i - 1), d1 = secant(i);
      m[i] = (d0 * d1 <= 0.0) ? 0.0 : 2.0 * d0 * d1 / (d0 + d1);
    }
  }
}

}  // namespace

LookupTables::LookupTables() {
  // Knots hold log(erfc(s)): nearly quadratic in s, so the monotone cubic
  // keeps a uniform ~1e-5 relative error all the way into the deep tail,
  // where interpolating raw values would lose several percent.
  erfc_table_.a = 0.0;
  erfc_table_.b = 27.0;
  erfc_table_.h = (erfc_table_.b - erfc_table_.a) / static_cast<double>(kKnots - 1);
  for (std::size_t i = 0; i < kKnots; ++i) {
    erfc_table_.y[i] = erfc_log(erfc_table_.a + static_cast<double>(i) * erfc_table_.h);
  }
  fc_slopes(erfc_table_.y, erfc_table_.m, kKnots, erfc_table_.h);

  // Knots hold erfcinv(exp(-u^2)) / u on u = sqrt(t): near u = 0 the ratio is
  // ~ (sqrt(pi)/2) u (erfcinv vanishes quadratically in u), near the far end
  // it tends to 1, so both boundary regions interpolate accurately.
  erfcinv_table_.a = 0.0;
  erfcinv_table_.b = std::sqrt(691.0);
  erfcinv_table_.h = (erfcinv_table_.b - erfcinv_table_.a) / static_cast<double>(kKnots - 1);
  erfcinv_table_.y[0] = 0.0;
  for (std::size_t i = 1; i < kKnots; ++i) {
    const double u = erfcinv_table_.a + static_cast<double>(i) * erfcinv_table_.h;
    erfcinv_table_.y[i] = erfcinv(std::exp(-u * u)) / u;
  }
  fc_slopes(erfcinv_table_.y, erfcinv_table_.m, kKnots, erfcinv_table_.h);
}

const LookupTables& LookupTables::instance() {
  static const LookupTables tables;
  return tables;
}

double LookupTables::erfc_s(double s) const { return std::exp(erfc_table_.eval(s)); }

double LookupTables::erfcinv_t(double t) const {
  double u = std::sqrt(std::max(t, 0.0));
  if (u > erfcinv_table_.b) u = erfcinv_table_.b;  // saturate like the exact path
  return u * erfcinv_table_.eval(u);
}

double phi_simplified_table(double x) {
  if (std::isnan(x) || x < 0.0) {
    throw numeric_error("phi_simplified: argument must be >= 0");
  }
  return LookupTables::instance().erfc_s(0.5 * std::sqrt(x));
}

double phi_inv_table(double y) {
  if (!(y > 0.0 && y <= 1.0)) {
    throw numeric_error("phi_inv: argument must lie in (0,1]");
  }
  if (y == 1.0) return 0.0;
  const double t = -std::log(y);
  const double r = LookupTables::instance().erfcinv_t(t);
  return 4.0 * r * r;
}

}  // namespace polarforge
