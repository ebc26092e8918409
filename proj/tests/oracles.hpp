// Independent long-double reference implementations used only by the tests.
// Deliberately different algorithms from the library (Maclaurin series and a
// Lentz continued fraction instead of the C runtime / asymptotic series), so
// agreement is evidence rather than tautology.
#pragma once

#include <cmath>
#include <stdexcept>

namespace oracle {

inline constexpr long double kSqrtPiL = 1.772453850905516027298167483341145183L;

// erf by Maclaurin series, accurate for |x| <= 3.5 in long double.
inline long double erf_series(long double x) {
  const long double x2 = x * x;
  long double term = x;  // n = 0 term before the 2/sqrt(pi) factor
  long double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x2 / static_cast<long double>(n);
    const long double add = term / static_cast<long double>(2 * n + 1);
    sum += add;
    if (std::fabs(add) < 1e-24L * std::fabs(sum)) break;
  }
  return sum * 2.0L / kSqrtPiL;
}

// Continued fraction for erfc(x) * sqrt(pi) * x * e^{x^2}, valid for x > 0:
//   erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + 1/(2x + 2/(x + 3/(2x + 4/(x + ...)))))
// evaluated with the modified Lentz algorithm. Returns the continued-fraction
// value CF(x) = 1/(x + ...), without the exponential prefactor.
inline long double erfc_cf_factor(long double x) {
  const long double tiny = 1e-4000L;
  long double f = tiny, C = f, D = 0.0L;
  for (int k = 1; k < 400; ++k) {
    const long double a = k == 1 ? 1.0L : static_cast<long double>(k - 1);
    const long double b = (k % 2 == 1) ? x : 2.0L * x;
    D = b + a * D;
    if (D == 0.0L) D = tiny;
    C = b + a / C;
    if (C == 0.0L) C = tiny;
    D = 1.0L / D;
    const long double delta = C * D;
    f *= delta;
    if (std::fabs(delta - 1.0L) < 1e-24L) break;
  }
  return f;
}

inline long double erfc_ref(long double x) {
  if (x < 0.0L) return 2.0L - erfc_ref(-x);
  if (x <= 3.0L) return 1.0L - erf_series(x);
  return std::exp(-x * x) / kSqrtPiL * erfc_cf_factor(x);
}

inline long double log_erfc_ref(long double x) {
  if (x <= 3.0L) return std::log(erfc_ref(x));
  return -x * x - std::log(kSqrtPiL) + std::log(erfc_cf_factor(x));
}

}  // namespace oracle
