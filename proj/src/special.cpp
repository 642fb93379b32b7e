#include "talbot/special.hpp"

#include <cmath>
#include <limits>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_expint.h>

namespace talbot {

namespace {
// GSL's default error handler aborts the process; disable it once and rely on
// return codes instead.
const int gsl_handler_off = [] {
    gsl_set_error_handler_off();
    return 0;
}();
} // namespace

double sine_integral(double x)
{
    (void)gsl_handler_off;
    gsl_sf_result r;
    const int status = gsl_sf_Si_e(x, &r);
    if (status != GSL_SUCCESS)
        return std::numeric_limits<double>::quiet_NaN();
    return r.val;
}

double bessel_J(int n, double x)
{
    double sign = 1.0;
    if (n < 0) {
        n = -n;
        if (n % 2 != 0)
            sign = -sign;
    }
    if (x < 0.0) {
        x = -x;
        if (n % 2 != 0)
            sign = -sign;
    }
    return sign * std::cyl_bessel_j(static_cast<double>(n), x);
}

double bessel_I(int n, double x)
{
    if (n < 0)
        n = -n;
    double sign = 1.0;
    if (x < 0.0) {
        x = -x;
        if (n % 2 != 0)
            sign = -sign;
    }
    return sign * std::cyl_bessel_i(static_cast<double>(n), x);
}

double sph_j1(double x)
{
    const double ax = std::abs(x);
    if (ax < 0.1) {
        // The closed form subtracts two ~1/x terms and loses ~x^-2 digits;
        // below 0.1 the series is the accurate branch (truncation < 1e-13).
        const double x2 = x * x;
        return x / 3.0
               * (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0 * (1.0 - x2 / 54.0)));
    }
    return std::sin(x) / (x * x) - std::cos(x) / x;
}

double sinc(double x)
{
    if (std::abs(x) < 1e-8)
        return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

double si_over_x(double x)
{
    if (std::abs(x) < 1e-6)
        return 1.0 - x * x / 18.0;
    return sine_integral(x) / x;
}

} // namespace talbot
