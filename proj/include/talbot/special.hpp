#pragma once

// Thin wrappers around library special functions, extended to the argument
// ranges used here (negative Bessel orders/arguments, safe small-x limits).

namespace talbot {

/// Sine integral Si(x) = int_0^x sin(t)/t dt.  Odd in x.
double sine_integral(double x);

/// Bessel function of the first kind J_n for any integer order and real
/// argument, via the reflections J_{-n}(x) = (-1)^n J_n(x) and
/// J_n(-x) = (-1)^n J_n(x).
double bessel_J(int n, double x);

/// Modified Bessel function I_n for any integer order and real argument,
/// via I_{-n}(x) = I_n(x) and I_n(-x) = (-1)^n I_n(x).
double bessel_I(int n, double x);

/// Spherical Bessel function j_1(x) = sin(x)/x^2 - cos(x)/x, even-safe at 0.
double sph_j1(double x);

/// sinc(x) = sin(x)/x with sinc(0) = 1.
double sinc(double x);

/// Si(x)/x with the exact limit 1 at x = 0.
double si_over_x(double x);

} // namespace talbot
