#pragma once

namespace uvaa {

// Digamma function psi(x) for x > 0. Recurrence up to x >= 6, then the
// asymptotic Bernoulli series; abs error < 1e-14 on the range used here.
double digamma(double x);

// Trigamma function psi'(x) for x > 0. Same recurrence/series scheme.
double trigamma(double x);

// Modified Bessel function of the first kind, order zero, by its power
// series truncated at relative term < 1e-12. Overflows past x ~ 700.
double bessel_i0(double x);

// log(Beta(a, b)) via lgamma.
double log_beta(double a, double b);

// Numerically stable log(1 + exp(x)) and its derivative.
double softplus(double x);
double sigmoid(double x);

}  // namespace uvaa
