#pragma once

#include <cstdint>

namespace tomolab::sf {

// Confluent hypergeometric Phi(a, 1/2; -x^2) for integer a >= 1.
double kummer_half(int a, double x);

// Phi(a, 3/2; -x^2) for integer a >= 1.
double kummer_three_half(int a, double x);

// Dawson integral exp(-x^2) * int_0^x exp(t^2) dt.
double dawson(double x);

// Imaginary error function. Throws std::overflow_error once exp(x^2)
// leaves the double range (|x| > ~26.64).
double erfi(double x);

// (s/2)^(n/2) H_n(X/sqrt(s)) through the real recurrence
// P_{n+1} = sqrt(2) X P_n - n s P_{n-1}; valid for any real s,
// including s <= 0 where the factored form would need complex sqrt.
double hermite_scaled(int n, double X, double s);

// Generalized Laguerre polynomial L_n^alpha(x), integer alpha >= 0.
double laguerre(int n, int alpha, double x);

// C(n, k), with C(n, k) = 0 for k < 0 or k > n. Throws
// std::overflow_error when the exact value does not fit in uint64.
std::uint64_t binomial(int n, int k);

}  // namespace tomolab::sf
