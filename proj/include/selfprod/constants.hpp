#pragma once

#include <utility>

#include "selfprod/sieve.hpp"

namespace selfprod {

/// A truncated Euler product.  `value` multiplies the factors at primes
/// p <= prime_limit; `tail_bound` is a certified upper bound on
/// |log(true / computed)|, so the full product lies in
/// [value * exp(-tail_bound), value * exp(tail_bound)] up to the tiny
/// floating-point slack folded into the bound.
struct EulerProductValue {
    double value = 0;
    u64 prime_limit = 0;
    double tail_bound = 0;
};

/// Q(alpha) = alpha*log(alpha) - alpha + 1, the large-deviation rate of
/// the prime-divisor count.  Defined for alpha >= 0 with Q(0) = 1 as the
/// continuous limit; Q >= 0 with equality only at alpha = 1.
struct QValue {
    double alpha = 0;
    double q = 0;
};

/// Gamma function on (0, 3] (Lanczos, relative error well under 1e-12).
double gamma_fn(double z);

/// Riemann zeta for real s >= 1.2, Euler-Maclaurin with a remainder kept
/// below 1e-13.
double zeta(double s);

QValue q_function(double alpha);

// ---------------------------------------------------------------------
// Euler products
// ---------------------------------------------------------------------
// Every product is evaluated as exp(sum of log-factors) with compensated
// summation.  The tail beyond prime_limit is certified in two parts:
// the exact |log factor| at each table prime in (prime_limit, W], where
// W = min(100 * prime_limit, primes.limit), plus an integral-comparison
// majorant sum_{m >= W} c2/m^2 + c3/m^3 beyond W.  All functions require
// prime_limit >= 100 and primes.limit >= prime_limit.

/// lambda(z) = 1/Gamma(z+1) * prod_p (1 + z/(p-1)) (1 - 1/p)^z, z in [0, 2].
EulerProductValue lambda_fn(double z, u64 prime_limit, const PrimeTable& primes);

/// lambda*(z) = 1/Gamma(z+1) * prod_p (1 + z/p) (1 - 1/p)^z, z in [0, 2].
EulerProductValue lambda_star_fn(double z, u64 prime_limit, const PrimeTable& primes);

/// c0 = prod_p (1 + 1/(p (p - 1 + sqrt(p^2 - p)))) = 1.365...
EulerProductValue c0_constant(u64 prime_limit, const PrimeTable& primes);

/// c1(A) = 1/Gamma(1/A) * prod_p (1 + 1/(A(p-1))) (1 - 1/p)^(1/A) and
/// c2(A) = 1/Gamma(1/A) * prod_p (1 - 1/(Ap))^(-1) (1 - 1/p)^(1/A), A >= 2.
/// Note c1(A) = lambda(1/A) / A: the products agree and
/// Gamma(1/A + 1) = (1/A) Gamma(1/A).
std::pair<EulerProductValue, EulerProductValue>
c1_c2_constants(int A, u64 prime_limit, const PrimeTable& primes);

/// G(s) = prod_p (1 + (p^s - (p-1)^s) / (p^(2s) (p-1)^s)) for s in (0.5, 2].
/// At s = 1/2 the factors reduce to the closed c0 form; use c0_constant.
EulerProductValue g_function(double s, u64 prime_limit, const PrimeTable& primes);

// ---------------------------------------------------------------------
// F(s) = zeta(2s) G(s) numerical verification
// ---------------------------------------------------------------------

struct FIdentityReport {
    double s = 0;
    double lhs = 0;    // sum over k*phi(k) <= x_cap of (k*phi(k))^-s
    double rhs = 0;    // zeta(2s) * G(s)
    double gap = 0;    // |lhs - rhs|
    double bound = 0;  // certified bound on the gap
    bool pass = false; // gap <= bound
};

/// Compares the Dirichlet series of A = {k*phi(k)} truncated at x_cap
/// against zeta(2s)*G(s).  The truncation tail uses the fully effective
/// bound |A  [1,y]| <= 8.78 sqrt(y):
///   members with k <= sqrt(y) number at most sqrt(y); a member with
///   k in [2^j sqrt(y), 2^(j+1) sqrt(y)) forces phi(k)/k <= 4^-j, and
///   sum_{k<=T} k/phi(k) <= T * prod_p (1 + 1/(p(p-1))) <= 1.9436 T,
///   so Markov gives at most 2*1.9436*2^-j sqrt(y) such k per dyadic block.
/// Requires s in [0.6, 2] (keeps zeta(2s) in domain) and x_cap >= 10^4.
FIdentityReport f_identity_check(double s, u64 x_cap, u64 prime_limit,
                                 const PrimeTable& primes);

} // namespace selfprod
