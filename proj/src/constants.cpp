#include "selfprod/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "selfprod/core.hpp"

namespace selfprod {

namespace {

struct KahanSum {
    double sum = 0, carry = 0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double get() const { return sum; }
};

constexpr double kPi = 3.141592653589793238462643383279503;

} // namespace

// ---------------------------------------------------------------------
// Gamma (Lanczos, g = 7, 9 terms)
// ---------------------------------------------------------------------

double gamma_fn(double z) {
    if (!(z > 0.0 && z <= 3.0))
        throw std::domain_error("gamma_fn: z must be in (0, 3], got " + std::to_string(z));

    static const double c[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };

    if (z < 0.5) // reflection keeps the rational part on [0.5, 1]
        return kPi / (std::sin(kPi * z) * gamma_fn(1.0 - z));

    const double zz = z - 1.0;
    double x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (zz + i);
    const double t = zz + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, zz + 0.5) * std::exp(-t) * x;
}

// ---------------------------------------------------------------------
// Zeta (Euler-Maclaurin)
// ---------------------------------------------------------------------

double zeta(double s) {
    if (!(s >= 1.2))
        throw std::domain_error("zeta: s must be >= 1.2, got " + std::to_string(s));

    // B_{2k} / (2k)! for k = 1..7, plus the first omitted coefficient used
    // for the remainder check.
    static const double em[7] = {
        1.0 / 12,
        -1.0 / 720,
        1.0 / 30240,
        -1.0 / 1209600,
        1.0 / 47900160,
        -691.0 / 1307674368000.0,
        1.0 / 74724249600.0,
    };
    static const double em_next = -3617.0 / 10670622842880000.0;

    const int N = 32;
    KahanSum sum;
    for (int n = 1; n <= N; ++n) sum.add(std::pow(double(n), -s));

    double result = sum.get();
    result += std::pow(double(N), 1.0 - s) / (s - 1.0);
    result -= 0.5 * std::pow(double(N), -s);

    // Correction terms B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^(1-s-2k).
    double poch = s;                      // rising product, currently (s)_1
    double npow = std::pow(double(N), -s - 1.0);
    const double n2 = 1.0 / (double(N) * double(N));
    for (int k = 0; k < 7; ++k) {
        result += em[k] * poch * npow;
        poch *= (s + 2 * k + 1) * (s + 2 * k + 2);
        npow *= n2;
    }

    // For real s > 0 the remainder is no larger than the first omitted term.
    const double remainder = std::fabs(em_next * poch * npow);
    if (remainder > 1e-13)
        throw std::logic_error("zeta: Euler-Maclaurin remainder escaped its design bound");
    return result;
}

// ---------------------------------------------------------------------
// Q(alpha)
// ---------------------------------------------------------------------

QValue q_function(double alpha) {
    if (!(alpha >= 0.0))
        throw std::domain_error("q_function: alpha must be >= 0, got " + std::to_string(alpha));
    if (alpha == 0.0) return {0.0, 1.0}; // alpha*log(alpha) -> 0
    if (alpha == 1.0) return {1.0, 0.0};
    return {alpha, std::fma(alpha, std::log(alpha), 1.0 - alpha)};
}

// ---------------------------------------------------------------------
// Euler product machinery
// ---------------------------------------------------------------------
//
// value = prefactor * exp(sum of log factors over p <= prime_limit).
// tail_bound = sum of |log factor| at table primes in the window
// (prime_limit, W], W = min(100 * prime_limit, primes.limit), plus
// beyond(W) >= sum over p > W of |log factor|, plus prefactor and
// rounding slack.  The integer-comparison bound alone cannot certify
// below c2/prime_limit; the exact window sum can.

namespace {

template <typename TermFn, typename BeyondFn>
EulerProductValue euler_product(double prefactor, double prefactor_log_err,
                                u64 prime_limit, const PrimeTable& primes,
                                TermFn&& log_term, BeyondFn&& beyond) {
    if (prime_limit < 100)
        throw std::domain_error("euler product: prime_limit must be >= 100");
    if (primes.limit < prime_limit)
        throw std::invalid_argument("euler product: prime table limit " +
                                    std::to_string(primes.limit) +
                                    " < prime_limit " + std::to_string(prime_limit));

    const u64 window_hi = std::min<u64>(100 * prime_limit, primes.limit);
    KahanSum logsum;
    KahanSum window;
    for (u64 p : primes.primes) {
        if (p > window_hi) break;
        const double lt = log_term(static_cast<double>(p));
        if (p <= prime_limit)
            logsum.add(lt);
        else
            window.add(std::fabs(lt));
    }

    EulerProductValue out;
    out.prime_limit = prime_limit;
    out.value = prefactor * std::exp(logsum.get());
    out.tail_bound = window.get() + beyond(static_cast<double>(window_hi)) +
                     prefactor_log_err + 1e-13;
    return out;
}

// Majorant sum_{p > W} (c2/p^2 + c3/(p-1)^3) <= c2/W + 0.51*c3/W^2 by
// integer comparison (sum_{m>W} m^-2 <= 1/W, sum_{m>=W} m^-3 <= 0.51/W^2
// for W >= 100).
auto poly_beyond(double c2, double c3) {
    return [c2, c3](double w) { return c2 / w + 0.51 * c3 / (w * w); };
}

void check_z(double z) {
    if (!(z >= 0.0 && z <= 2.0))
        throw std::domain_error("lambda: z must be in [0, 2], got " + std::to_string(z));
}

} // namespace

EulerProductValue lambda_fn(double z, u64 prime_limit, const PrimeTable& primes) {
    check_z(z);
    // log factor = z(1-z)/(2p^2) + O(1/p^3): the bookkept remainder stays
    // under (1.4z + 1.05z^2 + 0.4z^3)/(p-1)^3 for p >= 10^4.
    const double c2 = std::fabs(z * (1.0 - z)) / 2.0;
    const double c3 = 1.4 * z + 1.05 * z * z + 0.4 * z * z * z;
    return euler_product(
        1.0 / gamma_fn(z + 1.0), 5e-13, prime_limit, primes,
        [z](double p) { return std::log1p(z / (p - 1.0)) + z * std::log1p(-1.0 / p); },
        poly_beyond(c2, c3));
}

EulerProductValue lambda_star_fn(double z, u64 prime_limit, const PrimeTable& primes) {
    check_z(z);
    // log factor = -(z^2+z)/(2p^2) + O(1/p^3).
    const double c2 = (z * z + z) / 2.0;
    const double c3 = 0.4 * (z * z * z + z);
    return euler_product(
        1.0 / gamma_fn(z + 1.0), 5e-13, prime_limit, primes,
        [z](double p) { return std::log1p(z / p) + z * std::log1p(-1.0 / p); },
        poly_beyond(c2, c3));
}

EulerProductValue c0_constant(u64 prime_limit, const PrimeTable& primes) {
    // factor - 1 = 1/(p(p-1+sqrt(p^2-p))) <= 1/(2p(p-1)) <= 0.501/p^2.
    return euler_product(
        1.0, 0.0, prime_limit, primes,
        [](double p) { return std::log1p(1.0 / (p * (p - 1.0 + std::sqrt(p * p - p)))); },
        poly_beyond(0.501, 0.0));
}

std::pair<EulerProductValue, EulerProductValue>
c1_c2_constants(int A, u64 prime_limit, const PrimeTable& primes) {
    if (A < 2) throw std::domain_error("c1_c2_constants: A must be >= 2");
    const double z = 1.0 / A;
    const double pre = 1.0 / gamma_fn(z);

    // c1's product is lambda's at z = 1/A.
    EulerProductValue c1 = euler_product(
        pre, 5e-13, prime_limit, primes,
        [z](double p) { return std::log1p(z / (p - 1.0)) + z * std::log1p(-1.0 / p); },
        poly_beyond(std::fabs(z * (1.0 - z)) / 2.0, 1.4 * z + 1.05 * z * z + 0.4 * z * z * z));

    // c2's log factor = -log(1 - 1/(Ap)) + (1/A) log(1 - 1/p)
    //                 = -(A-1)/(2 A^2 p^2) + O(1/(A p^3)).
    EulerProductValue c2 = euler_product(
        pre, 5e-13, prime_limit, primes,
        [z](double p) { return -std::log1p(-z / p) + z * std::log1p(-1.0 / p); },
        poly_beyond((1.0 - z) * z / 2.0, 0.4 * z));

    return {c1, c2};
}

EulerProductValue g_function(double s, u64 prime_limit, const PrimeTable& primes) {
    if (!(s > 0.5 && s <= 2.0))
        throw std::domain_error("g_function: s must be in (0.5, 2], got " + std::to_string(s));
    // factor - 1 = (p^s - (p-1)^s)/(p^2s (p-1)^s) <= s/(p-1)^(2s+1)
    // (p^s - (p-1)^s = s * integral of t^(s-1) over [p-1, p]).
    return euler_product(
        1.0, 0.0, prime_limit, primes,
        [s](double p) {
            const double u = -std::expm1(s * std::log1p(-1.0 / p)) *
                             std::exp(-s * (std::log(p) + std::log(p - 1.0)));
            return std::log1p(u);
        },
        [s](double w) {
            return s * std::pow(w, -(2.0 * s + 1.0)) + 0.5 * std::pow(w, -2.0 * s);
        });
}

// ---------------------------------------------------------------------
// F(s) = zeta(2s) G(s)
// ---------------------------------------------------------------------

FIdentityReport f_identity_check(double s, u64 x_cap, u64 prime_limit,
                                 const PrimeTable& primes) {
    if (!(s >= 0.6 && s <= 2.0))
        throw std::domain_error("f_identity_check: s must be in [0.6, 2], got " +
                                std::to_string(s));
    if (x_cap < 10000)
        throw std::domain_error("f_identity_check: x_cap must be >= 10^4");

    // Left side: k*phi(k) runs over A without repetition (injectivity), so
    // summing (k*phi(k))^-s over k*phi(k) <= x_cap is the truncated series.
    const u64 kmax = phi_iteration_bound(x_cap);
    const PrimeTable small = sieve_primes(std::max<u64>(isqrt(kmax), 2));
    KahanSum lhs_sum;
    const u64 step = u64(1) << 20;
    for (u64 a = 1; a <= kmax; a += step) {
        const u64 b = std::min(kmax + 1, a + step);
        const ArithTable phi = sieve_table(ArithKind::Phi, a, b, small);
        auto v = phi.values64();
        for (u64 k = a; k < b; ++k) {
            const u128 n = u128(k) * v[k - a];
            if (n <= x_cap)
                lhs_sum.add(std::pow(static_cast<double>(static_cast<u64>(n)), -s));
        }
    }
    const double lhs = lhs_sum.get();

    // Truncation tail via |A cap [1,y]| <= 8.78 sqrt(y) (see header):
    // sum_{n in A, n > x} n^-s <= s * 8.78 * integral y^(-s-1/2) dy
    //                          = 8.78 * s/(s-1/2) * x^(1/2-s).
    const double tail_lhs =
        8.78 * s / (s - 0.5) * std::pow(static_cast<double>(x_cap), 0.5 - s);

    const EulerProductValue g = g_function(s, prime_limit, primes);
    const double z2s = zeta(2.0 * s);
    const double rhs = z2s * g.value;

    const double rhs_err = std::fabs(rhs) * std::expm1(g.tail_bound) + 1e-12 * g.value + 1e-12;
    const double float_slack = static_cast<double>(kmax) * 1e-16 + 1e-12;

    FIdentityReport report;
    report.s = s;
    report.lhs = lhs;
    report.rhs = rhs;
    report.gap = std::fabs(lhs - rhs);
    report.bound = tail_lhs + rhs_err + float_slack;
    report.pass = report.gap <= report.bound;
    return report;
}

} // namespace selfprod
