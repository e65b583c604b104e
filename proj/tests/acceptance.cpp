// Acceptance suite: runs the ten release criteria end to end and prints
// one PASS/FAIL line each.  Exit code is the number of failed criteria.

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "selfprod/constants.hpp"
#include "selfprod/core.hpp"
#include "selfprod/parallel.hpp"
#include "support/naive.hpp"

using namespace selfprod;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

void report(int criterion, bool pass, const std::string& what) {
    std::printf("%s  criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

// Peak resident set of this process in MiB: VmHWM when the kernel exposes
// it, getrusage otherwise.
double peak_rss_mib() {
    std::ifstream status("/proc/self/status");
    std::string line;
    while (std::getline(status, line)) {
        if (line.rfind("VmHWM:", 0) == 0) {
            std::stringstream ss(line.substr(6));
            double kib = 0;
            ss >> kib;
            return kib / 1024.0;
        }
    }
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    return static_cast<double>(usage.ru_maxrss) / 1024.0; // ru_maxrss is KiB on Linux
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

// 1. count_representable equals the naive double loop at x = 10^5, all kinds.
static void criterion_1() {
    const auto start = clock_type::now();
    bool pass = true;
    std::string detail;
    for (FKind kind : {FKind::Tau, FKind::Omega, FKind::BigOmega, FKind::Phi}) {
        const u64 expected = naive::count_representable(kind, 100000);
        const u64 got = count_representable(kind, 100000);
        detail += std::string(fkind_name(kind)) + "=" + std::to_string(got) + " ";
        if (got != expected) {
            pass = false;
            detail += "(oracle " + std::to_string(expected) + "!) ";
        }
    }
    const double t = seconds_since(start);
    report(1, pass && t < 5.0,
           "oracle equivalence at x=10^5: " + detail + "in " + fmt(t) + " s (budget 5)");
}

// 2. phi-inversion round trip for k <= 10^6 and completeness for n <= 10^6.
static void criterion_2(const PrimeTable& table_1e6) {
    const auto start = clock_type::now();
    u64 roundtrip_fail = 0;
    for (u64 a = 1; a <= 1000000; a += u64(1) << 20) {
        const u64 b = std::min<u64>(1000001, a + (u64(1) << 20));
        const ArithTable phi = sieve_table(ArithKind::Phi, a, b, table_1e6);
        auto v = phi.values64();
        for (u64 k = a; k < b; ++k) {
            const auto inv = invert_phi_selfproduct(k * v[k - a], table_1e6);
            if (!inv || *inv != k) ++roundtrip_fail;
        }
    }

    const RepresentableSet set = enumerate_representable(FKind::Phi, 1000000);
    u64 completeness_fail = 0;
    for (u64 n = 1; n <= 1000000; ++n)
        if (invert_phi_selfproduct(n, table_1e6).has_value() != set.contains(n))
            ++completeness_fail;

    const double t = seconds_since(start);
    report(2, roundtrip_fail == 0 && completeness_fail == 0 && t < 30.0,
           "phi inversion: " + std::to_string(roundtrip_fail) + " round-trip and " +
               std::to_string(completeness_fail) + " completeness mismatches in " + fmt(t) +
               " s (budget 30)");
}

// 3. c0 at prime_limit 10^6 reproduces 1.365 with tail_bound < 1e-5.
static void criterion_3(const PrimeTable& primes) {
    const EulerProductValue c0 = c0_constant(1000000, primes);
    const bool pass = c0.value >= 1.365 && c0.value < 1.366 && c0.tail_bound < 1e-5;
    report(3, pass, "c0(10^6) = " + fmt(c0.value) + ", tail " + fmt(c0.tail_bound));
}

// 4. Closed-form identities for lambda, lambda*, Gamma, zeta and Q.
static void criterion_4(const PrimeTable& big) {
    const double pi = 3.14159265358979323846;
    bool pass = true;
    std::string detail;

    const double l0 = lambda_fn(0.0, 1000000, big).value;
    const double l1 = lambda_fn(1.0, 1000000, big).value;
    if (std::fabs(l0 - 1.0) > 1e-10 || std::fabs(l1 - 1.0) > 1e-10) {
        pass = false;
        detail += "lambda(0)=" + fmt(l0) + " lambda(1)=" + fmt(l1) + " ";
    }

    // the 1e-9 target needs the product pushed to 10^8
    const double ls1 = lambda_star_fn(1.0, 100000000, big).value;
    if (std::fabs(ls1 - 6.0 / (pi * pi)) > 1e-9) {
        pass = false;
        detail += "lambda*(1)=" + fmt(ls1) + " ";
    }

    if (std::fabs(gamma_fn(0.5) - std::sqrt(pi)) > 1e-12) {
        pass = false;
        detail += "gamma(1/2) off ";
    }
    if (std::fabs(zeta(2.0) - pi * pi / 6.0) > 1e-12) {
        pass = false;
        detail += "zeta(2) off ";
    }

    if (q_function(1.0).q != 0.0) {
        pass = false;
        detail += "Q(1) != 0 ";
    }
    for (int i = -10; i <= 10; ++i) {
        if (i == 0) continue;
        const double eps = i / 10.0;
        if (q_function(1.0 + eps).q < eps * eps / 3.0) {
            pass = false;
            detail += "Q(1+" + fmt(eps) + ") below eps^2/3 ";
        }
    }

    report(4, pass, "analytic identities" + (detail.empty() ? "" : ": " + detail));
}

// 5. F(s) = zeta(2s) G(s) within certified bounds on the s grid.
static void criterion_5(const PrimeTable& big) {
    const auto start = clock_type::now();
    bool pass = true;
    std::string detail;
    for (double s : {0.6, 0.75, 1.0, 1.5, 2.0}) {
        const FIdentityReport r = f_identity_check(s, 10000000, 1000000, big);
        if (!r.pass) pass = false;
        detail += "s=" + fmt(s) + (r.pass ? " ok " : " FAIL ");
    }
    const double t = seconds_since(start);
    report(5, pass && t < 60.0, "F-identity x_cap=10^7: " + detail + "in " + fmt(t) + " s (budget 60)");
}

// 6. Collision families at x = 10^6.
static void criterion_6(const PrimeTable& table_1e6) {
    const u64 x = 1000000;
    const auto tau = find_collisions(FKind::Tau, x);
    const auto omega = find_collisions(FKind::Omega, x);
    const auto phi = find_collisions(FKind::Phi, x);

    auto has_pair = [](const std::vector<CollisionRecord>& rs, u64 n, u64 k1, u64 k2) {
        auto it = std::lower_bound(rs.begin(), rs.end(), n,
                                   [](const CollisionRecord& r, u64 v) { return r.n < v; });
        for (; it != rs.end() && it->n == n; ++it)
            if (it->k1 == k1 && it->k2 == k2) return true;
        return false;
    };

    // The pair (18m, 27m) has common value 108*m*tau(m) for gcd(m,6)=1 and
    // belongs to the list exactly when that value is <= x; check presence
    // and absence both ways.
    const ArithTable taut = sieve_table(ArithKind::Tau, 1, x / 108 + 2, table_1e6);
    u64 tau_mismatch = 0, tau_present = 0;
    for (u64 m = 1; m <= x / 108; ++m) {
        if (std::gcd(m, u64(6)) != 1) continue;
        const u64 n = 108 * m * taut.at(m);
        const bool want = n <= x;
        if (has_pair(tau, n, 18 * m, 27 * m) != want) ++tau_mismatch;
        if (want) ++tau_present;
    }

    u64 omega_missing = 0, omega_checked = 0;
    for (u64 q : table_1e6.primes) {
        if (q < 5) continue;
        if (q > x / 18) break;
        ++omega_checked;
        if (!has_pair(omega, 18 * q, 6 * q, 9 * q)) ++omega_missing;
    }

    const bool pass = tau_mismatch == 0 && omega_missing == 0 && phi.empty();
    report(6, pass,
           "collision families: tau " + std::to_string(tau_present) + " pairs verified (" +
               std::to_string(tau_mismatch) + " mismatches), omega " +
               std::to_string(omega_checked) + " primes (" + std::to_string(omega_missing) +
               " missing), phi " + std::to_string(phi.size()) + " records");
}

// 7. Asymptotic trend for phi: count/sqrt(x) in [1,2], gap to c0 shrinking.
static void criterion_7(const PrimeTable& primes) {
    const auto start = clock_type::now();
    const double c0 = c0_constant(1000000, primes).value;
    double ratio[3];
    const u64 xs[3] = {10000, 1000000, 100000000};
    bool in_band = true;
    std::string detail;
    for (int i = 0; i < 3; ++i) {
        const u64 c = count_representable(FKind::Phi, xs[i]);
        ratio[i] = static_cast<double>(c) / std::sqrt(static_cast<double>(xs[i]));
        detail += "x=1e" + std::to_string(4 + 2 * i) + " ratio=" + fmt(ratio[i]) + " ";
        if (ratio[i] < 1.0 || ratio[i] > 2.0) in_band = false;
    }
    const bool shrinking = std::fabs(ratio[2] - c0) < std::fabs(ratio[0] - c0);
    const double t = seconds_since(start);
    const double mem = peak_rss_mib();
    report(7, in_band && shrinking && t < 180.0 && mem < 300.0,
           "phi trend: " + detail + "| gap 1e8 " + fmt(std::fabs(ratio[2] - c0)) + " < gap 1e4 " +
               fmt(std::fabs(ratio[0] - c0)) + ", " + fmt(t) + " s, peak " + fmt(mem) +
               " MiB (budget 180 s / 300 MiB)");
}

// 8. Order-of-magnitude bracket: tau counts stay in the coarse [0.1, 10] band.
static void criterion_8() {
    bool pass = true;
    std::string detail;
    for (u64 x : {u64(10000), u64(1000000), u64(100000000)}) {
        const u64 c = count_representable(FKind::Tau, x);
        const double band =
            static_cast<double>(c) * std::sqrt(std::log(static_cast<double>(x))) / x;
        detail += fmt(band) + " ";
        if (band < 0.1 || band > 10.0) pass = false;
    }
    // The tau/omega limit constants are out of numerical reach by design;
    // only the order-of-magnitude band is asserted here.
    report(8, pass, "tau band N*sqrt(log x)/x: " + detail);
}

// 9. pi_l consistency at x = 10^6.
static void criterion_9(const PrimeTable& table_1e6) {
    const u64 x = 1000000;
    std::vector<u64> pi_l(65, 0), pi_l_star(65, 0);
    for (u64 a = 2; a <= x; a += u64(1) << 21) {
        const u64 b = std::min(x + 1, a + (u64(1) << 21));
        const ArithTable omega = sieve_table(ArithKind::Omega, a, b, table_1e6);
        const ArithTable sqf = sieve_table(ArithKind::Squarefree, a, b, table_1e6);
        for (u64 k = a; k < b; ++k) {
            pi_l[omega.at(k)] += 1;
            if (sqf.at(k)) pi_l_star[omega.at(k)] += 1;
        }
    }

    u64 total = 0;
    bool star_ok = true;
    for (int l = 1; l <= 64; ++l) {
        total += pi_l[l];
        if (pi_l_star[l] > pi_l[l]) star_ok = false;
    }

    // independent prime-power count for pi_1
    u64 prime_powers = 0;
    for (u64 p : table_1e6.primes) {
        u128 v = p;
        while (v <= x) {
            ++prime_powers;
            v *= p;
        }
    }

    const bool pass = total == x - 1 && star_ok && pi_l[1] == prime_powers;
    report(9, pass,
           "pi_l at 10^6: sum=" + std::to_string(total) + ", pi_1=" + std::to_string(pi_l[1]) +
               " vs " + std::to_string(prime_powers) + " prime powers");
}

// 10. Performance: tau enumeration to 10^9 within 5 minutes / 1.5 GiB,
//     thread-count independent.
static void criterion_10() {
    EnumerateOptions all;
    all.threads = 0;
    const auto start_n = clock_type::now();
    const u64 count_threaded = count_representable(FKind::Tau, 1000000000, all);
    const double t_threaded = seconds_since(start_n);

    EnumerateOptions one;
    one.threads = 1;
    const auto start_1 = clock_type::now();
    const u64 count_single = count_representable(FKind::Tau, 1000000000, one);
    const double t_single = seconds_since(start_1);

    const double mem = peak_rss_mib();
    const bool pass = count_threaded == count_single && t_threaded <= 300.0 &&
                      t_single <= 300.0 && mem <= 1536.0;
    report(10, pass,
           "tau to 10^9: count=" + std::to_string(count_threaded) + " (threaded " +
               fmt(t_threaded) + " s, single " + fmt(t_single) + " s, peak " + fmt(mem) +
               " MiB; budget 300 s / 1536 MiB each)");
}

int main() {
    std::printf("acceptance suite\n");
    const auto start = clock_type::now();

    const PrimeTable table_1e6 = sieve_primes(1000000);
    criterion_1();
    criterion_2(table_1e6);
    {
        // The product window reaches 100x past the truncation point.
        const PrimeTable big = sieve_primes(100000000);
        criterion_3(big);
        criterion_4(big);
        criterion_5(big);
    }
    criterion_6(table_1e6);
    criterion_7(table_1e6);
    criterion_8();
    criterion_9(table_1e6);
    criterion_10();

    std::printf("%d/10 criteria passed in %.1f s\n", 10 - failures, seconds_since(start));
    return failures;
}
