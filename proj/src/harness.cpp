#include "selfprod/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "selfprod/errors.hpp"
#include "selfprod/parallel.hpp"

namespace selfprod {

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

// Table sized for Euler-product evaluation: the window beyond prime_limit
// sharpens certified tails, capped at 10^8 where sieving cost outweighs
// any gain.
PrimeTable build_product_table(u64 prime_limit, u64 window_factor) {
    const u64 capped = std::min<u64>(window_factor * prime_limit, 100000000);
    return sieve_primes(std::max<u64>(prime_limit, capped));
}

double prediction_for(FKind kind, u64 x, double c0_value) {
    const double xd = static_cast<double>(x);
    switch (kind) {
        case FKind::Tau: {
            const double lx = std::log(xd);
            return lx > 0 ? xd / std::sqrt(lx) : std::numeric_limits<double>::quiet_NaN();
        }
        case FKind::Omega:
        case FKind::BigOmega: {
            const double llx = std::log(std::log(xd));
            return x >= 3 && llx > 0 ? xd / llx : std::numeric_limits<double>::quiet_NaN();
        }
        case FKind::Phi:
            return c0_value * std::sqrt(xd);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double c0_for_predictions(const HarnessOptions& opt) {
    const PrimeTable primes = build_product_table(opt.prime_limit, 1);
    return c0_constant(opt.prime_limit, primes).value;
}

EnumerateOptions enum_opts(const HarnessOptions& opt) {
    EnumerateOptions e;
    e.threads = opt.threads;
    return e;
}

void write_asymptotics_row(std::ostream& out, const AsymptoticsRow& row) {
    out << row.x << ',' << row.count << ',' << fmt_real(row.prediction) << ','
        << fmt_real(row.ratio) << '\n';
}

} // namespace

AsymptoticsRow make_asymptotics_row(FKind kind, u64 x, u64 count, double c0_value) {
    AsymptoticsRow row;
    row.x = x;
    row.count = count;
    row.prediction = prediction_for(kind, x, c0_value);
    row.ratio = static_cast<double>(count) / row.prediction;
    return row;
}

void cmd_count(std::ostream& out, FKind kind, u64 x, const HarnessOptions& opt) {
    const double c0v = kind == FKind::Phi ? c0_for_predictions(opt) : 0.0;
    const u64 count = count_representable(kind, x, enum_opts(opt));
    out << "x,count,prediction,ratio\n";
    write_asymptotics_row(out, make_asymptotics_row(kind, x, count, c0v));
}

void cmd_scan(std::ostream& out, FKind kind, const std::vector<u64>& x_list,
              const HarnessOptions& opt) {
    if (x_list.empty()) throw std::invalid_argument("scan: empty x list");
    for (size_t i = 1; i < x_list.size(); ++i)
        if (x_list[i] <= x_list[i - 1])
            throw std::invalid_argument("scan: x list must be strictly ascending");

    const bool phi = kind == FKind::Phi;
    const double c0v = phi ? c0_for_predictions(opt) : 0.0;

    // Membership of n in A_f does not depend on x, so one enumeration at
    // the largest x serves every prefix count.
    const RepresentableSet set = enumerate_representable(kind, x_list.back(), enum_opts(opt));

    out << (phi ? "x,count,prediction,ratio,c0_gap\n" : "x,count,prediction,ratio\n");
    for (u64 x : x_list) {
        const AsymptoticsRow row = make_asymptotics_row(kind, x, set.bits.count_prefix(x), c0v);
        if (phi) {
            // c0_gap tracks count/sqrt(x) against the limit constant, the
            // quantity whose convergence the scan is for.
            const double scaled = static_cast<double>(row.count) / std::sqrt(static_cast<double>(x));
            out << row.x << ',' << row.count << ',' << fmt_real(row.prediction) << ','
                << fmt_real(row.ratio) << ',' << fmt_real(std::fabs(scaled - c0v)) << '\n';
        } else {
            write_asymptotics_row(out, row);
        }
    }
}

void cmd_collisions(std::ostream& out, std::ostream& summary, FKind kind, u64 x,
                    const HarnessOptions& opt) {
    const std::vector<CollisionRecord> records = find_collisions(kind, x, enum_opts(opt));
    out << "n,k1,k2\n";
    u64 bad_n = 0;
    u64 prev = 0;
    for (const CollisionRecord& r : records) {
        out << r.n << ',' << r.k1 << ',' << r.k2 << '\n';
        if (r.n != prev) {
            ++bad_n;
            prev = r.n;
        }
    }

    summary << "kind=" << fkind_name(kind) << " x=" << x << " pairs=" << records.size()
            << " bad_n=" << bad_n;
    // Diagnostic against the bad-n error-term shape
    // B(x) (loglog x)^(3/2) / (x (log3 x)^(1/2) (log4 x)^2); the iterated
    // logs only all turn positive past x ~ 3.8e6.
    const double l2 = std::log(std::log(static_cast<double>(x)));
    if (l2 > 1.0) {
        const double l3 = std::log(l2);
        const double l4 = std::log(l3);
        const double diag = static_cast<double>(bad_n) * std::pow(l2, 1.5) /
                            (static_cast<double>(x) * std::sqrt(l3) * l4 * l4);
        summary << " diagnostic=" << fmt_real(diag);
    }
    summary << '\n';
}

void cmd_invert_phi(std::ostream& out, u64 n) {
    static const PrimeTable small = sieve_primes(u64(1) << 16);
    const std::optional<u64> k = invert_phi_selfproduct(n, small);
    if (!k) {
        out << "none\n";
        return;
    }
    // Verify the witness before printing it.
    const u64 phi = factorize_u64(*k).totient();
    if (u128(*k) * phi != n)
        throw std::logic_error("invert-phi: witness failed verification");
    out << *k << '\n';
}

void cmd_pi_l(std::ostream& out, u64 x, const HarnessOptions& opt) {
    if (x < 16) throw std::domain_error("pi-l: x must be >= 16");

    constexpr unsigned kMaxL = 64;
    const unsigned workers = resolve_threads(opt.threads);
    std::vector<std::vector<u64>> hist(workers, std::vector<u64>(kMaxL + 1, 0));
    std::vector<std::vector<u64>> hist_star(workers, std::vector<u64>(kMaxL + 1, 0));

    const PrimeTable primes = sieve_primes(std::max<u64>(isqrt(x), 2));
    for_each_segment(2, x + 1, u64(1) << 22, opt.threads, [&](u64 a, u64 b, unsigned w) {
        const ArithTable omega = sieve_table(ArithKind::Omega, a, b, primes);
        const ArithTable sqf = sieve_table(ArithKind::Squarefree, a, b, primes);
        auto ov = omega.values8();
        auto sv = sqf.values8();
        for (u64 i = 0; i < b - a; ++i) {
            hist[w][ov[i]] += 1;
            if (sv[i]) hist_star[w][ov[i]] += 1;
        }
    });

    std::vector<u64> pi_l(kMaxL + 1, 0), pi_l_star(kMaxL + 1, 0);
    for (unsigned w = 0; w < workers; ++w)
        for (unsigned l = 0; l <= kMaxL; ++l) {
            pi_l[l] += hist[w][l];
            pi_l_star[l] += hist_star[w][l];
        }

    unsigned max_l = 1;
    for (unsigned l = kMaxL; l >= 1; --l)
        if (pi_l[l] > 0) {
            max_l = l;
            break;
        }

    const double xd = static_cast<double>(x);
    const double lx = std::log(xd);
    const double llx = std::log(lx);
    const PrimeTable prod_primes = build_product_table(opt.prime_limit, 1);

    out << "x,l,pi_l,pi_l_star,pred,pred_star\n";
    double lfact = 1.0; // (l-1)!
    for (unsigned l = 1; l <= max_l; ++l) {
        if (l > 1) lfact *= l - 1;
        PiLRow row;
        row.x = x;
        row.l = l;
        row.pi_l = pi_l[l];
        row.pi_l_star = pi_l_star[l];
        row.pred = std::numeric_limits<double>::quiet_NaN();
        row.pred_star = std::numeric_limits<double>::quiet_NaN();
        const double z = (l - 1) / llx;
        if (z <= 2.0) {
            const double main = xd / lx * std::pow(llx, l - 1.0) / lfact;
            row.pred = main * lambda_fn(z, opt.prime_limit, prod_primes).value;
            row.pred_star = main * lambda_star_fn(z, opt.prime_limit, prod_primes).value;
        }
        out << row.x << ',' << row.l << ',' << row.pi_l << ',' << row.pi_l_star << ','
            << fmt_real(row.pred) << ',' << fmt_real(row.pred_star) << '\n';
    }
}

void cmd_constants(std::ostream& out, const HarnessOptions& opt) {
    const PrimeTable primes = build_product_table(opt.prime_limit, 100);
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();

    auto push = [&](const std::string& name, const EulerProductValue& v) {
        nlohmann::ordered_json e;
        e["name"] = name;
        e["value"] = v.value;
        e["prime_limit"] = v.prime_limit;
        e["tail_bound"] = v.tail_bound;
        entries.push_back(std::move(e));
    };

    push("c0", c0_constant(opt.prime_limit, primes));
    entries.back()["note"] =
        "reference value known to three decimals (1.365); further digits are computed";

    for (int A = 2; A <= 5; ++A) {
        const auto [c1, c2] = c1_c2_constants(A, opt.prime_limit, primes);
        push("c1(" + std::to_string(A) + ")", c1);
        push("c2(" + std::to_string(A) + ")", c2);
    }

    char zbuf[8];
    for (int i = 0; i <= 10; ++i) {
        const double z = i / 10.0;
        std::snprintf(zbuf, sizeof(zbuf), "%.1f", z);
        push(std::string("lambda(") + zbuf + ")", lambda_fn(z, opt.prime_limit, primes));
        push(std::string("lambda_star(") + zbuf + ")", lambda_star_fn(z, opt.prime_limit, primes));
    }

    out << entries.dump(2) << '\n';
}

void cmd_fcheck(std::ostream& out, const std::vector<double>& s_list, u64 x_cap,
                const HarnessOptions& opt) {
    if (s_list.empty()) throw std::invalid_argument("fcheck: empty s list");
    const PrimeTable primes = build_product_table(opt.prime_limit, 10);
    out << "s,lhs,rhs,gap,bound,pass\n";
    for (double s : s_list) {
        const FIdentityReport r = f_identity_check(s, x_cap, opt.prime_limit, primes);
        out << fmt_real(r.s) << ',' << fmt_real(r.lhs) << ',' << fmt_real(r.rhs) << ','
            << fmt_real(r.gap) << ',' << fmt_real(r.bound) << ','
            << (r.pass ? "true" : "false") << '\n';
    }
}

} // namespace selfprod
