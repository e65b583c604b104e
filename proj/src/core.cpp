#include "selfprod/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "selfprod/errors.hpp"
#include "selfprod/parallel.hpp"

namespace selfprod {

ArithKind to_arith(FKind kind) {
    switch (kind) {
        case FKind::Tau: return ArithKind::Tau;
        case FKind::Omega: return ArithKind::Omega;
        case FKind::BigOmega: return ArithKind::BigOmega;
        case FKind::Phi: return ArithKind::Phi;
    }
    return ArithKind::Tau;
}

const char* fkind_name(FKind kind) { return arith_kind_name(to_arith(kind)); }

u64 phi_iteration_bound(u64 x) {
    const double b = std::pow(static_cast<double>(x) * std::sqrt(2.0), 2.0 / 3.0);
    return static_cast<u64>(std::floor(b)) + 1;
}

namespace {

struct KRange {
    u64 lo, hi; // half-open
};

// Smallest k-interval guaranteed to produce every member of A_f in [1, x];
// the one-line proofs live in the header.
KRange k_range(FKind kind, u64 x) {
    switch (kind) {
        case FKind::Tau: return {1, std::max<u64>(x / 2 + 1, 2)}; // k = 1 always in range
        case FKind::Omega:
        case FKind::BigOmega: return {2, x + 1};
        case FKind::Phi: return {1, phi_iteration_bound(x) + 1};
    }
    return {1, 1};
}

// Applies fn(k, f(k)) for k in [lo, hi), sieving in opt.segment_width chunks
// across opt.threads workers.  fn must be thread-safe.
template <typename Fn>
void scan_kf(FKind kind, u64 lo, u64 hi, const EnumerateOptions& opt, Fn&& fn) {
    if (lo >= hi) return;
    const PrimeTable primes = sieve_primes(std::max<u64>(isqrt(hi - 1), 2));
    const ArithKind ak = to_arith(kind);
    for_each_segment(lo, hi, opt.segment_width, opt.threads,
                     [&](u64 a, u64 b, unsigned worker) {
                         const ArithTable t = sieve_table(ak, a, b, primes);
                         if (ak == ArithKind::Tau) {
                             auto v = t.values32();
                             for (u64 k = a; k < b; ++k) fn(k, v[k - a], worker);
                         } else if (ak == ArithKind::Phi) {
                             auto v = t.values64();
                             for (u64 k = a; k < b; ++k) fn(k, v[k - a], worker);
                         } else {
                             auto v = t.values8();
                             for (u64 k = a; k < b; ++k) fn(k, v[k - a], worker);
                         }
                     });
}

} // namespace

RepresentableSet enumerate_representable(FKind kind, u64 x, const EnumerateOptions& opt) {
    if (x == 0) throw std::domain_error("enumerate_representable: x must be >= 1");
    if (x + 1 > opt.max_bits)
        throw resource_error("enumerate_representable: x = " + std::to_string(x) +
                             " needs " + std::to_string(x + 1) +
                             " membership bits, above the cap of " +
                             std::to_string(opt.max_bits) +
                             " (raise EnumerateOptions::max_bits to override)");

    RepresentableSet set;
    set.x = x;
    set.kind = kind;
    set.bits = BitArray(x + 1);

    const KRange r = k_range(kind, x);
    scan_kf(kind, r.lo, r.hi, opt, [&](u64 k, u64 f, unsigned) {
        if (f == 0) return; // omega(1) = 0: no represented value
        if (u128(k) * f <= x) set.bits.set_atomic(k * f);
    });
    set.count = set.bits.count();
    return set;
}

u64 count_representable(FKind kind, u64 x, const EnumerateOptions& opt) {
    return enumerate_representable(kind, x, opt).count;
}

std::vector<CollisionRecord> find_collisions(FKind kind, u64 x, const EnumerateOptions& opt) {
    if (x == 0) throw std::domain_error("find_collisions: x must be >= 1");
    const KRange r = k_range(kind, x);
    if (r.hi - r.lo > (u64(1) << 27))
        throw resource_error("find_collisions: k-range of " + std::to_string(r.hi - r.lo) +
                             " exceeds the 2^27 cap on witness pairs held in memory");

    // Emit (n, k) per segment, then sort and scan duplicate n runs.
    const unsigned nworkers = resolve_threads(opt.threads);
    std::vector<std::vector<std::pair<u64, u64>>> local(nworkers);
    scan_kf(kind, r.lo, r.hi, opt, [&](u64 k, u64 f, unsigned worker) {
        if (f == 0) return;
        if (u128(k) * f <= x) local[worker].emplace_back(k * f, k);
    });

    std::vector<std::pair<u64, u64>> pairs;
    size_t total = 0;
    for (const auto& v : local) total += v.size();
    pairs.reserve(total);
    for (auto& v : local) {
        pairs.insert(pairs.end(), v.begin(), v.end());
        v.clear();
        v.shrink_to_fit();
    }
    std::sort(pairs.begin(), pairs.end());

    std::vector<CollisionRecord> records;
    for (size_t i = 0; i < pairs.size();) {
        size_t j = i;
        while (j < pairs.size() && pairs[j].first == pairs[i].first) ++j;
        for (size_t a = i; a < j; ++a)
            for (size_t b = a + 1; b < j; ++b)
                records.push_back({pairs[i].first, pairs[a].second, pairs[b].second});
        i = j;
    }
    return records; // (n, k1) order follows from the sorted pair list
}

std::optional<u64> invert_phi_selfproduct(u64 n, const PrimeTable& primes) {
    if (n == 0) throw std::invalid_argument("invert_phi_selfproduct: n must be positive");
    if (n == 1) return 1;

    auto split = [&](u64 m) {
        // Trial division against the table when it reaches sqrt(m);
        // factorize_u64 handles anything past it.
        return (primes.limit >= isqrt(m)) ? factorize(m, primes) : factorize_u64(m);
    };

    std::map<u64, u32> rem; // prime -> exponent of what is left of n
    for (auto [p, e] : split(n).factors) rem[p] = e;

    u64 k = 1;
    u64 phi_k = 1;
    while (!rem.empty()) {
        const auto [p, e] = *rem.rbegin(); // largest remaining prime
        if (e % 2 == 0) return std::nullopt;
        const u32 alpha = (e + 1) / 2;
        rem.erase(p); // removes p^(2*alpha - 1) = p^e, all of it

        // Divide out the phi(p^alpha) factor p - 1; failure means n is not
        // of the form k*phi(k).
        for (auto [q, f] : split(p - 1).factors) {
            auto it = rem.find(q);
            if (it == rem.end() || it->second < f) return std::nullopt;
            it->second -= f;
            if (it->second == 0) rem.erase(it);
        }

        for (u32 j = 0; j < alpha; ++j) k *= p;
        phi_k *= p - 1;
        for (u32 j = 1; j < alpha; ++j) phi_k *= p;
    }

    // Reconstruction check: the accumulated k must reproduce n exactly.
    if (u128(k) * phi_k != n) return std::nullopt;
    return k;
}

KSetStats k_set_stats(u64 x, const EnumerateOptions& opt) {
    if (x < 16) throw std::domain_error("k_set_stats: x must be >= 16");

    const double loglog = std::log(std::log(static_cast<double>(x)));
    const double psi = 10.0 * std::sqrt(std::log(loglog));
    const double window = psi * std::sqrt(loglog);

    KSetStats stats;
    stats.x = x;
    stats.psi = psi;

    u64 in_k = 0, out_k = 0;
    const unsigned nworkers = resolve_threads(opt.threads);
    std::vector<std::pair<u64, u64>> partial(nworkers, {0, 0});
    scan_kf(FKind::Omega, 2, x + 1, opt, [&](u64 k, u64 omega, unsigned worker) {
        if (u128(k) * omega > x) return;
        if (std::fabs(static_cast<double>(omega) - loglog) <= window)
            partial[worker].first += 1;
        else
            partial[worker].second += 1;
    });
    for (auto [a, b] : partial) {
        in_k += a;
        out_k += b;
    }
    stats.k_count = in_k;
    stats.violators = out_k;
    return stats;
}

} // namespace selfprod
