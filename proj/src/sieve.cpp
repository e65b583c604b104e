#include "selfprod/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "selfprod/errors.hpp"

namespace selfprod {

u64 isqrt(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    // std::sqrt can be off by one ulp near perfect squares; fix up exactly.
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

// ---------------------------------------------------------------------
// sieve_primes
// ---------------------------------------------------------------------

PrimeTable sieve_primes(u64 limit) {
    if (limit < 2 || limit > kMaxSieveLimit)
        throw std::out_of_range("sieve_primes: limit must be in [2, 2^32], got " +
                                std::to_string(limit));

    // Odd-only bit sieve: bit i represents 2i+1.
    const u64 half = (limit - 1) / 2 + 1; // count of odd numbers <= limit
    std::vector<u64> bits((half + 63) / 64, 0);
    auto composite = [&](u64 i) { return (bits[i >> 6] >> (i & 63)) & 1; };
    auto mark = [&](u64 i) { bits[i >> 6] |= u64(1) << (i & 63); };

    const u64 root = isqrt(limit);
    for (u64 p = 3; p <= root; p += 2) {
        if (composite(p / 2)) continue;
        for (u64 m = p * p; m <= limit; m += 2 * p) mark(m / 2);
    }

    PrimeTable table;
    table.limit = limit;
    // pi(x) < 1.26 x / ln x for x >= 17; reserve roughly that.
    table.primes.reserve(limit >= 17
                             ? static_cast<size_t>(1.27 * limit / std::log(double(limit)))
                             : 8);
    table.primes.push_back(2);
    for (u64 i = 1; 2 * i + 1 <= limit; ++i)
        if (!composite(i)) table.primes.push_back(2 * i + 1);
    return table;
}

// ---------------------------------------------------------------------
// sieve_table
// ---------------------------------------------------------------------

const char* arith_kind_name(ArithKind kind) {
    switch (kind) {
        case ArithKind::Tau: return "tau";
        case ArithKind::Omega: return "omega";
        case ArithKind::BigOmega: return "bigomega";
        case ArithKind::Phi: return "phi";
        case ArithKind::Squarefree: return "squarefree";
    }
    return "?";
}

u64 ArithTable::at(u64 k) const {
    const u64 i = k - lo_;
    if (k < lo_ || k >= hi_) throw std::out_of_range("ArithTable::at: k outside segment");
    if (auto* v8 = std::get_if<std::vector<u8>>(&values_)) return (*v8)[i];
    if (auto* v32 = std::get_if<std::vector<u32>>(&values_)) return (*v32)[i];
    return std::get<std::vector<u64>>(values_)[i];
}

ArithTable sieve_table(ArithKind kind, u64 lo, u64 hi, const PrimeTable& primes) {
    if (lo < 1 || lo >= hi)
        throw std::invalid_argument("sieve_table: need 1 <= lo < hi");
    const u64 root = isqrt(hi - 1);
    if (primes.limit < root)
        throw std::invalid_argument("sieve_table: prime table limit " +
                                    std::to_string(primes.limit) +
                                    " < floor(sqrt(hi-1)) = " + std::to_string(root));

    const u64 width = hi - lo;
    std::vector<u64> rem(width);
    for (u64 i = 0; i < width; ++i) rem[i] = lo + i;

    std::vector<u8> acc8;
    std::vector<u32> acc32;
    std::vector<u64> acc64;
    switch (kind) {
        case ArithKind::Tau: acc32.assign(width, 1); break;
        case ArithKind::Omega:
        case ArithKind::BigOmega: acc8.assign(width, 0); break;
        case ArithKind::Squarefree: acc8.assign(width, 1); break;
        case ArithKind::Phi:
            acc64.assign(width, 0);
            for (u64 i = 0; i < width; ++i) acc64[i] = lo + i;
            break;
    }

    for (u64 p : primes.primes) {
        if (p > root) break;
        u64 m = ((lo + p - 1) / p) * p;
        for (; m < hi; m += p) {
            const u64 i = m - lo;
            u32 e = 0;
            while (rem[i] % p == 0) {
                rem[i] /= p;
                ++e;
            }
            switch (kind) {
                case ArithKind::Tau: acc32[i] *= e + 1; break;
                case ArithKind::Omega: acc8[i] += 1; break;
                case ArithKind::BigOmega: acc8[i] += static_cast<u8>(e); break;
                case ArithKind::Squarefree:
                    if (e > 1) acc8[i] = 0;
                    break;
                case ArithKind::Phi: acc64[i] = acc64[i] / p * (p - 1); break;
            }
        }
    }

    // Residual cofactors are prime (see header) and appear to the first power.
    for (u64 i = 0; i < width; ++i) {
        const u64 q = rem[i];
        if (q <= 1) continue;
        switch (kind) {
            case ArithKind::Tau: acc32[i] *= 2; break;
            case ArithKind::Omega: acc8[i] += 1; break;
            case ArithKind::BigOmega: acc8[i] += 1; break;
            case ArithKind::Squarefree: break;
            case ArithKind::Phi: acc64[i] = acc64[i] / q * (q - 1); break;
        }
    }

    switch (kind) {
        case ArithKind::Tau: return ArithTable(kind, lo, hi, std::move(acc32));
        case ArithKind::Phi: return ArithTable(kind, lo, hi, std::move(acc64));
        default: return ArithTable(kind, lo, hi, std::move(acc8));
    }
}

// ---------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------

u64 Factorization::value() const {
    u64 v = 1;
    for (auto [p, e] : factors)
        for (u32 j = 0; j < e; ++j) v *= p;
    return v;
}

u64 Factorization::totient() const {
    u64 t = 1;
    for (auto [p, e] : factors) {
        t *= p - 1;
        for (u32 j = 1; j < e; ++j) t *= p;
    }
    return t;
}

u64 Factorization::largest_prime() const {
    return factors.empty() ? 0 : factors.back().first;
}

Factorization factorize(u64 n, const PrimeTable& primes) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    const u64 root = isqrt(n);
    if (primes.limit < root)
        throw std::invalid_argument("factorize: prime table limit " +
                                    std::to_string(primes.limit) +
                                    " < floor(sqrt(n)) = " + std::to_string(root));

    Factorization f;
    f.n = n;
    u64 m = n;
    for (u64 p : primes.primes) {
        if (p * p > m) break;
        if (m % p != 0) continue;
        u32 e = 0;
        do {
            m /= p;
            ++e;
        } while (m % p == 0);
        f.factors.emplace_back(p, e);
    }
    if (m > 1) f.factors.emplace_back(m, 1);
    return f;
}

// ----- Miller-Rabin + Brent rho ---------------------------------------

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Witness set deterministic for all n < 3.3e24, far beyond u64.
constexpr u64 kMRBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

u64 brent_rho(u64 n) {
    // n is odd, composite, not a prime power of a small prime.
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1, q = 1, ys = 0;
        const u64 m = 128;
        u64 r = 1;
        auto step = [&](u64 v) { return (static_cast<u64>((u128(v) * v + c) % n)); };
        while (d == 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = step(y);
            for (u64 k = 0; k < r && d == 1; k += m) {
                ys = y;
                const u64 batch = std::min(m, r - k);
                for (u64 i = 0; i < batch; ++i) {
                    y = step(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
            }
            r <<= 1;
        }
        if (d == n) {
            // Batch gcd overshot; replay one step at a time.
            do {
                ys = step(ys);
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) return d;
        // Cycle degenerated for this c; retry with the next increment.
    }
}

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = brent_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

} // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : kMRBases) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

Factorization factorize_u64(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize_u64: n must be positive");
    Factorization f;
    f.n = n;
    u64 m = n;

    static const PrimeTable small = sieve_primes(1 << 16);
    for (u64 p : small.primes) {
        if (p * p > m) break;
        if (m % p != 0) continue;
        u32 e = 0;
        do {
            m /= p;
            ++e;
        } while (m % p == 0);
        f.factors.emplace_back(p, e);
    }
    if (m > 1) {
        if (m <= u64(1) << 32 || is_prime(m)) {
            // Any remaining cofactor below 2^32 is prime here: its factors
            // would all exceed 2^16, so a composite would exceed 2^32.
            f.factors.emplace_back(m, 1);
        } else {
            std::vector<u64> ps;
            factor_rec(m, ps);
            std::sort(ps.begin(), ps.end());
            for (size_t i = 0; i < ps.size();) {
                size_t j = i;
                while (j < ps.size() && ps[j] == ps[i]) ++j;
                f.factors.emplace_back(ps[i], static_cast<u32>(j - i));
                i = j;
            }
        }
    }
    return f;
}

// ---------------------------------------------------------------------
// Binary dump
// ---------------------------------------------------------------------

namespace {

void put_u64_le(std::ostream& out, u64 v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

u64 get_u64_le(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    u64 v = 0;
    for (int i = 0; i < 8; ++i) v |= u64(b[i]) << (8 * i);
    return v;
}

} // namespace

void save_table(const ArithTable& table, std::ostream& out) {
    const unsigned char tag = static_cast<unsigned char>(table.kind());
    out.write(reinterpret_cast<const char*>(&tag), 1);
    put_u64_le(out, table.lo());
    put_u64_le(out, table.hi());
    switch (table.kind()) {
        case ArithKind::Tau:
            for (u32 v : table.values32()) {
                unsigned char b[4];
                for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
                out.write(reinterpret_cast<const char*>(b), 4);
            }
            break;
        case ArithKind::Phi:
            for (u64 v : table.values64()) put_u64_le(out, v);
            break;
        default:
            out.write(reinterpret_cast<const char*>(table.values8().data()),
                      static_cast<std::streamsize>(table.size()));
            break;
    }
    if (!out) throw io_error("save_table: write failed");
}

ArithTable load_table(std::istream& in) {
    unsigned char tag = 0xff;
    in.read(reinterpret_cast<char*>(&tag), 1);
    if (!in || tag > 4) throw io_error("load_table: bad header");
    const ArithKind kind = static_cast<ArithKind>(tag);
    const u64 lo = get_u64_le(in);
    const u64 hi = get_u64_le(in);
    if (!in || lo < 1 || lo >= hi) throw io_error("load_table: bad bounds");
    const u64 width = hi - lo;

    switch (kind) {
        case ArithKind::Tau: {
            std::vector<u32> v(width);
            for (u64 i = 0; i < width; ++i) {
                unsigned char b[4];
                in.read(reinterpret_cast<char*>(b), 4);
                u32 x = 0;
                for (int j = 0; j < 4; ++j) x |= u32(b[j]) << (8 * j);
                v[i] = x;
            }
            if (!in) throw io_error("load_table: truncated values");
            return ArithTable(kind, lo, hi, std::move(v));
        }
        case ArithKind::Phi: {
            std::vector<u64> v(width);
            for (u64 i = 0; i < width; ++i) v[i] = get_u64_le(in);
            if (!in) throw io_error("load_table: truncated values");
            return ArithTable(kind, lo, hi, std::move(v));
        }
        default: {
            std::vector<u8> v(width);
            in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(width));
            if (!in) throw io_error("load_table: truncated values");
            return ArithTable(kind, lo, hi, std::move(v));
        }
    }
}

} // namespace selfprod
