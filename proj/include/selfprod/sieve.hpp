#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace selfprod {

using u8  = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Floor of sqrt(n), exact for all u64 (no floating-point edge cases).
u64 isqrt(u64 n);

// ---------------------------------------------------------------------
// Prime table
// ---------------------------------------------------------------------

/// Largest supported sieve limit.  A limit of 2^32 needs a 256 MiB sieve
/// buffer (odd numbers, one bit each) plus ~1.6 GiB for the prime list,
/// which is as far as this artifact ever needs to go.
inline constexpr u64 kMaxSieveLimit = u64(1) << 32;

/// All primes up to and including `limit`, strictly ascending.
struct PrimeTable {
    u64 limit = 0;
    std::vector<u64> primes;
};

/// Sieve of Eratosthenes.  Requires 2 <= limit <= kMaxSieveLimit.
PrimeTable sieve_primes(u64 limit);

// ---------------------------------------------------------------------
// Arithmetic-function tables over a segment
// ---------------------------------------------------------------------

enum class ArithKind : u8 {
    Tau = 0,        // number of divisors
    Omega = 1,      // distinct prime factors
    BigOmega = 2,   // prime factors with multiplicity
    Phi = 3,        // Euler totient
    Squarefree = 4, // 1 if squarefree else 0
};

const char* arith_kind_name(ArithKind kind);

/// Exact values of one arithmetic function over the half-open segment
/// [lo, hi).  Storage width follows the value range: omega/bigomega and
/// the squarefree flag fit in 8 bits, tau(k) < 2^32 and phi(k) <= k for
/// all k < 2^64.
class ArithTable {
public:
    ArithTable(ArithKind kind, u64 lo, u64 hi, std::vector<u8> v)
        : kind_(kind), lo_(lo), hi_(hi), values_(std::move(v)) {}
    ArithTable(ArithKind kind, u64 lo, u64 hi, std::vector<u32> v)
        : kind_(kind), lo_(lo), hi_(hi), values_(std::move(v)) {}
    ArithTable(ArithKind kind, u64 lo, u64 hi, std::vector<u64> v)
        : kind_(kind), lo_(lo), hi_(hi), values_(std::move(v)) {}

    ArithKind kind() const { return kind_; }
    u64 lo() const { return lo_; }
    u64 hi() const { return hi_; }
    u64 size() const { return hi_ - lo_; }

    /// Value at k, for lo() <= k < hi().
    u64 at(u64 k) const;

    // Typed views; the requested width must match the kind's storage.
    std::span<const u8> values8() const { return std::get<std::vector<u8>>(values_); }
    std::span<const u32> values32() const { return std::get<std::vector<u32>>(values_); }
    std::span<const u64> values64() const { return std::get<std::vector<u64>>(values_); }

private:
    ArithKind kind_;
    u64 lo_, hi_;
    std::variant<std::vector<u8>, std::vector<u32>, std::vector<u64>> values_;
};

/// Segmented sieve of one arithmetic function over [lo, hi).
///
/// Requires 1 <= lo < hi and primes.limit >= floor(sqrt(hi - 1)).
/// Prime powers p^e with p <= sqrt(hi-1) are divided out of each value;
/// a residual cofactor > 1 is necessarily a single prime (a product of
/// two factors > sqrt(hi-1) would exceed hi-1) and contributes one more
/// distinct prime factor.
ArithTable sieve_table(ArithKind kind, u64 lo, u64 hi, const PrimeTable& primes);

// ---------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------

/// n as a product of p^e with strictly ascending primes; n = 1 gives an
/// empty factor list.
struct Factorization {
    u64 n = 1;
    std::vector<std::pair<u64, u32>> factors;

    u64 value() const;      // product of p^e (== n)
    u64 totient() const;    // phi(n) from the factorization
    u64 largest_prime() const; // 0 for n = 1
};

/// Trial division against the table.  Requires primes.limit >= floor(sqrt(n));
/// a cofactor left after all table primes up to sqrt(n) is prime.
Factorization factorize(u64 n, const PrimeTable& primes);

/// Deterministic Miller-Rabin for 64-bit n.
bool is_prime(u64 n);

/// Full 64-bit factorization without a prime table: trial division by
/// small primes, then Miller-Rabin plus Brent's rho on what remains.
Factorization factorize_u64(u64 n);

// ---------------------------------------------------------------------
// Binary table dump (cache format)
// ---------------------------------------------------------------------
// Little-endian: kind tag (1 byte), lo and hi (8 bytes each), then the
// raw values in the kind's storage width.

void save_table(const ArithTable& table, std::ostream& out);
ArithTable load_table(std::istream& in);

} // namespace selfprod
