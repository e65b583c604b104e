#pragma once

#include <optional>
#include <vector>

#include "selfprod/bitset.hpp"
#include "selfprod/sieve.hpp"

namespace selfprod {

/// The four studied choices of f in the map k -> k*f(k).
enum class FKind : u8 { Tau, Omega, BigOmega, Phi };

ArithKind to_arith(FKind kind);
const char* fkind_name(FKind kind);

struct EnumerateOptions {
    unsigned threads = 0;              // 0 = all hardware threads
    u64 max_bits = u64(1) << 34;       // membership cap: x+1 bits (2 GiB of bits)
    u64 segment_width = u64(1) << 22;  // k-range chunk per sieve pass
};

/// A_f intersected with [1, x]: bit n is set iff n = k*f(k) for some k.
struct RepresentableSet {
    u64 x = 0;
    FKind kind = FKind::Tau;
    BitArray bits;  // indexed by n, valid for 1 <= n <= x
    u64 count = 0;

    bool contains(u64 n) const { return n >= 1 && n <= x && bits.test(n); }
};

/// Exact membership of A_f in [1, x].
///
/// k ranges over a provably sufficient interval per kind:
///   tau:      k = 1, plus 2 <= k <= x/2        (tau(k) >= 2 for k >= 2)
///   omega:    2 <= k <= x                      (omega(k) >= 1; k = 1 gives
///   bigomega:                                   the non-value 0 and is skipped)
///   phi:      1 <= k <= (x*sqrt(2))^(2/3) + 1  (phi(k) >= sqrt(k/2), so
///                                               k*phi(k) >= k^1.5/sqrt(2))
/// Throws resource_error if x + 1 exceeds opt.max_bits.
RepresentableSet enumerate_representable(FKind kind, u64 x,
                                         const EnumerateOptions& opt = {});

/// N_f(x): the cardinality of the set above without keeping it.
u64 count_representable(FKind kind, u64 x, const EnumerateOptions& opt = {});

/// Upper bound on k for the phi enumeration (floor((x*sqrt 2)^(2/3)) + 1).
u64 phi_iteration_bound(u64 x);

/// A witnessed pair k1 < k2 with k1*f(k1) = k2*f(k2) = n.
struct CollisionRecord {
    u64 n, k1, k2;
    friend bool operator==(const CollisionRecord&, const CollisionRecord&) = default;
};

/// All collision pairs with common value <= x, sorted by (n, k1); every
/// unordered pair appears exactly once.  Runs the same detector for phi,
/// where injectivity makes the result empty.
std::vector<CollisionRecord> find_collisions(FKind kind, u64 x,
                                             const EnumerateOptions& opt = {});

/// Inverts n = k*phi(k) if possible.
///
/// If n = k*phi(k) and p is the largest prime of n, then p is the largest
/// prime of k and, writing p^a || k, p appears in n with the odd exponent
/// 2a - 1 (no p_i - 1 can contribute a factor p since p_i <= p).  So:
/// peel p = P+(n') with exponent e; if e is even there is no preimage;
/// otherwise a = (e+1)/2, require p^e * (p-1) | n', multiply the
/// accumulator by p^a and continue on the quotient, whose primes are all
/// smaller than p.  Reaching 1 yields the unique k.
///
/// The PrimeTable accelerates small-prime splitting; cofactors beyond it
/// are handled by Miller-Rabin and Brent's rho, so any table is adequate
/// for 64-bit n.
std::optional<u64> invert_phi_selfproduct(u64 n, const PrimeTable& primes);

/// Census of the set K = {k : k*omega(k) <= x and
/// |omega(k) - loglog x| <= psi * sqrt(loglog x)} with psi = 10*sqrt(logloglog x).
struct KSetStats {
    u64 x = 0;
    double psi = 0;
    u64 k_count = 0;   // k satisfying both conditions
    u64 violators = 0; // k satisfying the product bound but not the omega window
};

/// Exact scan over all k >= 2 with k*omega(k) <= x.  Requires x >= 16 so
/// that the iterated logarithms are positive.
KSetStats k_set_stats(u64 x, const EnumerateOptions& opt = {});

} // namespace selfprod
