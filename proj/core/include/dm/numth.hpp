#pragma once

// Exact integer, rational and modular arithmetic primitives.
// Int/Rat are GMP values; everything here is immutable and safe to share.

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace dm {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy shared by the whole pipeline. CLI maps these to exit codes.
struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnresolvedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw InternalError("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline const Int& num(const Rat& q) { return q.get_num(); }
inline const Int& den(const Rat& q) { return q.get_den(); }

// max(|num|, |den|) of q in lowest terms: the multiplicative height of a rational.
Int rat_height(const Rat& q);

// Natural log of a positive Int, accurate enough for height bookkeeping.
double log_int(const Int& n);
double log_rat_height(const Rat& q);

enum class Primality { composite, prime, probable_prime };

// Deterministic Miller-Rabin witness set below 2^64; 40 randomized rounds plus
// GMP's BPSW-style test above, reported as probable_prime.
Primality classify_prime(const Int& n);
bool is_prime(const Int& n);

// Quadratic residue symbol (n/p) for odd prime p.
int legendre(const Int& n, const Int& p);

// Largest k with p^k | n.  n = 0 is an error (infinite valuation).
unsigned long valuation(const Int& n, const Int& p);

// n with all factors of p removed.
Int strip_factor(const Int& n, const Int& p);

bool is_square(const Int& n);
bool is_square(const Rat& q);
Int sqrt_exact(const Int& n);  // throws unless n is a perfect square
Rat sqrt_exact(const Rat& q);

// Value in [0, m) with fixed modulus m >= 2.  Moduli need not be prime.
class ModInt {
public:
    ModInt(const Int& value, const Int& modulus);

    const Int& value() const { return value_; }
    const Int& modulus() const { return modulus_; }

    ModInt operator+(const ModInt& o) const;
    ModInt operator-(const ModInt& o) const;
    ModInt operator*(const ModInt& o) const;
    ModInt inverse() const;  // throws if gcd(value, m) != 1
    ModInt pow(const Int& e) const;

private:
    void check_same(const ModInt& o) const;
    Int value_;
    Int modulus_;
};

// The unique p/q with |p| <= numBound, 0 < q <= denBound, gcd(q, m) = 1 and
// p = q*r mod m, if it exists.
std::optional<Rat> rational_reconstruct(const ModInt& r, const Int& numBound,
                                        const Int& denBound);

// Small deterministic xorshift generator so randomized checks are seedable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next();
    std::uint64_t next_below(std::uint64_t bound);  // uniform-ish in [0, bound)
    Int next_int(const Int& bound);                 // in [0, bound)

private:
    std::uint64_t state_;
};

// Next prime >= n (GMP probable-prime scan; deterministic below 2^64).
Int next_prime(const Int& n);

}  // namespace dm
