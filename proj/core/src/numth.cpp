#include "dm/numth.hpp"

#include <array>
#include <cmath>

namespace dm {

Int rat_height(const Rat& q) {
    Int n = abs(q.get_num());
    Int d = q.get_den();
    return n > d ? n : d;
}

double log_int(const Int& n) {
    if (n <= 0) throw InternalError("log_int: nonpositive argument");
    signed long exp2;
    double m = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(m) + static_cast<double>(exp2) * std::log(2.0);
}

double log_rat_height(const Rat& q) {
    if (q == 0) return 0.0;
    return log_int(rat_height(q));
}

namespace {

bool miller_rabin_witness(const Int& n, const Int& a) {
    // returns true if a witnesses compositeness of odd n > 2
    Int nm1 = n - 1;
    unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
    Int d = nm1 >> s;
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return false;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == nm1) return false;
        if (x == 1) return true;
    }
    return true;
}

}  // namespace

Primality classify_prime(const Int& n) {
    if (n < 2) return Primality::composite;
    static const std::array<unsigned long, 15> small = {2,  3,  5,  7,  11, 13, 17, 19,
                                                        23, 29, 31, 37, 41, 43, 47};
    for (unsigned long p : small) {
        if (n == p) return Primality::prime;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return Primality::composite;
    }
    Int limit("18446744073709551616");  // 2^64
    if (n < limit) {
        // deterministic witness set for n < 2^64
        static const std::array<unsigned long, 12> ws = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
        for (unsigned long w : ws) {
            if (miller_rabin_witness(n, Int(w))) return Primality::composite;
        }
        return Primality::prime;
    }
    // above 2^64: 40 deterministic-seeded random rounds plus GMP's BPSW-flavoured test
    Rng rng(0xda7a5eedULL ^ mpz_fdiv_ui(n.get_mpz_t(), 0x7fffffff));
    for (int i = 0; i < 40; ++i) {
        Int a = 2 + rng.next_int(n - 4);
        if (miller_rabin_witness(n, a)) return Primality::composite;
    }
    if (mpz_probab_prime_p(n.get_mpz_t(), 10) == 0) return Primality::composite;
    return Primality::probable_prime;
}

bool is_prime(const Int& n) { return classify_prime(n) != Primality::composite; }

int legendre(const Int& n, const Int& p) {
    if (p == 2 || !is_prime(p)) throw HypothesisError("legendre: p must be an odd prime");
    return mpz_legendre(n.get_mpz_t(), p.get_mpz_t());
}

unsigned long valuation(const Int& n, const Int& p) {
    if (n == 0) throw InternalError("valuation: v(0) is infinite");
    if (p < 2) throw InternalError("valuation: p must be >= 2");
    Int rem;
    return mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

Int strip_factor(const Int& n, const Int& p) {
    if (n == 0) return 0;
    Int rem;
    mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    return rem;
}

bool is_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

bool is_square(const Rat& q) {
    return is_square(q.get_num()) && is_square(q.get_den());
}

Int sqrt_exact(const Int& n) {
    if (!is_square(n)) throw InternalError("sqrt_exact: not a perfect square");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

Rat sqrt_exact(const Rat& q) {
    return make_rat(sqrt_exact(q.get_num()), sqrt_exact(q.get_den()));
}

ModInt::ModInt(const Int& value, const Int& modulus) : modulus_(modulus) {
    if (modulus < 2) throw InternalError("ModInt: modulus must be >= 2");
    mpz_mod(value_.get_mpz_t(), value.get_mpz_t(), modulus_.get_mpz_t());
}

void ModInt::check_same(const ModInt& o) const {
    if (modulus_ != o.modulus_) throw InternalError("ModInt: mixed moduli");
}

ModInt ModInt::operator+(const ModInt& o) const {
    check_same(o);
    return ModInt(value_ + o.value_, modulus_);
}

ModInt ModInt::operator-(const ModInt& o) const {
    check_same(o);
    return ModInt(value_ - o.value_, modulus_);
}

ModInt ModInt::operator*(const ModInt& o) const {
    check_same(o);
    return ModInt(value_ * o.value_, modulus_);
}

ModInt ModInt::inverse() const {
    Int inv;
    if (!mpz_invert(inv.get_mpz_t(), value_.get_mpz_t(), modulus_.get_mpz_t()))
        throw InternalError("ModInt: value not invertible");
    return ModInt(inv, modulus_);
}

ModInt ModInt::pow(const Int& e) const {
    Int r;
    mpz_powm(r.get_mpz_t(), value_.get_mpz_t(), e.get_mpz_t(), modulus_.get_mpz_t());
    return ModInt(r, modulus_);
}

std::optional<Rat> rational_reconstruct(const ModInt& r, const Int& numBound,
                                        const Int& denBound) {
    if (numBound < 1 || denBound < 1) return std::nullopt;
    const Int& m = r.modulus();
    // extended Euclid on (m, r); stop at the first remainder <= numBound
    Int r0 = m, r1 = r.value();
    Int t0 = 0, t1 = 1;
    while (r1 > numBound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    // candidate p/q = r1/t1
    if (t1 == 0) return std::nullopt;
    Int p = r1, q = t1;
    if (q < 0) { p = -p; q = -q; }
    if (q > denBound) return std::nullopt;
    Int g;
    mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), m.get_mpz_t());
    if (g != 1) return std::nullopt;
    // verify p = q*r mod m
    Int chk = (q * r.value() - p) % m;
    if (chk != 0) return std::nullopt;
    Rat out = make_rat(p, q);
    return out;
}

std::uint64_t Rng::next() {
    // xorshift64*
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
    if (bound == 0) return 0;
    return next() % bound;
}

Int Rng::next_int(const Int& bound) {
    if (bound <= 0) return 0;
    size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    Int v = 0;
    for (size_t i = 0; i < bits + 64; i += 64) {
        std::uint64_t w = next();
        v <<= 64;
        v += Int(static_cast<unsigned long>(w >> 32)) << 32;
        v += Int(static_cast<unsigned long>(w & 0xffffffffULL));
    }
    return v % bound;
}

Int next_prime(const Int& n) {
    Int p = n;
    if (p < 2) return 2;
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    return p;
}

}  // namespace dm
