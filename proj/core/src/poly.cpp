#include "dm/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dm {

PolyQ::PolyQ(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void PolyQ::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyQ PolyQ::constant(const Rat& c) { return PolyQ(std::vector<Rat>{c}); }

PolyQ PolyQ::monomial(const Rat& c, int deg) {
    std::vector<Rat> v(deg + 1, Rat(0));
    v[deg] = c;
    return PolyQ(std::move(v));
}

PolyQ PolyQ::x() { return monomial(Rat(1), 1); }

const Rat& PolyQ::coeff(int i) const {
    static const Rat zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[i];
}

const Rat& PolyQ::leading() const {
    if (c_.empty()) throw InternalError("leading coefficient of zero polynomial");
    return c_.back();
}

PolyQ PolyQ::operator+(const PolyQ& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return PolyQ(std::move(r));
}

PolyQ PolyQ::operator-(const PolyQ& o) const { return *this + (-o); }

PolyQ PolyQ::operator-() const {
    std::vector<Rat> r(c_);
    for (auto& v : r) v = -v;
    return PolyQ(std::move(r));
}

PolyQ PolyQ::operator*(const PolyQ& o) const {
    if (is_zero() || o.is_zero()) return PolyQ();
    std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return PolyQ(std::move(r));
}

PolyQ PolyQ::operator*(const Rat& s) const {
    std::vector<Rat> r(c_);
    for (auto& v : r) v *= s;
    return PolyQ(std::move(r));
}

std::pair<PolyQ, PolyQ> PolyQ::divrem(const PolyQ& d) const {
    if (d.is_zero()) throw InternalError("polynomial division by zero");
    PolyQ q, r = *this;
    if (r.degree() < d.degree()) return {q, r};
    std::vector<Rat> qc(r.degree() - d.degree() + 1, Rat(0));
    Rat lead_inv = Rat(1) / d.leading();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int k = r.degree() - d.degree();
        Rat f = r.leading() * lead_inv;
        qc[k] = f;
        r = r - d * PolyQ::monomial(f, k);
    }
    return {PolyQ(std::move(qc)), r};
}

PolyQ PolyQ::derivative() const {
    if (c_.size() <= 1) return PolyQ();
    std::vector<Rat> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return PolyQ(std::move(r));
}

Rat PolyQ::eval(const Rat& v) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + *it;
    return acc;
}

PolyQ PolyQ::monic() const {
    if (is_zero()) return *this;
    return *this * (Rat(1) / leading());
}

PolyQ PolyQ::scale_arg(const Rat& s) const {
    std::vector<Rat> r(c_);
    Rat pw(1);
    for (size_t i = 0; i < r.size(); ++i) {
        r[i] *= pw;
        pw *= s;
    }
    return PolyQ(std::move(r));
}

PolyQ PolyQ::reverse(int n) const {
    if (degree() > n) throw InternalError("reverse: degree exceeds target");
    std::vector<Rat> r(n + 1, Rat(0));
    for (int i = 0; i <= degree(); ++i) r[n - i] = coeff(i);
    return PolyQ(std::move(r));
}

std::string PolyQ::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rat& c = coeff(i);
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Rat a = abs(c);
        if (a != 1 || i == 0) os << a.get_str();
        if (i >= 1) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

PolyQ gcd(const PolyQ& a, const PolyQ& b) {
    PolyQ r0 = a, r1 = b;
    while (!r1.is_zero()) {
        PolyQ r2 = r0.divrem(r1).second;
        r0 = r1;
        r1 = r2;
    }
    return r0.monic();
}

std::pair<PolyQ, PolyQ> bezout_cofactors(const PolyQ& F, const PolyQ& G) {
    // extended Euclid over Q[x]
    PolyQ r0 = F, r1 = G;
    PolyQ u0 = PolyQ::constant(1), u1;
    PolyQ v0, v1 = PolyQ::constant(1);
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divrem(r1);
        PolyQ u2 = u0 - q * u1;
        PolyQ v2 = v0 - q * v1;
        r0 = r1; r1 = r2;
        u0 = u1; u1 = u2;
        v0 = v1; v1 = v2;
    }
    if (r0.degree() != 0)
        throw InternalError("bezout_cofactors: inputs are not coprime");
    Rat inv = Rat(1) / r0.coeff(0);
    return {u0 * inv, v0 * inv};
}

Int IntPoly::eval(const Int& v) const {
    Int acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * v + *it;
    return acc;
}

IntPoly clear_denominators(const PolyQ& p) {
    IntPoly out;
    if (p.is_zero()) return out;
    Int lcm = 1;
    for (const Rat& c : p.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den(c).get_mpz_t());
    out.c.reserve(p.coeffs().size());
    Int content = 0;
    for (const Rat& c : p.coeffs()) {
        Rat scaled = c * Rat(lcm);
        out.c.push_back(scaled.get_num());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out.c.back().get_mpz_t());
    }
    if (content > 1)
        for (auto& v : out.c) v /= content;
    if (out.c.back() < 0)
        for (auto& v : out.c) v = -v;
    return out;
}

PolyQ squarefree_part(const PolyQ& p) {
    if (p.is_zero() || p.degree() == 0) return p;
    PolyQ g = gcd(p, p.derivative());
    return p.divrem(g).first;
}

HomForm::HomForm(PolyQ poly, int d) : p(std::move(poly)), total_degree(d) {
    if (p.degree() > d) throw InternalError("HomForm: degree exceeds declared total degree");
}

Rat HomForm::eval(const Rat& X, const Rat& Z) const {
    Rat acc(0);
    Rat zp(1);
    std::vector<Rat> zpow(total_degree + 1);
    for (int i = 0; i <= total_degree; ++i) { zpow[i] = zp; zp *= Z; }
    Rat xp(1);
    for (int i = 0; i <= total_degree; ++i) {
        if (i <= p.degree() && p.coeff(i) != 0) acc += p.coeff(i) * xp * zpow[total_degree - i];
        xp *= X;
    }
    return acc;
}

Int HomForm::eval_int(const Int& X, const Int& Z) const {
    Rat r = eval(Rat(X), Rat(Z));
    if (den(r) != 1) throw InternalError("HomForm::eval_int: non-integer value");
    return r.get_num();
}

// ---------- roots mod p and rational roots ----------

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }
u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// dense polys mod p (p < 2^62), ascending coefficients
struct Pmod {
    std::vector<u64> c;
    u64 p;
    void trim() { while (!c.empty() && c.back() == 0) c.pop_back(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
};

Pmod pm_mul(const Pmod& a, const Pmod& b) {
    Pmod r{{}, a.p};
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = (r.c[i + j] + u128(a.c[i]) * b.c[j]) % a.p;
    }
    r.trim();
    return r;
}

Pmod pm_rem(Pmod a, const Pmod& b) {
    u64 p = a.p;
    u64 inv = powmod(b.c.back(), p - 2, p);
    while (a.deg() >= b.deg() && !a.c.empty()) {
        u64 f = mulmod(a.c.back(), inv, p);
        int k = a.deg() - b.deg();
        for (size_t i = 0; i < b.c.size(); ++i) {
            u64 t = mulmod(f, b.c[i], p);
            u64& tgt = a.c[i + k];
            tgt = (tgt >= t) ? tgt - t : tgt + p - t;
        }
        a.trim();
    }
    return a;
}

Pmod pm_gcd(Pmod a, Pmod b) {
    while (!b.c.empty()) {
        Pmod r = pm_rem(a, b);
        a = b;
        b = r;
    }
    if (!a.c.empty()) {
        u64 inv = powmod(a.c.back(), a.p - 2, a.p);
        for (auto& v : a.c) v = mulmod(v, inv, a.p);
    }
    return a;
}

Pmod pm_powmod_x(u64 e, const Pmod& mod) {
    // x^e mod (mod, p)
    Pmod base{{0, 1}, mod.p};
    base = pm_rem(base, mod);
    Pmod r{{1}, mod.p};
    while (e) {
        if (e & 1) r = pm_rem(pm_mul(r, base), mod);
        base = pm_rem(pm_mul(base, base), mod);
        e >>= 1;
    }
    return r;
}

Pmod pm_sub(Pmod a, const Pmod& b) {
    if (a.c.size() < b.c.size()) a.c.resize(b.c.size(), 0);
    for (size_t i = 0; i < b.c.size(); ++i)
        a.c[i] = (a.c[i] >= b.c[i]) ? a.c[i] - b.c[i] : a.c[i] + a.p - b.c[i];
    a.trim();
    return a;
}

// roots in F_p of a squarefree-ish poly: split off linear-root part via
// gcd(x^p - x, f), then Cantor-Zassenhaus style random splitting.
void pm_collect_roots(const Pmod& f, Rng& rng, std::vector<u64>& out) {
    if (f.deg() <= 0) return;
    u64 p = f.p;
    if (f.deg() == 1) {
        // c0 + c1 x = 0 -> x = -c0/c1
        u64 r = mulmod(p - (f.c[0] % p), powmod(f.c[1], p - 2, p), p) % p;
        out.push_back(r);
        return;
    }
    // random splitting: gcd((x+t)^((p-1)/2) - 1, f)
    for (int attempt = 0; attempt < 64; ++attempt) {
        u64 t = rng.next_below(p);
        // compute (x+t)^((p-1)/2) mod f
        Pmod base{{t, 1}, p};
        base = pm_rem(base, f);
        Pmod acc{{1}, p};
        u64 e = (p - 1) / 2;
        Pmod b2 = base;
        while (e) {
            if (e & 1) acc = pm_rem(pm_mul(acc, b2), f);
            b2 = pm_rem(pm_mul(b2, b2), f);
            e >>= 1;
        }
        Pmod g = pm_gcd(pm_sub(acc, Pmod{{1}, p}), f);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            Pmod h = pm_gcd(f, g);  // = g (monic)
            // f / g
            Pmod q{{}, p};
            {
                // long division f by g
                Pmod a = f;
                u64 inv = powmod(g.c.back(), p - 2, p);
                q.c.assign(a.deg() - g.deg() + 1, 0);
                while (a.deg() >= g.deg() && !a.c.empty()) {
                    u64 fac = mulmod(a.c.back(), inv, p);
                    int k = a.deg() - g.deg();
                    q.c[k] = fac;
                    for (size_t i = 0; i < g.c.size(); ++i) {
                        u64 tt = mulmod(fac, g.c[i], p);
                        u64& tgt = a.c[i + k];
                        tgt = (tgt >= tt) ? tgt - tt : tgt + p - tt;
                    }
                    a.trim();
                }
                q.trim();
            }
            pm_collect_roots(h, rng, out);
            pm_collect_roots(q, rng, out);
            return;
        }
    }
    throw InternalError("root splitting mod p failed to converge");
}

std::vector<u64> roots_mod_p(const IntPoly& f, u64 p, Rng& rng) {
    Pmod fp{{}, p};
    fp.c.reserve(f.c.size());
    for (const Int& c : f.c) {
        Int r = c % Int(static_cast<unsigned long>(p));
        if (r < 0) r += Int(static_cast<unsigned long>(p));
        fp.c.push_back(r.get_ui());
    }
    fp.trim();
    std::vector<u64> out;
    if (fp.c.empty()) throw InternalError("roots_mod_p: polynomial vanishes mod p");
    if (fp.deg() == 0) return out;
    // keep only the split-linear part: gcd(x^p - x, f)
    Pmod xp = pm_powmod_x(p, fp);
    // x^p - x mod f
    Pmod xx{{0, 1}, p};
    xx = pm_rem(xx, fp);
    Pmod lin = pm_gcd(pm_sub(xp, xx), fp);
    if (lin.deg() <= 0) return out;
    pm_collect_roots(lin, rng, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<Rat> rational_roots(const PolyQ& p, std::uint64_t seed) {
    if (p.is_zero()) throw InternalError("rational_roots: zero polynomial");
    std::vector<Rat> roots;
    if (p.degree() == 0) return roots;

    PolyQ sf = squarefree_part(p);
    IntPoly f = clear_denominators(sf);
    // strip x^k
    int shift = 0;
    while (f.c[0] == 0) {
        f.c.erase(f.c.begin());
        ++shift;
    }
    if (shift > 0) roots.push_back(Rat(0));
    if (f.degree() == 0) return roots;

    // root bounds: |num| <= |lead| + max|c_i|, den <= |lead|
    Int lead = f.c.back();
    Int maxc = 0;
    for (const Int& c : f.c) {
        Int a = abs(c);
        if (a > maxc) maxc = a;
    }
    Int numBound = abs(lead) + maxc;
    Int denBound = abs(lead);
    Int target = 2 * (numBound * denBound) * (numBound * denBound) + 1;

    Rng rng(seed);
    for (int attempt = 0; attempt < 12; ++attempt) {
        u64 p0 = 0;
        {
            Int cand = Int(1) << 28;
            cand += rng.next_int(Int(1) << 27);
            cand = next_prime(cand);
            p0 = cand.get_ui();
        }
        // p0 must keep degree and squarefreeness
        Int leadmod = lead % Int(static_cast<unsigned long>(p0));
        if (leadmod == 0) continue;
        // squarefree mod p0 <=> gcd(f, f') constant mod p0; detect via resultant-free check:
        // run the mod-p gcd directly
        try {
            std::vector<u64> rmod = roots_mod_p(f, p0, rng);
            // check f is squarefree mod p0 by gcd(f, f') deg 0
            {
                Pmod fp{{}, p0}, fq{{}, p0};
                for (const Int& c : f.c) {
                    Int r = c % Int(static_cast<unsigned long>(p0));
                    if (r < 0) r += Int(static_cast<unsigned long>(p0));
                    fp.c.push_back(r.get_ui());
                }
                fp.trim();
                for (size_t i = 1; i < fp.c.size(); ++i)
                    fq.c.push_back(mulmod(fp.c[i], i % p0, p0));
                fq.trim();
                if (fq.c.empty() || pm_gcd(fp, fq).deg() != 0) continue;
            }
            // Hensel-lift each root with Newton iteration to modulus >= target
            Int P(static_cast<unsigned long>(p0));
            std::vector<Rat> found;
            bool ok = true;
            for (u64 r0 : rmod) {
                Int m = P;
                Int r(static_cast<unsigned long>(r0));
                IntPoly fd;  // derivative
                for (size_t i = 1; i < f.c.size(); ++i) fd.c.push_back(f.c[i] * Int(static_cast<long>(i)));
                while (m < target) {
                    Int m2 = m * m;
                    Int fr = f.eval(r) % m2;
                    Int dfr = fd.eval(r) % m2;
                    Int inv;
                    if (!mpz_invert(inv.get_mpz_t(), dfr.get_mpz_t(), m2.get_mpz_t())) { ok = false; break; }
                    r = (r - fr * inv) % m2;
                    if (r < 0) r += m2;
                    m = m2;
                }
                if (!ok) break;
                auto rec = rational_reconstruct(ModInt(r, m), numBound, denBound);
                if (rec) {
                    // exact verification against the original polynomial
                    if (p.eval(*rec) == 0) found.push_back(*rec);
                }
            }
            if (ok) {
                for (const Rat& r : found)
                    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
                std::sort(roots.begin(), roots.end());
                return roots;
            }
        } catch (const InternalError&) {
            continue;  // unlucky prime; try another
        }
    }
    throw InternalError("rational_roots: no suitable prime found");
}

bool identity_check_in_a(const std::function<PolyQ(const Int&)>& lhs,
                         const std::function<PolyQ(const Int&)>& rhs,
                         const std::vector<Int>& aValues) {
    if (aValues.empty()) throw InternalError("identity_check_in_a: no sample points");
    for (const Int& a : aValues) {
        if (!(lhs(a) == rhs(a))) return false;
    }
    return true;
}

// ---------- rational functions ----------

RatFunc::RatFunc(PolyQ num, PolyQ den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw InternalError("RatFunc: zero denominator");
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = PolyQ::constant(1);
        return;
    }
    PolyQ g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.divrem(g).first;
        den_ = den_.divrem(g).first;
    }
    Rat lead = den_.leading();
    if (lead != 1) {
        Rat inv = Rat(1) / lead;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw InternalError("RatFunc: division by zero");
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

bool RatFunc::operator==(const RatFunc& o) const {
    return num_ == o.num_ && den_ == o.den_;
}

Rat RatFunc::eval(const Rat& v) const {
    Rat d = den_.eval(v);
    if (d == 0) throw InternalError("RatFunc::eval: pole");
    return num_.eval(v) / d;
}

// ---------- function field ----------

FnField::FnField(PolyQ rel) : relation(std::move(rel)) {
    if (relation.degree() < 3) throw InternalError("FnField: relation degree must be >= 3");
    if (gcd(relation, relation.derivative()).degree() != 0)
        throw InternalError("FnField: relation must be squarefree");
}

FnFieldElem::FnFieldElem(const FnField* fld, RatFunc u, RatFunc v)
    : fld_(fld), u_(std::move(u)), v_(std::move(v)) {
    if (!fld_) throw InternalError("FnFieldElem: null field");
}

FnFieldElem FnFieldElem::of_x(const FnField* fld) {
    return FnFieldElem(fld, RatFunc::of(PolyQ::x()), RatFunc());
}

FnFieldElem FnFieldElem::of_y(const FnField* fld) {
    return FnFieldElem(fld, RatFunc(), RatFunc::of(PolyQ::constant(1)));
}

FnFieldElem FnFieldElem::of_const(const FnField* fld, const Rat& c) {
    return FnFieldElem(fld, RatFunc::of(PolyQ::constant(c)), RatFunc());
}

FnFieldElem FnFieldElem::of_ratfunc(const FnField* fld, RatFunc u) {
    return FnFieldElem(fld, std::move(u), RatFunc());
}

void FnFieldElem::check_field(const FnFieldElem& o) const {
    if (fld_ != o.fld_) throw InternalError("FnFieldElem: mixed fields");
}

FnFieldElem FnFieldElem::operator+(const FnFieldElem& o) const {
    check_field(o);
    return FnFieldElem(fld_, u_ + o.u_, v_ + o.v_);
}

FnFieldElem FnFieldElem::operator-(const FnFieldElem& o) const {
    check_field(o);
    return FnFieldElem(fld_, u_ - o.u_, v_ - o.v_);
}

FnFieldElem FnFieldElem::operator-() const {
    return FnFieldElem(fld_, RatFunc() - u_, RatFunc() - v_);
}

FnFieldElem FnFieldElem::operator*(const FnFieldElem& o) const {
    check_field(o);
    RatFunc f = RatFunc::of(fld_->relation);
    // (u1 + v1 y)(u2 + v2 y) = u1 u2 + v1 v2 f + (u1 v2 + v1 u2) y
    return FnFieldElem(fld_, u_ * o.u_ + v_ * o.v_ * f, u_ * o.v_ + v_ * o.u_);
}

FnFieldElem FnFieldElem::inverse() const {
    if (is_zero()) throw InternalError("FnFieldElem: inverse of zero");
    RatFunc f = RatFunc::of(fld_->relation);
    // 1/(u + v y) = (u - v y)/(u^2 - v^2 f)
    RatFunc norm = u_ * u_ - v_ * v_ * f;
    if (norm.is_zero()) throw InternalError("FnFieldElem: zero norm (relation not squarefree?)");
    return FnFieldElem(fld_, u_ / norm, (RatFunc() - v_) / norm);
}

FnFieldElem FnFieldElem::operator/(const FnFieldElem& o) const {
    check_field(o);
    return *this * o.inverse();
}

Rat FnFieldElem::eval(const Rat& x0, const Rat& y0) const {
    return u_.eval(x0) + v_.eval(x0) * y0;
}

}  // namespace dm
