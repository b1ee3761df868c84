#include "dm/ecq.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace dm {

std::string EPoint::str() const {
    if (infinity) return "O";
    std::ostringstream os;
    os << "(" << x.get_str() << ", " << y.get_str() << ")";
    return os.str();
}

EllCurve::EllCurve(Rat a1, Rat a2, Rat a3, Rat a4, Rat a6)
    : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)),
      a6_(std::move(a6)) {
    b2_ = a1_ * a1_ + 4 * a2_;
    b4_ = 2 * a4_ + a1_ * a3_;
    b6_ = a3_ * a3_ + 4 * a6_;
    b8_ = a1_ * a1_ * a6_ + 4 * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ - a4_ * a4_;
    c4_ = b2_ * b2_ - 24 * b4_;
    c6_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
    disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
    if (disc_ == 0) throw HypothesisError("EllCurve: singular model (disc = 0)");
    if (1728 * disc_ != c4_ * c4_ * c4_ - c6_ * c6_)
        throw InternalError("EllCurve: invariant cross-check failed");
}

Rat EllCurve::j_invariant() const { return c4_ * c4_ * c4_ / disc_; }

bool EllCurve::is_integral() const {
    return den(a1_) == 1 && den(a2_) == 1 && den(a3_) == 1 && den(a4_) == 1 && den(a6_) == 1;
}

bool EllCurve::on_curve(const EPoint& P) const {
    if (P.infinity) return true;
    const Rat &x = P.x, &y = P.y;
    return y * y + a1_ * x * y + a3_ * y == x * x * x + a2_ * x * x + a4_ * x + a6_;
}

EPoint EllCurve::neg(const EPoint& P) const {
    if (P.infinity) return P;
    return EPoint(P.x, -P.y - a1_ * P.x - a3_);
}

EPoint EllCurve::add(const EPoint& P, const EPoint& Q) const {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    const Rat &x1 = P.x, &y1 = P.y, &x2 = Q.x, &y2 = Q.y;
    Rat lam;
    if (x1 == x2) {
        if (y1 + y2 + a1_ * x2 + a3_ == 0) return EPoint::O();
        lam = (3 * x1 * x1 + 2 * a2_ * x1 + a4_ - a1_ * y1) / (2 * y1 + a1_ * x1 + a3_);
    } else {
        lam = (y2 - y1) / (x2 - x1);
    }
    Rat x3 = lam * lam + a1_ * lam - a2_ - x1 - x2;
    Rat y3 = lam * (x1 - x3) - y1 - a1_ * x3 - a3_;
    return EPoint(x3, y3);
}

EPoint EllCurve::dbl(const EPoint& P) const { return add(P, P); }

EPoint EllCurve::mul(const Int& n, const EPoint& P) const {
    if (n < 0) return mul(-n, neg(P));
    EPoint R = EPoint::O();
    EPoint B = P;
    Int k = n;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) R = add(R, B);
        B = dbl(B);
        k >>= 1;
    }
    return R;
}

Rat EllCurve::x_double(const Rat& x) const {
    // x(2P) = (x^4 - b4 x^2 - 2 b6 x - b8) / (4x^3 + b2 x^2 + 2 b4 x + b6)
    Rat num = x * x * x * x - b4_ * x * x - 2 * b6_ * x - b8_;
    Rat den = 4 * x * x * x + b2_ * x * x + 2 * b4_ * x + b6_;
    if (den == 0) throw InternalError("x_double: 2-torsion x-coordinate");
    return num / den;
}

std::string EllCurve::str() const {
    std::ostringstream os;
    os << "y^2";
    if (a1_ != 0) os << " + " << a1_.get_str() << "*x*y";
    if (a3_ != 0) os << " + " << a3_.get_str() << "*y";
    os << " = x^3";
    auto term = [&os](const Rat& c, const std::string& m) {
        if (c == 0) return;
        Rat a = c > 0 ? c : Rat(-c);
        if (c > 0) os << " + " << (c == 1 && !m.empty() ? "" : a.get_str() + (m.empty() ? "" : "*"));
        else os << " - " << (c == -1 && !m.empty() ? "" : a.get_str() + (m.empty() ? "" : "*"));
        os << m;
    };
    term(a2_, "x^2");
    term(a4_, "x");
    if (a6_ != 0) {
        Rat a = a6_ > 0 ? a6_ : Rat(-a6_);
        os << (a6_ > 0 ? " + " : " - ") << a.get_str();
    }
    return os.str();
}

std::string reduction_type_name(ReductionType t) {
    switch (t) {
        case ReductionType::good: return "good";
        case ReductionType::mult_split: return "mult_split";
        case ReductionType::mult_nonsplit: return "mult_nonsplit";
        case ReductionType::additive: return "additive";
    }
    return "?";
}

ReductionType reduction_type(const EllCurve& E, const Int& p) {
    if (!E.is_integral()) throw HypothesisError("reduction_type: model must be integral");
    if (!is_prime(p)) throw HypothesisError("reduction_type: p must be prime");
    Int D = num(E.disc());
    if (D % p != 0) return ReductionType::good;
    Int C4 = num(E.c4());
    if (C4 % p == 0) return ReductionType::additive;
    if (p == 2)
        throw HypothesisError("reduction_type: split/non-split at p = 2 handled elsewhere");
    Int C6 = num(E.c6());
    if (C6 % p == 0)
        throw InternalError("reduction_type: c6 = 0 mod p at multiplicative prime (non-minimal model?)");
    return legendre(-C6, p) == 1 ? ReductionType::mult_split : ReductionType::mult_nonsplit;
}

bool split_by_node_slopes(const EllCurve& E, const Int& p) {
    // For an odd multiplicative prime, reduce y^2 = x^3 + A2 x^2 + A4 x + A6,
    // find the double root r and simple root s of the cubic; split iff r - s
    // is a square mod p.
    if (p == 2) throw HypothesisError("split_by_node_slopes: p must be odd");
    if (E.a1() != 0 || E.a3() != 0)
        throw HypothesisError("split_by_node_slopes: a1 = a3 = 0 model expected");
    Int A2 = num(E.a2()) % p, A4 = num(E.a4()) % p, A6 = num(E.a6()) % p;
    auto norm = [&p](Int v) { v %= p; if (v < 0) v += p; return v; };
    A2 = norm(A2); A4 = norm(A4); A6 = norm(A6);
    // double root of x^3 + A2 x^2 + A4 x + A6: common root with derivative
    for (Int r = 0; r < p; ++r) {
        Int f = norm(((r + A2) * r + A4) * r + A6);
        Int fp = norm(3 * r * r + 2 * A2 * r + A4);
        if (f == 0 && fp == 0) {
            // third root s: sum of roots = -A2 = 2r + s
            Int s = norm(-A2 - 2 * r);
            Int d = norm(r - s);
            if (d == 0) throw InternalError("split_by_node_slopes: triple root (additive?)");
            return legendre(d, p) == 1;
        }
    }
    throw InternalError("split_by_node_slopes: no node found (not multiplicative?)");
}

CurveModP::CurveModP(const EllCurve& E, const Int& p_) : p(p_) {
    if (!E.is_integral()) throw HypothesisError("CurveModP: model must be integral");
    if (E.a1() != 0 || E.a3() != 0) throw HypothesisError("CurveModP: a1 = a3 = 0 expected");
    if (p < 3) throw HypothesisError("CurveModP: p must be an odd prime");
    Int D = num(E.disc());
    if (D % p == 0) throw HypothesisError("CurveModP: bad reduction");
    auto norm = [this](Int v) { v %= p; if (v < 0) v += p; return v; };
    A2 = norm(num(E.a2()));
    A4 = norm(num(E.a4()));
    A6 = norm(num(E.a6()));
}

Int CurveModP::count_points() const {
    Int count = 1;  // infinity
    for (Int x = 0; x < p; ++x) {
        Int rhs = (((x + A2) * x + A4) * x + A6) % p;
        if (rhs == 0) count += 1;
        else count += 1 + legendre(rhs, p);
    }
    return count;
}

Int count_points_hyperelliptic(const IntPoly& f, const Int& p) {
    if (p < 3) throw HypothesisError("count_points_hyperelliptic: p must be odd");
    Int count = 0;
    for (Int x = 0; x < p; ++x) {
        Int v = f.eval(x) % p;
        if (v < 0) v += p;
        if (v == 0) count += 1;
        else count += 1 + legendre(v, p);
    }
    // points at infinity of the smooth model (even degree): two if the leading
    // coefficient is a nonzero square mod p, none if a non-residue, one if 0 mod p
    Int lc = f.c.back() % p;
    if (lc < 0) lc += p;
    if (lc == 0) count += 1;
    else count += 1 + legendre(lc, p);
    return count;
}

// ---------- division polynomials ----------

namespace {

struct DivPolyCache {
    std::map<int, FnFieldElem> psi;
    const FnField* fld = nullptr;
};

FnFieldElem dp_get(const EllCurve& E, DivPolyCache& cache, int n);

FnFieldElem dp_pow(const FnFieldElem& a, int k) {
    FnFieldElem r = FnFieldElem::of_const(a.field(), Rat(1));
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

FnFieldElem dp_get(const EllCurve& E, DivPolyCache& cache, int n) {
    auto it = cache.psi.find(n);
    if (it != cache.psi.end()) return it->second;
    const FnField* fld = cache.fld;
    FnFieldElem r = FnFieldElem::of_const(fld, Rat(0));
    Rat b2 = E.b2(), b4 = E.b4(), b6 = E.b6(), b8 = E.b8();
    if (n == 0) {
        r = FnFieldElem::of_const(fld, Rat(0));
    } else if (n == 1) {
        r = FnFieldElem::of_const(fld, Rat(1));
    } else if (n == 2) {
        r = FnFieldElem(fld, RatFunc(), RatFunc::of(PolyQ::constant(Rat(2))));
    } else if (n == 3) {
        PolyQ p(std::vector<Rat>{b8, 3 * b6, 3 * b4, b2, Rat(3)});
        r = FnFieldElem(fld, RatFunc::of(p), RatFunc());
    } else if (n == 4) {
        PolyQ p(std::vector<Rat>{b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6,
                                 5 * b4, b2, Rat(2)});
        r = FnFieldElem(fld, RatFunc(), RatFunc::of(p * Rat(2)));
    } else if (n % 2 == 1) {
        int m = n / 2;
        r = dp_get(E, cache, m + 2) * dp_pow(dp_get(E, cache, m), 3) -
            dp_get(E, cache, m - 1) * dp_pow(dp_get(E, cache, m + 1), 3);
    } else {
        int m = n / 2;
        FnFieldElem t = dp_get(E, cache, m + 2) * dp_pow(dp_get(E, cache, m - 1), 2) -
                        dp_get(E, cache, m - 2) * dp_pow(dp_get(E, cache, m + 1), 2);
        FnFieldElem twoy(fld, RatFunc(), RatFunc::of(PolyQ::constant(Rat(2))));
        r = dp_get(E, cache, m) * t / twoy;
    }
    cache.psi.emplace(n, r);
    return r;
}

}  // namespace

FnFieldElem division_poly(const EllCurve& E, const FnField* fld, int n) {
    if (E.a1() != 0 || E.a3() != 0)
        throw HypothesisError("division_poly: a1 = a3 = 0 model expected");
    DivPolyCache cache;
    cache.fld = fld;
    return dp_get(E, cache, n);
}

std::pair<PolyQ, PolyQ> x_multiple_map(const EllCurve& E, int n) {
    if (n < 2) throw InternalError("x_multiple_map: n >= 2 expected");
    PolyQ W(std::vector<Rat>{E.a6(), E.a4(), E.a2(), Rat(1)});
    FnField fld(W);
    DivPolyCache cache;
    cache.fld = &fld;
    FnFieldElem pm = dp_get(E, cache, n - 1) * dp_get(E, cache, n + 1);
    FnFieldElem ps = dp_pow(dp_get(E, cache, n), 2);
    if (!pm.v().is_zero() || !ps.v().is_zero())
        throw InternalError("x_multiple_map: products not y-free");
    if (!(pm.u().den() == PolyQ::constant(1)) || !(ps.u().den() == PolyQ::constant(1)))
        throw InternalError("x_multiple_map: unexpected denominators");
    PolyQ num = PolyQ::x() * ps.u().num() - pm.u().num();
    PolyQ den = ps.u().num();
    return {num, den};
}

// ---------- torsion ----------

bool is_torsion(const EllCurve& E, const EPoint& P) {
    if (P.infinity) return true;
    // Mazur: torsion order <= 12; nP = O for some n <= 12
    EPoint Q = P;
    for (int n = 2; n <= 13; ++n) {
        Q = E.add(Q, P);
        if (Q.infinity) return true;
    }
    return false;
}

TorsionGroup torsion_subgroup(const EllCurve& E) {
    if (!E.is_integral()) throw HypothesisError("torsion_subgroup: integral model expected");
    // order bound: gcd of #E(F_p) over good odd primes
    Int D = num(E.disc());
    Int bound = 0;
    int used = 0;
    for (Int p = 3; used < 4; p = next_prime(p + 1)) {
        if (D % p == 0) continue;
        if (E.a1() != 0 || E.a3() != 0) break;  // counting path needs the short shape
        CurveModP red(E, p);
        Int n = red.count_points();
        mpz_gcd(bound.get_mpz_t(), bound.get_mpz_t(), n.get_mpz_t());
        ++used;
        if (bound == 1) break;
    }
    if (bound == 0) bound = 12;

    std::vector<EPoint> pts;
    pts.push_back(EPoint::O());
    auto push_unique = [&pts](const EPoint& P) {
        if (std::find(pts.begin(), pts.end(), P) == pts.end()) pts.push_back(P);
    };

    // candidate orders: divisors d <= 12 of the bound (Mazur caps at 12)
    PolyQ W(std::vector<Rat>{E.a6(), E.a4(), E.a2(), Rat(1)});
    FnField fld(W);
    for (int d = 2; d <= 12; ++d) {
        if (bound % d != 0) continue;
        PolyQ dpoly;
        if (d == 2) {
            dpoly = W;
        } else {
            FnFieldElem psi = division_poly(E, &fld, d);
            // psi is u(x) or v(x) y with polynomial content
            RatFunc part = psi.v().is_zero() ? psi.u() : psi.v();
            dpoly = part.num();
        }
        for (const Rat& xr : rational_roots(dpoly)) {
            Rat rhs = ((xr + E.a2()) * xr + E.a4()) * xr + E.a6();
            if (rhs == 0) {
                push_unique(EPoint(xr, Rat(0)));
            } else if (is_square(rhs)) {
                Rat y = sqrt_exact(rhs);
                EPoint P(xr, y);
                if (is_torsion(E, P)) {
                    push_unique(P);
                    push_unique(E.neg(P));
                }
            }
        }
    }

    // close under the group law
    bool grew = true;
    while (grew) {
        grew = false;
        size_t n = pts.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) {
                EPoint s = E.add(pts[i], pts[j]);
                if (std::find(pts.begin(), pts.end(), s) == pts.end()) {
                    pts.push_back(s);
                    grew = true;
                }
            }
    }

    TorsionGroup tg;
    tg.points = pts;
    // structure from element orders
    auto order_of = [&E](const EPoint& P) {
        if (P.infinity) return 1;
        EPoint Q = P;
        for (int n = 1; n <= 12; ++n) {
            if (Q.infinity) return n;
            Q = E.add(Q, P);
        }
        return 13;
    };
    int maxord = 1;
    int two_tors = 0;
    for (const auto& P : tg.points) {
        int o = order_of(P);
        maxord = std::max(maxord, o);
        if (o == 2) ++two_tors;
    }
    size_t n = tg.points.size();
    if (n == 1) tg.structure = "trivial";
    else if (static_cast<size_t>(maxord) == n) tg.structure = "Z/" + std::to_string(n) + "Z";
    else tg.structure = "Z/2Z x Z/" + std::to_string(n / 2) + "Z";
    return tg;
}

// ---------- heights ----------

double naive_height(const EPoint& P) {
    if (P.infinity) return 0.0;
    return log_rat_height(P.x);
}

double silverman_bound(const EllCurve& E) {
    Rat j = E.j_invariant();
    double hj = (j == 0) ? 0.0 : log_rat_height(j);
    Int D = abs(num(E.disc()));
    double hD = log_int(D);
    // classical two-sided envelope for |hhat - h/2| in the normalized
    // convention, doubled into hhat_x = 2*hhat
    double lower = hj / 8.0 + hD / 12.0 + 0.973;
    double upper = hj / 12.0 + hD / 12.0 + 1.07;
    return 2.0 * std::max(lower, upper);
}

double canonical_height(const EllCurve& E, const EPoint& P, double tol) {
    if (P.infinity) return 0.0;
    if (tol <= 0 || tol > 0.1) throw HypothesisError("canonical_height: tol out of range");
    if (is_torsion(E, P)) return 0.0;
    double bound = silverman_bound(E);
    int n = 0;
    double err = bound;
    while (err >= tol && n < 24) {
        err /= 4.0;
        ++n;
    }
    Rat x = P.x;
    // track y-freeness: iterate the x-only duplication map; guard 2-torsion hits
    const size_t digit_cap = 1 << 24;  // bits of numerator, blow-up guard
    for (int i = 0; i < n; ++i) {
        x = E.x_double(x);
        if (mpz_sizeinbase(num(x).get_mpz_t(), 2) > digit_cap)
            throw InternalError("canonical_height: coordinate blow-up guard tripped");
    }
    return log_rat_height(x) / std::pow(4.0, n);
}

}  // namespace dm
