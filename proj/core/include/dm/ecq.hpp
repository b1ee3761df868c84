#pragma once

// Elliptic curves over Q and over prime fields: invariants, group law,
// torsion, reduction, point counting, naive and canonical heights, and the
// explicit height-difference bound.

#include "dm/numth.hpp"
#include "dm/poly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dm {

class EllCurve;

struct EPoint {
    bool infinity = true;
    Rat x, y;

    EPoint() = default;
    EPoint(Rat px, Rat py) : infinity(false), x(std::move(px)), y(std::move(py)) {}
    static EPoint O() { return EPoint(); }

    bool operator==(const EPoint& o) const {
        if (infinity != o.infinity) return false;
        if (infinity) return true;
        return x == o.x && y == o.y;
    }
    std::string str() const;
};

// Integral-or-rational Weierstrass model with cached b/c invariants.
// Construction rejects singular models and cross-checks 1728*disc = c4^3 - c6^2.
class EllCurve {
public:
    EllCurve(Rat a1, Rat a2, Rat a3, Rat a4, Rat a6);
    static EllCurve from_a246(const Rat& a2, const Rat& a4, const Rat& a6) {
        return EllCurve(Rat(0), a2, Rat(0), a4, a6);
    }

    const Rat& a1() const { return a1_; }
    const Rat& a2() const { return a2_; }
    const Rat& a3() const { return a3_; }
    const Rat& a4() const { return a4_; }
    const Rat& a6() const { return a6_; }
    const Rat& b2() const { return b2_; }
    const Rat& b4() const { return b4_; }
    const Rat& b6() const { return b6_; }
    const Rat& b8() const { return b8_; }
    const Rat& c4() const { return c4_; }
    const Rat& c6() const { return c6_; }
    const Rat& disc() const { return disc_; }
    Rat j_invariant() const;

    bool is_integral() const;
    bool on_curve(const EPoint& P) const;

    EPoint neg(const EPoint& P) const;
    EPoint add(const EPoint& P, const EPoint& Q) const;
    EPoint dbl(const EPoint& P) const;
    EPoint mul(const Int& n, const EPoint& P) const;

    // x(2P) as a rational map (independent of y); P must not be 2-torsion.
    Rat x_double(const Rat& x) const;

    bool operator==(const EllCurve& o) const = default;
    std::string str() const;

private:
    Rat a1_, a2_, a3_, a4_, a6_;
    Rat b2_, b4_, b6_, b8_, c4_, c6_, disc_;
};

// --- reduction and counting ---

enum class ReductionType { good, mult_split, mult_nonsplit, additive };
std::string reduction_type_name(ReductionType t);

// Classify reduction of an integral model at p. Split/non-split at odd
// multiplicative p via the quadratic character of -c6 (requires p | disc,
// p coprime to c4 and c6, asserted). The p = 2 multiplicative split test is
// not provided here.
ReductionType reduction_type(const EllCurve& E, const Int& p);

// Independent split test at odd multiplicative p: reduce, locate the node,
// and test whether the tangent slopes are rational over F_p.
bool split_by_node_slopes(const EllCurve& E, const Int& p);

// y^2 = x^3 + A2 x^2 + A4 x + A6 over F_p (p odd prime of good reduction).
struct CurveModP {
    Int p;
    Int A2, A4, A6;
    CurveModP(const EllCurve& E, const Int& p_);
    Int count_points() const;  // includes the point at infinity
};

// #points of y^2 = f(x) over F_p for the smooth model of a degree-8 polynomial
// (two branches at infinity when the leading coefficient is a square mod p).
Int count_points_hyperelliptic(const IntPoly& f, const Int& p);

// --- torsion ---

struct TorsionGroup {
    std::vector<EPoint> points;  // includes O
    std::string structure;       // "trivial", "Z/nZ", "Z/2Z x Z/2mZ"
    Int order() const { return Int(static_cast<long>(points.size())); }
};

// Full torsion subgroup: order bound from reduction mod >= 3 good primes,
// exhibition through division-polynomial rational roots.
TorsionGroup torsion_subgroup(const EllCurve& E);

// Division polynomial psi_n for a1 = a3 = 0 models, as element u(x) + v(x) y
// of Q(x)[y]/(y^2 - (x^3 + a2 x^2 + a4 x + a6)).
FnFieldElem division_poly(const EllCurve& E, const FnField* fld, int n);

// x(nP) as a pair (numerator, denominator) of polynomials in x.
std::pair<PolyQ, PolyQ> x_multiple_map(const EllCurve& E, int n);

// --- heights ---

double naive_height(const EPoint& P);

// hhat_x(P) = lim 4^{-n} h(x(2^n P)); vanishes exactly on torsion.
// n is chosen so that silverman_bound(E) / 4^n < tol.
double canonical_height(const EllCurve& E, const EPoint& P, double tol = 1e-3);

// Explicit constant c with |hhat_x(P) - h_x(P)| <= c for all P, from the
// classical bound in terms of h(j) and h(disc), rescaled to the x-convention.
double silverman_bound(const EllCurve& E);

bool is_torsion(const EllCurve& E, const EPoint& P);

}  // namespace dm
