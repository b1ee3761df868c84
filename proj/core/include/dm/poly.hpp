#pragma once

// Exact univariate polynomial arithmetic over Q, homogeneous bivariate forms,
// rational root extraction via Hensel lifting, and arithmetic in the function
// field Q(x)[y]/(y^2 - f(x)).

#include "dm/numth.hpp"

#include <functional>
#include <set>
#include <utility>
#include <vector>

namespace dm {

// Coefficients ascending; no trailing zero (the zero polynomial is empty).
class PolyQ {
public:
    PolyQ() = default;
    explicit PolyQ(std::vector<Rat> coeffs);
    static PolyQ constant(const Rat& c);
    static PolyQ monomial(const Rat& c, int deg);
    static PolyQ x();

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const Rat& coeff(int i) const;
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& leading() const;

    PolyQ operator+(const PolyQ& o) const;
    PolyQ operator-(const PolyQ& o) const;
    PolyQ operator-() const;
    PolyQ operator*(const PolyQ& o) const;
    PolyQ operator*(const Rat& s) const;
    bool operator==(const PolyQ& o) const = default;

    std::pair<PolyQ, PolyQ> divrem(const PolyQ& d) const;
    PolyQ derivative() const;
    Rat eval(const Rat& v) const;
    PolyQ monic() const;
    // substitute x -> s*x (used for x -> -x symmetry checks)
    PolyQ scale_arg(const Rat& s) const;
    // reverse coefficients to length n+1 (x^n p(1/x)); n >= degree
    PolyQ reverse(int n) const;

    std::string str(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rat> c_;
};

PolyQ gcd(const PolyQ& a, const PolyQ& b);  // monic gcd

// u*F + v*G = 1 with deg u < deg G, deg v < deg F; requires gcd(F, G) = 1.
std::pair<PolyQ, PolyQ> bezout_cofactors(const PolyQ& F, const PolyQ& G);

// Integer-coefficient view: primitive part and content of den-cleared polynomial.
struct IntPoly {
    std::vector<Int> c;  // ascending, trimmed
    int degree() const { return static_cast<int>(c.size()) - 1; }
    Int eval(const Int& v) const;
};
IntPoly clear_denominators(const PolyQ& p);  // primitive, positive leading

PolyQ squarefree_part(const PolyQ& p);

// A PolyQ read as a homogeneous form in (X, Z) of declared total degree.
struct HomForm {
    PolyQ p;
    int total_degree;

    HomForm(PolyQ poly, int d);
    Rat eval(const Rat& X, const Rat& Z) const;
    Int eval_int(const Int& X, const Int& Z) const;
};

// All rational roots, verified by exact evaluation.  Hensel pathway:
// squarefree primitive integer model, roots mod a random prime, quadratic
// lifting past 2*(numBound*denBound)^2, rational reconstruction, verification.
std::vector<Rat> rational_roots(const PolyQ& p, std::uint64_t seed = 0x5eedULL);

// Polynomial identity testing over Q[a][x]: both sides agree at every sampled a.
bool identity_check_in_a(const std::function<PolyQ(const Int&)>& lhs,
                         const std::function<PolyQ(const Int&)>& rhs,
                         const std::vector<Int>& aValues);

// --- rational functions and the hyperelliptic function field ---

class RatFunc {
public:
    RatFunc() : num_(), den_(PolyQ::constant(1)) {}
    RatFunc(PolyQ num, PolyQ den);
    static RatFunc of(const PolyQ& p) { return RatFunc(p, PolyQ::constant(1)); }

    const PolyQ& num() const { return num_; }
    const PolyQ& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    bool operator==(const RatFunc& o) const;

    Rat eval(const Rat& v) const;  // throws on denominator zero

private:
    void normalize();
    PolyQ num_, den_;
};

// y^2 = relation(x); relation squarefree of degree >= 3.
struct FnField {
    PolyQ relation;
    explicit FnField(PolyQ rel);
};

// u(x) + v(x) * y over a fixed FnField.
class FnFieldElem {
public:
    FnFieldElem() : fld_(nullptr) {}
    FnFieldElem(const FnField* fld, RatFunc u, RatFunc v);
    static FnFieldElem of_x(const FnField* fld);
    static FnFieldElem of_y(const FnField* fld);
    static FnFieldElem of_const(const FnField* fld, const Rat& c);
    static FnFieldElem of_ratfunc(const FnField* fld, RatFunc u);

    const RatFunc& u() const { return u_; }
    const RatFunc& v() const { return v_; }
    const FnField* field() const { return fld_; }
    bool is_zero() const { return u_.is_zero() && v_.is_zero(); }

    FnFieldElem operator+(const FnFieldElem& o) const;
    FnFieldElem operator-(const FnFieldElem& o) const;
    FnFieldElem operator-() const;
    FnFieldElem operator*(const FnFieldElem& o) const;
    FnFieldElem operator/(const FnFieldElem& o) const;
    FnFieldElem inverse() const;

    // evaluate at an affine point (x0, y0) with y0^2 = relation(x0)
    Rat eval(const Rat& x0, const Rat& y0) const;

private:
    void check_field(const FnFieldElem& o) const;
    const FnField* fld_;
    RatFunc u_, v_;
};

}  // namespace dm
