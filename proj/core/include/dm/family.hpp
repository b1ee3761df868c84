#pragma once

// The curve family: for a parameter a, the genus-3 hyperelliptic curve C_a,
// the quartic genus-1 quotient, the elliptic curves E_a and E', the two maps
// phi1, phi2 : C_a -> E_a (affine and projective forms), the involution tau,
// and the evidence checks (construction identities, degrees, pairing matrix).

#include "dm/ecq.hpp"
#include "dm/numth.hpp"
#include "dm/poly.hpp"

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace dm {

// Projective point (X : Y : Z) on C_a with weights (1, 4, 1); gcd-normalized
// integer coordinates, leading nonzero coordinate positive.
struct CPoint {
    Int X, Y, Z;
    CPoint(Int x, Int y, Int z);
    static CPoint affine(const Rat& x, const Rat& y);
    bool at_infinity() const { return Z == 0; }
    Rat affine_x() const;  // throws at infinity
    Rat affine_y() const;
    bool operator==(const CPoint& o) const { return X == o.X && Y == o.Y && Z == o.Z; }
    bool operator<(const CPoint& o) const;
    std::string str() const;
};

// Degree-6 forms in (x, z) plus a y-linear part: T(x, y, z) = P(x, z) + Q(x, z) * y
// where P has total degree 6 and Q total degree 2 (y carries weight 4).
struct MapCoord {
    HomForm pure;    // P, degree 6
    HomForm ylin;    // Q, degree 2
    Int eval(const Int& x, const Int& y, const Int& z) const;
};

struct ProjectiveMap {
    MapCoord X, Y, Z;
};

class FamilyBundle;

enum class WhichMap { phi1 = 1, phi2 = 2 };

struct MapPair {
    ProjectiveMap phi1, phi2;
    // affine x-coordinate as (A(x) + B*y) / (x^2+1)^2 with B constant
    PolyQ x_num_pure_1, x_num_pure_2;  // A_1, A_2
    Rat y_coeff;                       // B = -2 for both maps
};

class FamilyBundle {
public:
    explicit FamilyBundle(const Int& a);

    const Int& a() const { return a_; }
    const PolyQ& f() const { return f_; }              // C_a: y^2 = f(x)
    const PolyQ& quartic() const { return quartic_; }  // genus-1 quotient: y^2 = x^4 - a^2 x^2 + 1
    const EllCurve& Ea() const { return Ea_; }
    const EllCurve& Eprime() const { return Eprime_; }
    const MapPair& maps() const { return maps_; }
    const FnField& function_field() const { return *fld_; }
    bool degenerate_flag() const { return a_ == 1; }

    bool on_curve(const CPoint& P) const;
    // z(x), w(x) as rational maps of the parameterization
    RatFunc z_map() const;
    RatFunc w_map() const;

    EPoint apply_map(WhichMap which, const CPoint& P) const;
    CPoint tau(const CPoint& P) const;  // [x:y:z] -> [z:y:-x]

    // x and y coordinates of phi_i as function-field elements
    FnFieldElem map_x(WhichMap which) const;
    FnFieldElem map_y(WhichMap which) const;

    // coordinates of phi1 + s*phi2 (s = +1/-1) via the chord formula in the
    // function field; the degenerate chord locus is x^4 - 6x^2 + 1 = 0 and has
    // no rational points
    std::pair<FnFieldElem, FnFieldElem> composite_map(int sign) const;
    PolyQ chord_degeneracy_numerator() const;  // numerator of x(phi1) - x(phi2)

    std::vector<CPoint> universal_points() const;

private:
    Int a_;
    PolyQ f_, quartic_;
    EllCurve Ea_, Eprime_;
    MapPair maps_;
    std::shared_ptr<FnField> fld_;
};

// observed max fiber cardinality of a map over >= 3 good primes (the degree
// for generic targets); 0 with the degenerate flag for constant maps.
struct DegreeEstimate {
    int degree = 0;
    bool degenerate = false;
    std::vector<Int> primes_used;
};

enum class MapChoice { phi1, phi2, sum };

DegreeEstimate estimate_degree(const FamilyBundle& B, MapChoice which,
                               const std::vector<Int>& primes);

// same machinery with an arbitrary pointwise map mod p: the callable maps a
// projective point of C_a(F_p) to a projective image triple on E_a (or
// nullopt when undefined); used for degeneracy-path tests
using PointwiseModPMap =
    std::function<std::optional<std::array<Int, 3>>(const std::array<Int, 3>&, const Int&)>;
DegreeEstimate estimate_degree_fn(const FamilyBundle& B, const PointwiseModPMap& fn,
                                  const std::vector<Int>& primes);

struct CasselsMatrix {
    std::array<std::array<Int, 2>, 2> m;
    Int det;
    bool independent;
};

CasselsMatrix cassels_matrix(int d1, int d2, int dsum);

struct IdentityReport {
    std::vector<std::pair<std::string, bool>> checks;
    bool all_pass() const;
    std::string first_failure() const;
};

IdentityReport verify_construction_identities(const Int& a, std::uint64_t seed = 0x1dULL);

// f(x) of the family as a polynomial with Int coefficients
PolyQ family_poly(const Int& a);
// the four homogeneous bound forms for the height sandwich, at parameter a:
// F1, G1, F2, G2 of total degree 4
std::array<HomForm, 4> sandwich_forms(const Int& a);
// the explicit Bezout cofactor forms (f1, g1, f2, g2, h1, i1, h2, i2); valid for a >= 2
std::array<HomForm, 8> sandwich_cofactors(const Int& a);

// random rational points on C_a for property tests: samples x of height <= hmax
// and keeps rational-square f(x) values, always including the universal points
std::vector<CPoint> sample_points(const FamilyBundle& B, int count, std::uint64_t seed);

}  // namespace dm
