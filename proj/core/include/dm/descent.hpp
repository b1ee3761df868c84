#pragma once

// Complete 2-descent for E_a when a^2-2 and a^2+2 are both prime: the 16x16
// pair table over Q(S,2) x Q(S,2) with S = {2, a^2-2, a^2+2, infinity}, a
// witness or obstruction in every cell, and the resulting rank certificate.

#include "dm/ecq.hpp"
#include "dm/family.hpp"
#include "dm/numth.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dm {

// Signed squarefree product over the basis {-1, 2, a^2-2, a^2+2}:
// bit 0: sign, bit 1: factor 2, bit 2: factor a^2-2, bit 3: factor a^2+2.
struct SClass {
    std::uint8_t bits = 0;

    static SClass one() { return {0}; }
    bool negative() const { return bits & 1; }
    bool has_two() const { return bits & 2; }
    bool has_p1() const { return bits & 4; }
    bool has_p2() const { return bits & 8; }
    SClass operator*(const SClass& o) const { return {static_cast<std::uint8_t>(bits ^ o.bits)}; }
    bool operator==(const SClass& o) const { return bits == o.bits; }

    Int value(const Int& a) const;  // the canonical squarefree integer
    std::string label() const;      // e.g. "-2*p1"
};

// Reduce a nonzero rational to its class; throws HypothesisError if the
// squarefree part leaves the group generated by the basis.
SClass sclass_of(const Rat& x, const Int& a);

struct TorsorSystem {
    Int a;
    SClass b1, b2;
    // instantiated equations:
    //   b1 z1^2 - b2 z2^2    = -a^2 + 2
    //   b1 z1^2 - b1b2 z3^2  = -a^2 - 2
    Int b1v, b2v, b12v, rhs1, rhs2;
    TorsorSystem(const Int& a_, SClass b1_, SClass b2_);
    bool verify(const Rat& z1, const Rat& z2, const Rat& z3) const;
};

enum class ObstructionPlace { real, two_parity, p1_adic, p2_adic, prime_distinct };
std::string place_name(ObstructionPlace p);

struct Witness {
    EPoint point;
    Rat z1, z2, z3;
};

struct Obstruction {
    ObstructionPlace place;
    std::string rule;  // which case of the analysis fired
};

struct ClosureDerived {
    std::uint8_t from_b1 = 0, from_b2 = 0;  // the obstructed product cell
    std::uint8_t via_b1 = 0, via_b2 = 0;    // the witnessed cell multiplied by
    ObstructionPlace root_place = ObstructionPlace::real;
};

using CellStatus = std::variant<std::monostate, Witness, Obstruction, ClosureDerived>;

bool cell_is_image(const CellStatus& s);
bool cell_resolved(const CellStatus& s);

struct DescentCertificate {
    Int a;
    bool a_sq_minus_2_prime = false, a_sq_plus_2_prime = false;
    bool a_div_3 = false, a_odd = false;
    Primality p1_status = Primality::composite, p2_status = Primality::composite;
    std::array<CellStatus, 256> cells;  // index = b1.bits * 16 + b2.bits
    int survivors = 0;
    int rank = -1;

    const CellStatus& cell(SClass b1, SClass b2) const { return cells[b1.bits * 16 + b2.bits]; }
    std::string render_table() const;  // 16x16 text grid
};

// The image of P under E_a(Q)/2E_a(Q) -> Q(S,2) x Q(S,2).
std::pair<SClass, SClass> image_of_point(const EPoint& P, const Int& a);

struct DescentOptions {
    Int witness_bound = 0;  // 0 = default 4a^2
    std::uint64_t seed = 0x5eedULL;
};

DescentCertificate run_descent(const Int& a, const DescentOptions& opt = {});

// real solubility of the torsor system by sign analysis (exact)
bool real_soluble(const TorsorSystem& T);

enum class LocalVerdict { soluble, insoluble, unknown };
std::string verdict_name(LocalVerdict v);

// Brute-force Q_p solubility of the homogenized system by primitive-solution
// lifting with a smooth-point (multivariate Hensel) early exit.
LocalVerdict local_solubility_qp(const TorsorSystem& T, const Int& p, int maxLift,
                                 std::size_t cap = 2'000'000);

}  // namespace dm
