#include "dm/descent.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace dm {

Int SClass::value(const Int& a) const {
    Int v = 1;
    if (has_two()) v *= 2;
    if (has_p1()) v *= a * a - 2;
    if (has_p2()) v *= a * a + 2;
    if (negative()) v = -v;
    return v;
}

std::string SClass::label() const {
    std::string s = negative() ? "-" : "";
    std::vector<std::string> parts;
    if (has_two()) parts.push_back("2");
    if (has_p1()) parts.push_back("p1");
    if (has_p2()) parts.push_back("p2");
    if (parts.empty()) return s + "1";
    std::string body;
    for (size_t i = 0; i < parts.size(); ++i) body += (i ? "*" : "") + parts[i];
    return s + body;
}

SClass sclass_of(const Rat& x, const Int& a) {
    if (x == 0) throw InternalError("sclass_of: zero has no square class");
    // squarefree part of num*den over the basis {-1, 2, a^2-2, a^2+2}
    Int v = num(x) * den(x);
    SClass c = SClass::one();
    if (v < 0) {
        c.bits |= 1;
        v = -v;
    }
    if (valuation(v, 2) % 2 == 1) c.bits |= 2;
    v = strip_factor(v, 2);
    Int p1 = a * a - 2, p2 = a * a + 2;
    if (valuation(v, p1) % 2 == 1) c.bits |= 4;
    v = strip_factor(v, p1);
    if (valuation(v, p2) % 2 == 1) c.bits |= 8;
    v = strip_factor(v, p2);
    if (!is_square(v))
        throw HypothesisError("sclass_of: value leaves the S-unit square classes: " + v.get_str());
    return c;
}

TorsorSystem::TorsorSystem(const Int& a_, SClass b1_, SClass b2_) : a(a_), b1(b1_), b2(b2_) {
    b1v = b1.value(a);
    b2v = b2.value(a);
    b12v = b1v * b2v;
    rhs1 = -(a * a) + 2;
    rhs2 = -(a * a) - 2;
}

bool TorsorSystem::verify(const Rat& z1, const Rat& z2, const Rat& z3) const {
    if (z1 == 0 || z2 == 0) return false;
    return Rat(b1v) * z1 * z1 - Rat(b2v) * z2 * z2 == Rat(rhs1) &&
           Rat(b1v) * z1 * z1 - Rat(b12v) * z3 * z3 == Rat(rhs2);
}

std::string place_name(ObstructionPlace p) {
    switch (p) {
        case ObstructionPlace::real: return "R";
        case ObstructionPlace::two_parity: return "Q2(*)";
        case ObstructionPlace::p1_adic: return "Q_{a^2-2}";
        case ObstructionPlace::p2_adic: return "Q_{a^2+2}";
        case ObstructionPlace::prime_distinct: return "distinct-primes";
    }
    return "?";
}

std::string verdict_name(LocalVerdict v) {
    switch (v) {
        case LocalVerdict::soluble: return "soluble";
        case LocalVerdict::insoluble: return "insoluble";
        case LocalVerdict::unknown: return "unknown";
    }
    return "?";
}

bool cell_is_image(const CellStatus& s) { return std::holds_alternative<Witness>(s); }
bool cell_resolved(const CellStatus& s) { return !std::holds_alternative<std::monostate>(s); }

std::pair<SClass, SClass> image_of_point(const EPoint& P, const Int& a) {
    // e1 = 0, e2 = -a^2+2, e3 = -a^2-2
    Rat e1(0), e2(Rat(-(a * a) + 2)), e3(Rat(-(a * a) - 2));
    if (P.infinity) return {SClass::one(), SClass::one()};
    if (P.x == e1) {
        // ((e1-e3)/(e1-e2), e1-e2)
        return {sclass_of((e1 - e3) / (e1 - e2), a), sclass_of(e1 - e2, a)};
    }
    if (P.x == e2) {
        return {sclass_of(e2 - e1, a), sclass_of((e2 - e3) / (e2 - e1), a)};
    }
    return {sclass_of(P.x - e1, a), sclass_of(P.x - e2, a)};
}

bool real_soluble(const TorsorSystem& T) {
    // Eliminating z1 gives -b2 z2^2 + b1b2 z3^2 = 4 together with
    // b1 z1^2 = rhs2 + b1b2 z3^2.  Sign analysis:
    //  - b1 > 0, b2 < 0: equation (2) has positive left side, negative right.
    //  - b1 < 0, b2 > 0: both terms of the eliminated equation are <= 0 < 4.
    // In the two remaining sign patterns explicit real solutions exist.
    bool b1pos = T.b1v > 0, b2pos = T.b2v > 0;
    if (b1pos && !b2pos) return false;
    if (!b1pos && b2pos) return false;
    return true;
}

namespace {

struct RuleHit {
    ObstructionPlace place;
    std::string rule;
};

// The direct case analysis, symbolic in a (valid under the descent hypotheses:
// a odd, a = 0 mod 3, a^2-2 and a^2+2 distinct primes).
std::optional<RuleHit> direct_obstruction(SClass b1, SClass b2) {
    bool b1pos = !b1.negative(), b2pos = !b2.negative();
    // real place, sign analysis of equation (2)
    if (b1pos && !b2pos) return RuleHit{ObstructionPlace::real, "sign(eq2)"};
    // real place, subtraction form
    if (!b1pos && b2pos) return RuleHit{ObstructionPlace::real, "sign(eq1-eq2)"};
    // mod-2 parity cells: (1,2), (2,1), (2,2), (-2,-2)
    auto is = [](SClass c, bool neg, bool two) {
        return c.negative() == neg && c.has_two() == two && !c.has_p1() && !c.has_p2();
    };
    if ((is(b1, false, false) && is(b2, false, true)) ||
        (is(b1, false, true) && is(b2, false, false)) ||
        (is(b1, false, true) && is(b2, false, true)) ||
        (is(b1, true, true) && is(b2, true, true)))
        return RuleHit{ObstructionPlace::two_parity, "parity"};
    // p2 | b2, p2 coprime to b1: no solutions over Q_{a^2+2}
    if (b2.has_p2() && !b1.has_p2()) return RuleHit{ObstructionPlace::p2_adic, "p2|b2"};
    // p1 | b2, p1 coprime to b1: no solutions over Q_{a^2-2}
    if (b2.has_p1() && !b1.has_p1()) return RuleHit{ObstructionPlace::p1_adic, "p1|b2"};
    // distinct-primes cell (+-p1p2, 2): reduction of eq (2) mod a^2-2
    if (b1.has_p1() && b1.has_p2() && !b1.has_two() && !b2.negative() && b2.has_two() &&
        !b2.has_p1() && !b2.has_p2())
        return RuleHit{ObstructionPlace::prime_distinct, "eq2 mod p1"};
    return std::nullopt;
}

}  // namespace

DescentCertificate run_descent(const Int& a, const DescentOptions& opt) {
    DescentCertificate cert;
    cert.a = a;
    if (a < 2) throw HypothesisError("run_descent: a >= 2 required");
    Int p1 = a * a - 2, p2 = a * a + 2;
    cert.p1_status = classify_prime(p1);
    cert.p2_status = classify_prime(p2);
    cert.a_sq_minus_2_prime = cert.p1_status != Primality::composite;
    cert.a_sq_plus_2_prime = cert.p2_status != Primality::composite;
    cert.a_div_3 = (a % 3 == 0);
    cert.a_odd = mpz_odd_p(a.get_mpz_t());
    if (!cert.a_sq_minus_2_prime || !cert.a_sq_plus_2_prime)
        throw HypothesisError("run_descent: a^2-2 and a^2+2 must both be prime (a = " +
                              a.get_str() + ")");
    if (!cert.a_div_3 || !cert.a_odd)
        throw HypothesisError("run_descent: hypotheses force a odd and divisible by 3");

    EllCurve E = EllCurve::from_a246(2 * Rat(a) * Rat(a), Rat(a) * Rat(a) * Rat(a) * Rat(a) - 4,
                                     Rat(0));
    EPoint P0(Rat(-(a * a)), Rat(2 * a));
    if (!E.on_curve(P0)) throw InternalError("run_descent: seed point not on curve");

    // the eight known classes with points: torsion, P0, and P0 + torsion
    std::vector<EPoint> reps;
    std::vector<EPoint> tors = {EPoint::O(), EPoint(Rat(0), Rat(0)),
                                EPoint(Rat(-(a * a) + 2), Rat(0)), EPoint(Rat(-(a * a) - 2), Rat(0))};
    for (const EPoint& T : tors) reps.push_back(T);
    for (const EPoint& T : tors) reps.push_back(E.add(P0, T));

    EPoint twoP0 = E.dbl(P0);
    auto witness_for = [&](const EPoint& P) -> Witness {
        // translate by 2P0 when the coordinates are torsion-special so the
        // z-triple comes from direct square roots
        EPoint Q = P;
        auto [b1, b2] = image_of_point(P, a);
        Int b1v = b1.value(a), b2v = b2.value(a);
        Rat e1(0), e2(Rat(-(a * a) + 2)), e3(Rat(-(a * a) - 2));
        for (int tries = 0; tries < 4; ++tries) {
            if (!Q.infinity && Q.x != e1 && Q.x != e2) {
                Rat s1 = (Q.x - e1) / Rat(b1v);
                Rat s2 = (Q.x - e2) / Rat(b2v);
                Rat s3 = (Q.x - e3) / Rat(b1v * b2v);
                if (is_square(s1) && is_square(s2) && is_square(s3) && s1 != 0 && s2 != 0) {
                    Witness w{Q, sqrt_exact(s1), sqrt_exact(s2), sqrt_exact(s3)};
                    return w;
                }
            }
            Q = E.add(Q, twoP0);
        }
        throw InternalError("run_descent: failed to construct a torsor witness");
    };

    // the class of (-a^2, 2a) gets its classical witness (a, 1, 1); the rest are derived
    for (const EPoint& P : reps) {
        auto [b1, b2] = image_of_point(P, a);
        CellStatus& cell = cert.cells[b1.bits * 16 + b2.bits];
        if (cell_resolved(cell)) continue;
        Witness w = (P == P0) ? Witness{P0, Rat(a), Rat(1), Rat(1)} : witness_for(P);
        TorsorSystem T(a, b1, b2);
        if (!T.verify(w.z1, w.z2, w.z3))
            throw InternalError("run_descent: witness fails the torsor equations");
        cell = w;
    }

    // direct obstructions
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            SClass b1{static_cast<std::uint8_t>(i)}, b2{static_cast<std::uint8_t>(j)};
            CellStatus& cell = cert.cells[i * 16 + j];
            if (cell_resolved(cell)) continue;
            if (auto hit = direct_obstruction(b1, b2))
                cell = Obstruction{hit->place, hit->rule};
        }

    // closure pass: image * non-image = non-image
    std::vector<std::pair<SClass, SClass>> images;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            if (cell_is_image(cert.cells[i * 16 + j]))
                images.push_back({SClass{static_cast<std::uint8_t>(i)},
                                  SClass{static_cast<std::uint8_t>(j)}});
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) {
                CellStatus& cell = cert.cells[i * 16 + j];
                if (cell_resolved(cell)) continue;
                SClass b1{static_cast<std::uint8_t>(i)}, b2{static_cast<std::uint8_t>(j)};
                for (const auto& [g1, g2] : images) {
                    SClass c1 = b1 * g1, c2 = b2 * g2;
                    const CellStatus& prod = cert.cell(c1, c2);
                    if (!cell_resolved(prod) || cell_is_image(prod)) continue;
                    ObstructionPlace root;
                    if (auto* o = std::get_if<Obstruction>(&prod)) root = o->place;
                    else root = std::get<ClosureDerived>(prod).root_place;
                    cell = ClosureDerived{c1.bits, c2.bits, g1.bits, g2.bits, root};
                    changed = true;
                    break;
                }
            }
    }

    // bounded witness search for anything still unresolved: enumerate small z1
    // and read the other two coordinates off the torsor equations
    Int wbound = opt.witness_bound > 0 ? opt.witness_bound : 4 * a * a;
    long zcap = std::min<long>(60, std::max<long>(8, mpz_sizeinbase(wbound.get_mpz_t(), 2)));
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            CellStatus& cell = cert.cells[i * 16 + j];
            if (cell_resolved(cell)) continue;
            SClass b1{static_cast<std::uint8_t>(i)}, b2{static_cast<std::uint8_t>(j)};
            TorsorSystem T(a, b1, b2);
            for (long u = -zcap; u <= zcap && !cell_resolved(cell); ++u)
                for (long w = 1; w <= zcap; ++w) {
                    if (u == 0) continue;
                    Rat z1 = make_rat(Int(u), Int(w));
                    Rat s2 = (Rat(T.b1v) * z1 * z1 - Rat(T.rhs1)) / Rat(T.b2v);
                    Rat s3 = (Rat(T.b1v) * z1 * z1 - Rat(T.rhs2)) / Rat(T.b12v);
                    if (s2 <= 0 || s3 < 0 || !is_square(s2) || !is_square(s3)) continue;
                    Rat z2 = sqrt_exact(s2), z3 = sqrt_exact(s3);
                    if (!T.verify(z1, z2, z3)) continue;
                    Rat x = Rat(T.b1v) * z1 * z1;
                    Rat rhs = ((x + E.a2()) * x + E.a4()) * x;
                    if (rhs < 0 || !is_square(rhs)) continue;
                    cell = Witness{EPoint(x, sqrt_exact(rhs)), z1, z2, z3};
                    break;
                }
        }

    cert.survivors = 0;
    for (const auto& cell : cert.cells) {
        if (!cell_resolved(cell))
            throw UnresolvedError("run_descent: unresolved descent cell for a = " + a.get_str());
        if (cell_is_image(cell)) ++cert.survivors;
    }
    // 2^(2+r) classes survive
    int s = cert.survivors;
    if (s < 4 || (s & (s - 1)) != 0)
        throw InternalError("run_descent: survivor count is not a power of two >= 4");
    int log2s = 0;
    while ((1 << log2s) < s) ++log2s;
    cert.rank = log2s - 2;
    return cert;
}

std::string DescentCertificate::render_table() const {
    std::ostringstream os;
    auto cell_tag = [](const CellStatus& s) -> std::string {
        if (std::holds_alternative<Witness>(s)) return "PT";
        if (auto* o = std::get_if<Obstruction>(&s)) {
            switch (o->place) {
                case ObstructionPlace::real: return "R ";
                case ObstructionPlace::two_parity: return "* ";
                case ObstructionPlace::p1_adic: return "q1";
                case ObstructionPlace::p2_adic: return "q2";
                case ObstructionPlace::prime_distinct: return "D ";
            }
        }
        if (std::holds_alternative<ClosureDerived>(s)) return ". ";
        return "??";
    };
    os << "rows b2, cols b1; PT witness, R real, * mod-2, q1/q2 p-adic, D distinct-primes,\n"
          ". closure-derived\n\n";
    os << "          ";
    for (int i = 0; i < 16; ++i) os << i << (i < 10 ? "  " : " ");
    os << "\n";
    for (int j = 0; j < 16; ++j) {
        SClass b2{static_cast<std::uint8_t>(j)};
        std::string lbl = b2.label();
        lbl.resize(10, ' ');
        os << lbl;
        for (int i = 0; i < 16; ++i) os << cell_tag(cells[i * 16 + j]) << " ";
        os << "\n";
    }
    os << "\nlegend cols: ";
    for (int i = 0; i < 16; ++i) os << i << "=" << SClass{static_cast<std::uint8_t>(i)}.label() << " ";
    os << "\n";
    return os.str();
}

// ---------- brute-force local solubility ----------

namespace {

struct Tuple4 {
    Int z1, z2, z3, w;
    bool operator==(const Tuple4& o) const {
        return z1 == o.z1 && z2 == o.z2 && z3 == o.z3 && w == o.w;
    }
};

struct Tuple4Hash {
    std::size_t operator()(const Tuple4& t) const {
        auto h = [](const Int& v) { return std::hash<unsigned long>{}(mpz_fdiv_ui(v.get_mpz_t(), 0x7fffffffUL)); };
        std::size_t s = h(t.z1);
        s = s * 1000003 + h(t.z2);
        s = s * 1000003 + h(t.z3);
        s = s * 1000003 + h(t.w);
        return s;
    }
};

}  // namespace

LocalVerdict local_solubility_qp(const TorsorSystem& T, const Int& p, int maxLift,
                                 std::size_t cap) {
    if (!is_prime(p) || p > 10000) throw HypothesisError("local_solubility_qp: p prime <= 10^4");
    const Int b1 = T.b1v, b2 = T.b2v, b12 = T.b12v, r1 = T.rhs1, r2 = T.rhs2;
    auto Q1 = [&](const Tuple4& t) -> Int {
        return b1 * t.z1 * t.z1 - b2 * t.z2 * t.z2 - r1 * t.w * t.w;
    };
    auto Q2 = [&](const Tuple4& t) -> Int {
        return b1 * t.z1 * t.z1 - b12 * t.z3 * t.z3 - r2 * t.w * t.w;
    };

    // smooth early exit: minimal p-valuation m over the 2x2 minors of the
    // Jacobian; a solution mod p^k with k >= 2m+1 lifts to Z_p
    auto smooth_level = [&](const Tuple4& t) -> std::optional<unsigned long> {
        Int g1[4] = {2 * b1 * t.z1, -2 * b2 * t.z2, Int(0), -2 * r1 * t.w};
        Int g2[4] = {2 * b1 * t.z1, Int(0), -2 * b12 * t.z3, -2 * r2 * t.w};
        std::optional<unsigned long> best;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                Int m = g1[i] * g2[j] - g1[j] * g2[i];
                if (m == 0) continue;
                unsigned long v = valuation(m, p);
                if (!best || v < *best) best = v;
            }
        return best;
    };

    std::vector<Tuple4> level;
    // primitive solutions mod p
    for (Int z1 = 0; z1 < p; ++z1)
        for (Int z2 = 0; z2 < p; ++z2)
            for (Int z3 = 0; z3 < p; ++z3)
                for (Int w = 0; w < p; ++w) {
                    if (z1 == 0 && z2 == 0 && z3 == 0 && w == 0) continue;
                    Tuple4 t{z1, z2, z3, w};
                    if (Q1(t) % p == 0 && Q2(t) % p == 0) level.push_back(t);
                }

    Int pk = p;
    for (int k = 1; k <= maxLift; ++k) {
        if (level.empty()) return LocalVerdict::insoluble;
        for (const Tuple4& t : level) {
            auto m = smooth_level(t);
            if (m && 2 * (*m) + 1 <= static_cast<unsigned long>(k)) return LocalVerdict::soluble;
        }
        if (k == maxLift) break;
        // lift: children t + p^k d with linearized conditions mod p
        std::unordered_set<Tuple4, Tuple4Hash> next;
        for (const Tuple4& t : level) {
            Int c1 = (Q1(t) / pk) % p, c2 = (Q2(t) / pk) % p;
            if (c1 < 0) c1 += p;
            if (c2 < 0) c2 += p;
            Int g1[4] = {2 * b1 * t.z1 % p, -2 * b2 * t.z2 % p, Int(0), -2 * r1 * t.w % p};
            Int g2[4] = {2 * b1 * t.z1 % p, Int(0), -2 * b12 * t.z3 % p, -2 * r2 * t.w % p};
            for (auto& g : g1) if (g < 0) g += p;
            for (auto& g : g2) if (g < 0) g += p;
            for (Int d1 = 0; d1 < p; ++d1)
                for (Int d2 = 0; d2 < p; ++d2)
                    for (Int d3 = 0; d3 < p; ++d3)
                        for (Int d4 = 0; d4 < p; ++d4) {
                            Int l1 = (c1 + g1[0] * d1 + g1[1] * d2 + g1[2] * d3 + g1[3] * d4) % p;
                            Int l2 = (c2 + g2[0] * d1 + g2[1] * d2 + g2[2] * d3 + g2[3] * d4) % p;
                            if (l1 == 0 && l2 == 0)
                                next.insert(Tuple4{t.z1 + pk * d1, t.z2 + pk * d2, t.z3 + pk * d3,
                                                   t.w + pk * d4});
                            if (next.size() > cap) return LocalVerdict::unknown;
                        }
        }
        level.assign(next.begin(), next.end());
        pk *= p;
    }
    return level.empty() ? LocalVerdict::insoluble : LocalVerdict::unknown;
}

}  // namespace dm
