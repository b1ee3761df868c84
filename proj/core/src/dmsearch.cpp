#include "dm/dmsearch.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace dm {

namespace {

constexpr double kReferenceSilv = 24.0;  // the fixed constant the budget derivation quotes

EllCurve family_Ea(const Int& a) {
    return EllCurve::from_a246(2 * Rat(a) * Rat(a), Rat(a) * Rat(a) * Rat(a) * Rat(a) - 4, Rat(0));
}

std::vector<EPoint> family_torsion(const EllCurve& E) {
    // the full torsion subgroup; (Z/2Z)^2 with x in {0, -a^2+2, -a^2-2} for
    // every certified parameter, possibly larger for degenerate ones
    return torsion_subgroup(E).points;
}

std::string torsion_label(const EPoint& T, const Int& a) {
    if (T.infinity) return "O";
    if (T.x == 0) return "(0,0)";
    if (T.x == Rat(-(a * a) + 2)) return "e2";
    if (T.x == Rat(-(a * a) - 2)) return "e3";
    return T.str();
}

}  // namespace

HeightDiffBound height_diff_bound(const Int& a, double silv) {
    if (a < 2) throw HypothesisError("height_diff_bound: a >= 2 expected");
    HeightDiffBound hb;
    double base = std::log(6.0) + std::log(4.0) + 2.0 * std::log(mpz_get_d(a.get_mpz_t()));
    hb.silv = silv;
    hb.reference = base + 2.0 * kReferenceSilv;
    hb.computed = base + 2.0 * silv;
    hb.used = std::max(hb.reference, hb.computed);
    hb.material_disagreement = std::fabs(hb.computed - hb.reference) > 5.0;
    return hb;
}

GeneratorReport find_generator(const Int& a, double tol) {
    EllCurve E = family_Ea(a);
    EPoint P(Rat(-(a * a)), Rat(2 * a));
    if (!E.on_curve(P)) throw InternalError("find_generator: seed point not on curve");
    if (is_torsion(E, P))
        throw HypothesisError("find_generator: (-a^2, 2a) is torsion (degenerate a = " +
                              a.get_str() + ")");

    GeneratorReport rep;
    std::vector<EPoint> tors = family_torsion(E);
    bool reduced = true;
    while (reduced) {
        reduced = false;
        for (int ell : {2, 3, 5, 7}) {
            if (std::find(rep.saturation_primes.begin(), rep.saturation_primes.end(), ell) ==
                rep.saturation_primes.end())
                rep.saturation_primes.push_back(ell);
            auto [N, D] = x_multiple_map(E, ell);
            for (const EPoint& T : tors) {
                EPoint S = E.add(P, T);
                if (S.infinity) continue;
                PolyQ eqn = N - D * S.x;
                for (const Rat& xr : rational_roots(eqn)) {
                    Rat rhs = ((xr + E.a2()) * xr + E.a4()) * xr + E.a6();
                    if (rhs < 0 || !is_square(rhs)) continue;
                    EPoint Q(xr, sqrt_exact(rhs));
                    EPoint LQ = E.mul(ell, Q);
                    if (LQ == S) { /* keep Q */ }
                    else if (LQ == E.neg(S)) Q = E.neg(Q);
                    else continue;
                    if (is_torsion(E, Q)) continue;
                    P = Q;
                    rep.divisions_applied.push_back(ell);
                    reduced = true;
                    break;
                }
                if (reduced) break;
            }
            if (reduced) break;
        }
    }
    rep.R = P;
    rep.hR = canonical_height(E, P, tol);
    return rep;
}

SearchBudget derive_budget(const Int& a, const GeneratorReport& gen) {
    SearchBudget b;
    EllCurve E = family_Ea(a);
    b.bound = height_diff_bound(a, silverman_bound(E));
    b.hR = gen.hR;
    if (b.hR <= 0) throw InternalError("derive_budget: nonpositive generator height");
    double ratio = b.bound.used / b.hR;
    // with n != +-m the closest competitor is m = n-1, so |n^2 - m^2| >= 2n-1;
    // nMax is the largest n with 2n - 1 <= ratio
    b.nMax = static_cast<int>(std::floor((ratio + 1.0) / 2.0));
    b.torsion = family_torsion(E);
    return b;
}

std::vector<CPoint> pullback(const FamilyBundle& B, WhichMap which, const EPoint& target) {
    std::vector<CPoint> out;
    const EllCurve& E = B.Ea();
    if (!E.on_curve(target)) throw InternalError("pullback: target not on E_a");
    EPoint minus = E.neg(target);
    auto matches = [&](const EPoint& img) { return img == target || img == minus; };

    // infinite points, via the projective formulas
    for (const CPoint& P : {CPoint(Int(1), Int(1), Int(0)), CPoint(Int(1), Int(-1), Int(0))})
        if (matches(B.apply_map(which, P))) out.push_back(P);

    if (target.infinity) return out;  // the affine x-map has no rational poles

    // 2y = A(x) - x0 (x^2+1)^2, then L^2 - 4f = 0
    const PolyQ& A = (which == WhichMap::phi1) ? B.maps().x_num_pure_1 : B.maps().x_num_pure_2;
    PolyQ den(std::vector<Rat>{Rat(1), Rat(0), Rat(2), Rat(0), Rat(1)});
    PolyQ L = A - den * target.x;
    PolyQ poly = L * L - B.f() * Rat(4);
    if (poly.is_zero()) throw InternalError("pullback: degenerate fiber equation");
    for (const Rat& xr : rational_roots(poly)) {
        Rat y = L.eval(xr) / 2;
        if (y * y != B.f().eval(xr)) continue;
        CPoint P = CPoint::affine(xr, y);
        if (matches(B.apply_map(which, P))) out.push_back(P);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// candidate x-values of A(x) + Bv(x) * y = 0 over y^2 = f, verified later
std::vector<Rat> linear_in_y_roots(const RatFunc& A, const RatFunc& Bv, const PolyQ& f) {
    std::vector<Rat> xs;
    PolyQ pa = A.num() * Bv.den();
    PolyQ pb = Bv.num() * A.den();
    PolyQ poly = pa * pa - pb * pb * f;
    if (poly.is_zero())
        throw InternalError("torsion difference: degenerate branch (coordinate is constant)");
    for (const Rat& r : rational_roots(poly)) xs.push_back(r);
    // poles of either coordinate function are candidates too
    for (const PolyQ& q : {A.den(), Bv.den()})
        if (q.degree() > 0)
            for (const Rat& r : rational_roots(q)) xs.push_back(r);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

std::vector<CPoint> curve_points_over_x(const FamilyBundle& B, const Rat& x) {
    std::vector<CPoint> pts;
    Rat v = B.f().eval(x);
    if (v == 0) pts.push_back(CPoint::affine(x, Rat(0)));
    else if (v > 0 && is_square(v)) {
        Rat y = sqrt_exact(v);
        pts.push_back(CPoint::affine(x, y));
        pts.push_back(CPoint::affine(x, -y));
    }
    return pts;
}

}  // namespace

std::vector<CPoint> torsion_difference_case(const FamilyBundle& B) {
    const EllCurve& E = B.Ea();
    std::vector<EPoint> tors = family_torsion(E);
    auto is_tors = [&](const EPoint& Q) {
        return std::find(tors.begin(), tors.end(), Q) != tors.end();
    };

    std::set<CPoint> candidates;
    auto add_over_x = [&](const Rat& x) {
        for (const CPoint& P : curve_points_over_x(B, x)) candidates.insert(P);
    };

    // exceptional locus x(phi1) = x(phi2): the only rational points with
    // phi1(P) = +-phi2(P); also the complete T = O branch
    for (const Rat& r : rational_roots(B.chord_degeneracy_numerator())) add_over_x(r);

    for (int sign : {1, -1}) {
        auto [x3, y3] = B.composite_map(sign);
        for (const EPoint& T : tors) {
            if (T.infinity) continue;  // covered by the exceptional locus
            // x3 = t: (u3 - t) + v3 y = 0
            RatFunc shifted = x3.u() - RatFunc::of(PolyQ::constant(T.x));
            for (const Rat& r : linear_in_y_roots(shifted, x3.v(), B.f())) add_over_x(r);
        }
    }
    candidates.insert(CPoint(Int(1), Int(1), Int(0)));
    candidates.insert(CPoint(Int(1), Int(-1), Int(0)));

    std::vector<CPoint> out;
    for (const CPoint& P : candidates) {
        EPoint i1 = B.apply_map(WhichMap::phi1, P);
        EPoint i2 = B.apply_map(WhichMap::phi2, P);
        if (is_tors(E.add(i1, i2)) || is_tors(E.add(i1, E.neg(i2)))) out.push_back(P);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Int coleman_comparison(const Int& a, const Int& p) {
    if (p <= 6) throw HypothesisError("coleman_comparison: p > 2g = 6 required");
    FamilyBundle B(a);
    IntPoly f = clear_denominators(B.f());
    // good reduction: f stays squarefree of full degree mod p
    {
        if (f.c.back() % p == 0) throw HypothesisError("coleman_comparison: bad reduction (degree drop)");
        // squarefree mod p: gcd of f and f' over F_p must be constant
        std::vector<Int> g1(f.c), g2;
        for (size_t i = 1; i < f.c.size(); ++i) g2.push_back(f.c[i] * Int(static_cast<long>(i)));
        auto modp = [&p](std::vector<Int> v) {
            for (auto& c : v) { c %= p; if (c < 0) c += p; }
            while (!v.empty() && v.back() == 0) v.pop_back();
            return v;
        };
        auto rem = [&p, &modp](std::vector<Int> A, const std::vector<Int>& Bv) {
            A = modp(A);
            Int inv;
            mpz_invert(inv.get_mpz_t(), Bv.back().get_mpz_t(), p.get_mpz_t());
            while (A.size() >= Bv.size() && !A.empty()) {
                Int fac = A.back() * inv % p;
                size_t k = A.size() - Bv.size();
                for (size_t i = 0; i < Bv.size(); ++i) A[i + k] = (A[i + k] - fac * Bv[i]) % p;
                A = modp(A);
            }
            return A;
        };
        std::vector<Int> A = modp(g1), Bv = modp(g2);
        while (!Bv.empty()) {
            auto R = rem(A, Bv);
            A = Bv;
            Bv = R;
        }
        if (A.size() != 1) throw HypothesisError("coleman_comparison: bad reduction at p");
    }
    return count_points_hyperelliptic(f, p) + 4;  // 2g - 2 = 4
}

std::vector<CPoint> brute_force_points(const FamilyBundle& B, long hmax) {
    std::vector<CPoint> out;
    out.push_back(CPoint(Int(1), Int(1), Int(0)));
    out.push_back(CPoint(Int(1), Int(-1), Int(0)));
    for (long q = 1; q <= hmax; ++q)
        for (long p = -hmax; p <= hmax; ++p) {
            if (std::gcd(std::abs(p), q) != 1) continue;
            Rat x = make_rat(Int(p), Int(q));
            for (const CPoint& P : curve_points_over_x(B, x)) out.push_back(P);
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SearchReport solve_curve(const Int& a, const SolveOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    SearchReport rep;
    rep.a = a;
    FamilyBundle B(a);
    const EllCurve& E = B.Ea();

    bool have_certificates = true;
    try {
        DescentOptions dopt;
        dopt.witness_bound = opt.witness_bound;
        dopt.seed = opt.seed;
        DescentCertificate dc = run_descent(a, dopt);
        rep.descent_rank = dc.rank;
        if (dc.rank != 1) {
            have_certificates = false;
            rep.incompleteness_reason = "descent rank != 1";
        }
    } catch (const HypothesisError& e) {
        have_certificates = false;
        rep.incompleteness_reason = e.what();
    }
    if (opt.with_root_number_context) {
        try {
            rep.root_number = global_root_number(a).w_global;
        } catch (const HypothesisError&) {
            rep.root_number = std::nullopt;
        }
    }

    bool have_generator = true;
    int nMax;
    try {
        rep.generator = find_generator(a, opt.tol);
    } catch (const HypothesisError& e) {
        // the seed point degenerates to torsion (a = 1); enumerate torsion
        // targets only, with no completeness claim
        have_generator = false;
        have_certificates = false;
        if (rep.incompleteness_reason.empty()) rep.incompleteness_reason = e.what();
    }
    if (have_certificates) {
        SearchBudget budget = derive_budget(a, rep.generator);
        nMax = budget.nMax;
        rep.budget = budget;
    } else {
        nMax = have_generator ? opt.fallback_nmax : 0;
    }

    std::set<CPoint> found;
    for (const CPoint& P : torsion_difference_case(B)) found.insert(P);
    rep.torsion_difference_points.assign(found.begin(), found.end());

    std::vector<EPoint> tors = family_torsion(E);
    EPoint nR = EPoint::O();
    for (int n = 0; n <= nMax; ++n) {
        for (const EPoint& T : tors) {
            EPoint target = E.add(nR, T);
            if (target.infinity) continue;
            TargetRecord rec;
            rec.n = n;
            rec.torsion_label = torsion_label(T, a);
            rec.target = target;
            for (WhichMap w : {WhichMap::phi1, WhichMap::phi2}) {
                std::vector<CPoint> pts = pullback(B, w, target);
                (w == WhichMap::phi1 ? rec.pullbacks_phi1 : rec.pullbacks_phi2) =
                    static_cast<int>(pts.size());
                for (const CPoint& P : pts) found.insert(P);
            }
            rep.targets.push_back(rec);
        }
        nR = E.add(nR, rep.generator.R);
    }

    // universal points must have been recovered
    for (const CPoint& P : B.universal_points())
        if (!found.count(P))
            throw InternalError("solve_curve: universal point missed by the solver");

    // symmetry closure is a consistency check: it must add nothing new
    {
        std::set<CPoint> closed = found;
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<CPoint> cur(closed.begin(), closed.end());
            for (const CPoint& P : cur) {
                for (const CPoint& Q :
                     {CPoint(-P.X, P.Y, P.Z), CPoint(P.X, -P.Y, P.Z), B.tau(P)}) {
                    if (!closed.count(Q)) {
                        closed.insert(Q);
                        grew = true;
                    }
                }
            }
        }
        if (closed.size() != found.size())
            throw InternalError("solve_curve: symmetry closure enlarged the point set");
    }

    rep.points.assign(found.begin(), found.end());

    // a-posteriori decomposition of phi1-images within the budget
    for (const CPoint& P : rep.points) {
        EPoint img = B.apply_map(WhichMap::phi1, P);
        Decomposition d;
        EPoint nRv = EPoint::O();
        for (int n = 0; n <= nMax && !d.found; ++n) {
            for (const EPoint& T : tors) {
                if (E.add(nRv, T) == img || E.add(E.neg(nRv), T) == img) {
                    d.n = n;
                    d.torsion_label = torsion_label(T, a);
                    d.found = true;
                    break;
                }
            }
            nRv = E.add(nRv, rep.generator.R);
        }
        if (!d.found && have_certificates)
            throw InternalError("solve_curve: image decomposition exceeded the budget");
        rep.decompositions.emplace_back(P.str(), d);
    }

    rep.complete = have_certificates;
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace dm
