#pragma once

// The search endgame: height-difference search radius, rank-1 generator with
// saturation, enumeration of candidate images nR + T, pullback through both
// maps, the torsion-difference case, and the certified point set on C_a.

#include "dm/descent.hpp"
#include "dm/ecq.hpp"
#include "dm/family.hpp"
#include "dm/rootnum.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dm {

struct HeightDiffBound {
    double reference;  // log6 + log4 + 2*24 + 2 log a, the constant-24 form
    double computed;   // log6 + log4 + 2*silverman_bound(E_a) + 2 log a
    double used;       // max of the two
    double silv;
    bool material_disagreement = false;  // |computed - reference| > 5
};

HeightDiffBound height_diff_bound(const Int& a, double silv);

struct GeneratorReport {
    EPoint R;
    double hR = 0.0;
    std::vector<int> saturation_primes;   // ell tested
    std::vector<int> divisions_applied;   // ell where an index was removed
};

// Start from (-a^2, 2a), divide out indices ell <= 7 where possible.
GeneratorReport find_generator(const Int& a, double tol = 1e-3);

struct SearchBudget {
    HeightDiffBound bound;
    double hR = 0.0;
    int nMax = 0;
    std::vector<EPoint> torsion;
};

SearchBudget derive_budget(const Int& a, const GeneratorReport& gen);

// All P on C_a with phi(P) in {target, -target}, finite or infinite.
std::vector<CPoint> pullback(const FamilyBundle& B, WhichMap which, const EPoint& target);

// All P with phi1(P) + s*phi2(P) torsion for s = +1 or -1.
std::vector<CPoint> torsion_difference_case(const FamilyBundle& B);

struct TargetRecord {
    int n = 0;
    std::string torsion_label;
    EPoint target;
    int pullbacks_phi1 = 0, pullbacks_phi2 = 0;
};

struct Decomposition {
    int n = 0;
    std::string torsion_label;
    bool found = false;
};

struct SearchReport {
    Int a;
    bool complete = false;
    std::string incompleteness_reason;
    std::optional<SearchBudget> budget;
    GeneratorReport generator;
    int descent_rank = -1;
    std::optional<int> root_number;  // context only
    std::vector<TargetRecord> targets;
    std::vector<CPoint> torsion_difference_points;
    std::vector<CPoint> points;  // final, symmetry-closed, sorted
    std::vector<std::pair<std::string, Decomposition>> decompositions;  // per point, phi1 image
    double elapsed_seconds = 0.0;
};

struct SolveOptions {
    double tol = 1e-3;
    Int witness_bound = 0;
    std::uint64_t seed = 0x5eedULL;
    bool with_root_number_context = true;
    int fallback_nmax = 8;  // enumeration depth when certificates are unavailable
};

// Full pipeline.  When the descent hypotheses fail the report is produced in
// incomplete mode (universal points plus everything the solvers find, no
// completeness claim) and `complete` stays false.
SearchReport solve_curve(const Int& a, const SolveOptions& opt = {});

// Chabauty-style comparison bound #C_a(F_p) + 2g - 2 (g = 3).
Int coleman_comparison(const Int& a, const Int& p);

// exhaustive scan oracle: all points with x = p/q, max(|p|,|q|) <= hmax,
// plus infinite points
std::vector<CPoint> brute_force_points(const FamilyBundle& B, long hmax);

}  // namespace dm
