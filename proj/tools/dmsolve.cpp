// Command-line front end: analyze / rank / rootnumber / points / survey /
// verify-identities over the curve family, with optional JSON output and a
// file cache.  Exit codes: 0 ok, 2 hypothesis violation, 3 unresolved
// certificate, 4 internal inconsistency.

#include <CLI11.hpp>

#include "dm/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

constexpr const char* kModuleVersion = "1";

struct RunConfig {
    double tol = 1e-3;
    long witness_bound = 0;
    std::uint64_t seed = 0x5eed;
    bool json_out = false;
    bool table = false;
    std::string cache_dir;

    void validate() const {
        if (!(tol > 0 && tol <= 0.1))
            throw dm::HypothesisError("tolerance must lie in (0, 0.1]");
    }
    std::string hash_key() const {
        std::ostringstream os;
        os << "v" << kModuleVersion << "-tol" << tol << "-wb" << witness_bound << "-seed" << seed;
        return std::to_string(std::hash<std::string>{}(os.str()) & 0xffffffffULL);
    }
};

std::filesystem::path cache_path(const RunConfig& cfg, const std::string& cmd, const dm::Int& a) {
    return std::filesystem::path(cfg.cache_dir) /
           (cmd + "-a" + a.get_str() + "-" + cfg.hash_key() + ".json");
}

std::optional<dm::json> cache_load(const RunConfig& cfg, const std::string& cmd, const dm::Int& a) {
    if (cfg.cache_dir.empty()) return std::nullopt;
    auto p = cache_path(cfg, cmd, a);
    if (!std::filesystem::exists(p)) return std::nullopt;
    std::ifstream in(p);
    dm::json j;
    in >> j;
    return j;
}

void cache_store(const RunConfig& cfg, const std::string& cmd, const dm::Int& a,
                 const dm::json& j) {
    if (cfg.cache_dir.empty()) return;
    std::filesystem::create_directories(cfg.cache_dir);
    std::ofstream out(cache_path(cfg, cmd, a));
    out << j.dump(2) << "\n";
}

void emit(const dm::json& j, bool as_json, const std::function<void(const dm::json&)>& text) {
    if (as_json) std::cout << j.dump(2) << "\n";
    else text(j);
}

// ---- text renderings (derived from the JSON payloads) ----

void render_analyze(const dm::json& j) {
    std::cout << "a = " << j["a"].get<std::string>() << "\n";
    std::cout << "C_a: y^2 = " << j["family"]["C"]["f"].get<std::string>() << "\n";
    std::cout << "E_a: y^2 = x^3 + " << j["family"]["E_a"]["a2"].get<std::string>()
              << "*x^2 + " << j["family"]["E_a"]["a4"].get<std::string>() << "*x\n";
    std::cout << "E':  y^2 = x^3 + " << j["family"]["E_prime"]["a2"].get<std::string>()
              << "*x^2 + " << j["family"]["E_prime"]["a4"].get<std::string>() << "*x\n";
    std::cout << "identities: " << (j["identities"]["all_pass"].get<bool>() ? "pass" : "FAIL")
              << "\n";
    std::cout << "degrees: phi1 = " << j["degrees"]["phi1"]["degree"]
              << ", phi2 = " << j["degrees"]["phi2"]["degree"]
              << ", phi1+phi2 = " << j["degrees"]["sum"]["degree"] << "\n";
    std::cout << "pairing matrix det = " << j["cassels"]["det"].get<std::string>()
              << (j["cassels"]["independent"].get<bool>() ? " (independent maps)" : " (DEPENDENT)")
              << "\n";
}

void render_points(const dm::json& j) {
    std::cout << "a = " << j["a"].get<std::string>() << "\n";
    if (j.contains("budget"))
        std::cout << "descent rank " << j["descent_rank"] << ", hhat(R) = "
                  << j["generator"]["height"].get<double>() << ", nMax = "
                  << j["budget"]["nMax"] << "\n";
    if (j.contains("root_number_context"))
        std::cout << "root number of E' (context): " << j["root_number_context"] << "\n";
    std::cout << (j["complete"].get<bool>() ? "certified complete"
                                            : "NOT certified complete: " +
                                                  j.value("incompleteness_reason", std::string()))
              << "\n";
    std::cout << "elapsed " << j["elapsed_seconds"].get<double>() << "s\n";
    std::cout << "points (" << j["points"].size() << "):\n";
    for (const auto& P : j["points"])
        std::cout << "  (" << P["X"].get<std::string>() << " : " << P["Y"].get<std::string>()
                  << " : " << P["Z"].get<std::string>() << ")\n";
}

void render_rank(const dm::json& j, bool with_table) {
    std::cout << "a = " << j["a"].get<std::string>() << ": survivors = " << j["survivors"]
              << ", rank = " << j["rank"] << "\n";
    if (with_table && j.contains("table_text"))
        std::cout << j["table_text"].get<std::string>() << "\n";
}

void render_rootnumber(const dm::json& j) {
    std::cout << "a = " << j["a"].get<std::string>() << " (q = " << j["q"].get<std::string>()
              << ")\n";
    for (const auto& pl : j["places"])
        std::cout << "  w(" << pl["p"].get<std::string>() << ") = " << pl["w"].get<int>()
                  << "  [" << pl["type"].get<std::string>() << "]\n";
    std::cout << "w_global = " << j["w_global"].get<int>() << "\n";
    if (j.contains("rank_odd"))
        std::cout << "rank of E' is odd, conditional on " << j["conditional"].get<std::string>()
                  << "\n";
}

void render_survey(const dm::json& j) {
    std::cout << "a,eligible_descent,eligible_rootnumber,rank,w_global,note\n";
    for (const auto& row : j["rows"]) {
        std::cout << row["a"].get<std::string>() << "," << row["eligible_descent"].get<bool>()
                  << "," << row["eligible_rootnumber"].get<bool>() << ",";
        if (row.contains("rank")) std::cout << row["rank"].get<int>();
        std::cout << ",";
        if (row.contains("w_global")) std::cout << row["w_global"].get<int>();
        std::cout << ",";
        if (row.contains("note")) std::cout << row["note"].get<std::string>();
        std::cout << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rational points on a family of genus-3 hyperelliptic curves via maps to E_a"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_flag("--json", cfg.json_out, "emit JSON instead of text");
    app.add_option("--tol", cfg.tol, "canonical height tolerance (0, 0.1]");
    app.add_option("--witness-bound", cfg.witness_bound, "descent witness search bound");
    app.add_option("--seed", cfg.seed, "seed for randomized checks");
    app.add_option("--cache-dir", cfg.cache_dir, "cache directory for JSON results");
    app.add_flag("--table", cfg.table, "render the 16x16 descent grid (rank command)");

    long a_val = 0;
    long lo = 1, hi = 1;

    auto* analyze = app.add_subcommand("analyze", "build the family and verify its identities");
    analyze->add_option("a", a_val, "parameter")->required();
    auto* rank = app.add_subcommand("rank", "complete 2-descent rank certificate for E_a");
    rank->add_option("a", a_val, "parameter")->required();
    auto* rootnumber = app.add_subcommand("rootnumber", "global root number of E'");
    rootnumber->add_option("a", a_val, "parameter")->required();
    auto* points = app.add_subcommand("points", "certified rational point set of C_a");
    points->add_option("a", a_val, "parameter")->required();
    auto* survey = app.add_subcommand("survey", "eligibility/rank/root-number table over a range");
    survey->add_option("lo", lo, "range start")->required();
    survey->add_option("hi", hi, "range end")->required();
    auto* verify = app.add_subcommand("verify-identities", "construction identity suite");
    verify->add_option("a", a_val, "parameter")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.validate();
        dm::Int a(a_val);

        if (analyze->parsed()) {
            if (auto c = cache_load(cfg, "analyze", a)) {
                emit(*c, cfg.json_out, render_analyze);
                return 0;
            }
            dm::FamilyBundle B(a);
            dm::json j;
            j["a"] = a.get_str();
            j["family"] = dm::family_summary_json(B);
            j["identities"] = dm::to_json(dm::verify_construction_identities(a, cfg.seed));
            std::vector<dm::Int> primes = {dm::Int(13), dm::Int(17), dm::Int(19), dm::Int(23),
                                           dm::Int(29), dm::Int(31)};
            dm::DegreeEstimate d1 = dm::estimate_degree(B, dm::MapChoice::phi1, primes);
            dm::DegreeEstimate d2 = dm::estimate_degree(B, dm::MapChoice::phi2, primes);
            dm::DegreeEstimate ds = dm::estimate_degree(B, dm::MapChoice::sum, primes);
            j["degrees"] = {{"phi1", dm::to_json(d1)}, {"phi2", dm::to_json(d2)},
                            {"sum", dm::to_json(ds)}};
            j["cassels"] = dm::to_json(dm::cassels_matrix(d1.degree, d2.degree, ds.degree));
            if (!j["identities"]["all_pass"].get<bool>())
                throw dm::InternalError("identity suite failed");
            cache_store(cfg, "analyze", a, j);
            emit(j, cfg.json_out, render_analyze);
        } else if (rank->parsed()) {
            if (auto c = cache_load(cfg, "rank", a)) {
                emit(*c, cfg.json_out, [&](const dm::json& jj) { render_rank(jj, cfg.table); });
                return 0;
            }
            dm::DescentOptions opt;
            opt.witness_bound = dm::Int(cfg.witness_bound);
            opt.seed = cfg.seed;
            dm::DescentCertificate cert = dm::run_descent(a, opt);
            dm::json j = dm::to_json(cert);
            j["table_text"] = cert.render_table();
            cache_store(cfg, "rank", a, j);
            emit(j, cfg.json_out, [&](const dm::json& jj) { render_rank(jj, cfg.table); });
        } else if (rootnumber->parsed()) {
            if (auto c = cache_load(cfg, "rootnumber", a)) {
                emit(*c, cfg.json_out, render_rootnumber);
                return 0;
            }
            dm::ParityCertificate cert = dm::parity_rank_odd(a);
            dm::json j = dm::to_json(cert);
            cache_store(cfg, "rootnumber", a, j);
            emit(j, cfg.json_out, render_rootnumber);
        } else if (points->parsed()) {
            if (auto c = cache_load(cfg, "points", a)) {
                emit(*c, cfg.json_out, render_points);
                return (*c)["complete"].get<bool>() ? 0 : 2;
            }
            dm::SolveOptions opt;
            opt.tol = cfg.tol;
            opt.witness_bound = dm::Int(cfg.witness_bound);
            opt.seed = cfg.seed;
            dm::SearchReport rep = dm::solve_curve(a, opt);
            dm::json j = dm::to_json(rep);
            cache_store(cfg, "points", a, j);
            emit(j, cfg.json_out, render_points);
            if (!rep.complete) return 2;  // failed certificates are hypothesis failures
        } else if (survey->parsed()) {
            if (!(1 <= lo && lo <= hi && hi <= 10000))
                throw dm::HypothesisError("survey range must satisfy 1 <= lo <= hi <= 10^4");
            dm::json rows = dm::json::array();
            for (long av = lo; av <= hi; ++av) {
                dm::Int aa(av);
                dm::json row;
                row["a"] = aa.get_str();
                bool desc_ok = av >= 2 && dm::is_prime(aa * aa - 2) && dm::is_prime(aa * aa + 2);
                row["eligible_descent"] = desc_ok;
                bool rn_ok = false;
                if (av % 3 == 0) {
                    dm::Int q(av / 3);
                    rn_ok = desc_ok && q > 3 && dm::is_prime(q) && q % 4 == 3;
                }
                row["eligible_rootnumber"] = rn_ok;
                if (desc_ok) {
                    try {
                        row["rank"] = dm::run_descent(aa).rank;
                    } catch (const std::exception& e) {
                        row["note"] = e.what();
                    }
                }
                if (rn_ok) {
                    try {
                        row["w_global"] = dm::global_root_number(aa).w_global;
                    } catch (const std::exception& e) {
                        row["note"] = e.what();
                    }
                }
                rows.push_back(row);
            }
            dm::json j{{"lo", lo}, {"hi", hi}, {"rows", rows}};
            emit(j, cfg.json_out, render_survey);
        } else if (verify->parsed()) {
            dm::IdentityReport rep = dm::verify_construction_identities(a, cfg.seed);
            dm::json j = dm::to_json(rep);
            j["a"] = a.get_str();
            emit(j, cfg.json_out, [](const dm::json& jj) {
                for (const auto& c : jj["checks"])
                    std::cout << (c["pass"].get<bool>() ? "pass  " : "FAIL  ")
                              << c["name"].get<std::string>() << "\n";
            });
            if (!rep.all_pass()) return 4;
        }
        return 0;
    } catch (const dm::HypothesisError& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 2;
    } catch (const dm::UnresolvedError& e) {
        std::cerr << "unresolved certificate: " << e.what() << "\n";
        return 3;
    } catch (const dm::InternalError& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
