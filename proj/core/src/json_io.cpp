#include "dm/json_io.hpp"

namespace dm {

namespace {

std::string rs(const Rat& q) { return q.get_str(); }
std::string is(const Int& n) { return n.get_str(); }

}  // namespace

json to_json(const EllCurve& E) {
    return json{{"a1", rs(E.a1())}, {"a2", rs(E.a2())}, {"a3", rs(E.a3())},
                {"a4", rs(E.a4())}, {"a6", rs(E.a6())}};
}

EllCurve curve_from_json(const json& j) {
    auto r = [&j](const char* k) { return Rat(j.at(k).get<std::string>()); };
    return EllCurve(r("a1"), r("a2"), r("a3"), r("a4"), r("a6"));
}

json to_json(const EPoint& P) {
    if (P.infinity) return json("O");
    return json{{"x", rs(P.x)}, {"y", rs(P.y)}};
}

EPoint epoint_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "O") return EPoint::O();
    return EPoint(Rat(j.at("x").get<std::string>()), Rat(j.at("y").get<std::string>()));
}

json to_json(const CPoint& P) {
    return json{{"X", is(P.X)}, {"Y", is(P.Y)}, {"Z", is(P.Z)}};
}

json to_json(const DescentCertificate& cert) {
    json cells = json::array();
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            SClass b1{static_cast<std::uint8_t>(i)}, b2{static_cast<std::uint8_t>(j)};
            const CellStatus& s = cert.cell(b1, b2);
            json c{{"b1", b1.label()}, {"b2", b2.label()}};
            if (auto* w = std::get_if<Witness>(&s)) {
                c["status"] = "witness";
                c["point"] = to_json(w->point);
                c["z"] = json::array({rs(w->z1), rs(w->z2), rs(w->z3)});
            } else if (auto* o = std::get_if<Obstruction>(&s)) {
                c["status"] = "obstruction";
                c["place"] = place_name(o->place);
                c["rule"] = o->rule;
            } else if (auto* d = std::get_if<ClosureDerived>(&s)) {
                c["status"] = "closure";
                c["from"] = json::array({SClass{d->from_b1}.label(), SClass{d->from_b2}.label()});
                c["via"] = json::array({SClass{d->via_b1}.label(), SClass{d->via_b2}.label()});
                c["root_place"] = place_name(d->root_place);
            } else {
                c["status"] = "unresolved";
            }
            cells.push_back(c);
        }
    auto pstr = [](Primality p) {
        return p == Primality::prime ? "prime"
               : p == Primality::probable_prime ? "probable_prime" : "composite";
    };
    return json{{"a", is(cert.a)},
                {"hypotheses",
                 {{"a^2-2", pstr(cert.p1_status)},
                  {"a^2+2", pstr(cert.p2_status)},
                  {"a_div_3", cert.a_div_3},
                  {"a_odd", cert.a_odd}}},
                {"survivors", cert.survivors},
                {"rank", cert.rank},
                {"cells", cells}};
}

json to_json(const LocalRootReport& r) {
    return json{{"p", r.place}, {"type", r.reduction}, {"w", r.w},
                {"rule", r.rule}, {"data", r.data}};
}

json to_json(const GlobalRootReport& r) {
    json places = json::array();
    for (const auto& lr : r.places) places.push_back(to_json(lr));
    return json{{"a", is(r.a)},
                {"q", is(r.q)},
                {"places", places},
                {"bad_set_complete", r.bad_set_complete},
                {"w_global", r.w_global}};
}

json to_json(const ParityCertificate& c) {
    json j = to_json(c.report);
    j["rank_odd"] = c.rank_odd;
    j["conditional"] = c.conditional;
    return j;
}

json to_json(const IdentityReport& r) {
    json checks = json::array();
    for (const auto& [name, ok] : r.checks) checks.push_back(json{{"name", name}, {"pass", ok}});
    return json{{"checks", checks}, {"all_pass", r.all_pass()}};
}

json to_json(const DegreeEstimate& d) {
    json primes = json::array();
    for (const Int& p : d.primes_used) primes.push_back(is(p));
    return json{{"degree", d.degree}, {"degenerate", d.degenerate}, {"primes", primes}};
}

json to_json(const CasselsMatrix& m) {
    return json{{"matrix", json::array({json::array({is(m.m[0][0]), is(m.m[0][1])}),
                                        json::array({is(m.m[1][0]), is(m.m[1][1])})})},
                {"det", is(m.det)},
                {"independent", m.independent}};
}

json to_json(const SearchReport& r) {
    json targets = json::array();
    for (const auto& t : r.targets)
        targets.push_back(json{{"n", t.n},
                               {"torsion", t.torsion_label},
                               {"target", to_json(t.target)},
                               {"pullbacks_phi1", t.pullbacks_phi1},
                               {"pullbacks_phi2", t.pullbacks_phi2}});
    json pts = json::array();
    for (const auto& P : r.points) pts.push_back(to_json(P));
    json tdp = json::array();
    for (const auto& P : r.torsion_difference_points) tdp.push_back(to_json(P));
    json decomp = json::array();
    for (const auto& [pt, d] : r.decompositions)
        decomp.push_back(json{{"point", pt},
                              {"n", d.n},
                              {"torsion", d.torsion_label},
                              {"found", d.found}});
    json j{{"a", is(r.a)},
           {"complete", r.complete},
           {"descent_rank", r.descent_rank},
           {"generator",
            {{"point", to_json(r.generator.R)},
             {"height", r.generator.hR},
             {"saturation_primes", r.generator.saturation_primes},
             {"divisions_applied", r.generator.divisions_applied}}},
           {"targets", targets},
           {"torsion_difference_points", tdp},
           {"points", pts},
           {"decompositions", decomp},
           {"elapsed_seconds", r.elapsed_seconds}};
    if (!r.incompleteness_reason.empty()) j["incompleteness_reason"] = r.incompleteness_reason;
    if (r.root_number) j["root_number_context"] = *r.root_number;
    if (r.budget) {
        j["budget"] = json{{"B_reference", r.budget->bound.reference},
                           {"B_computed", r.budget->bound.computed},
                           {"B_used", r.budget->bound.used},
                           {"silverman", r.budget->bound.silv},
                           {"material_disagreement", r.budget->bound.material_disagreement},
                           {"hR", r.budget->hR},
                           {"nMax", r.budget->nMax}};
    }
    return j;
}

namespace {

json coeffs_json(const PolyQ& p) {
    json out = json::array();
    for (const Rat& c : p.coeffs()) out.push_back(rs(c));
    return out;
}

json map_json(const ProjectiveMap& m) {
    auto coord = [](const MapCoord& c) {
        return json{{"pure", coeffs_json(c.pure.p)}, {"ylin", coeffs_json(c.ylin.p)}};
    };
    return json{{"X", coord(m.X)}, {"Y", coord(m.Y)}, {"Z", coord(m.Z)}};
}

}  // namespace

json family_summary_json(const FamilyBundle& B) {
    return json{{"a", is(B.a())},
                {"C", {{"f", B.f().str()}, {"coeffs", coeffs_json(B.f())}}},
                {"quartic", B.quartic().str()},
                {"E_a", to_json(B.Ea())},
                {"E_prime", to_json(B.Eprime())},
                {"phi1", map_json(B.maps().phi1)},
                {"phi2", map_json(B.maps().phi2)},
                {"degenerate_flag", B.degenerate_flag()}};
}

}  // namespace dm
