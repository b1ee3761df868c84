#pragma once

// Local and global root numbers of E' under the family hypotheses
// (a = 3q, q > 3 prime, q = 3 mod 4, a^2 +- 2 prime) and the resulting
// parity-conditional odd-rank certificate.

#include "dm/ecq.hpp"
#include "dm/numth.hpp"

#include <map>
#include <string>
#include <vector>

namespace dm {

struct LocalRootReport {
    std::string place;  // "inf" or the prime as a decimal string
    std::string reduction;
    int w = 0;
    std::string rule;  // which classification case applied
    std::map<std::string, std::string> data;
};

struct GlobalRootReport {
    Int a, q;
    std::vector<LocalRootReport> places;
    bool bad_set_complete = false;  // every prime of Delta(E') accounted for
    int w_global = 0;
};

// place: "inf" or a prime; the curve must fit the classified cases.
LocalRootReport local_root_number(const EllCurve& E, const std::string& place);

GlobalRootReport global_root_number(const Int& a);

struct ParityCertificate {
    GlobalRootReport report;
    bool rank_odd = false;
    std::string conditional = "parity";
};

ParityCertificate parity_rank_odd(const Int& a);

}  // namespace dm
