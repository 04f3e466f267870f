#pragma once
#include "e2/resolutions.hpp"

#include <variant>

namespace e2 {

struct BigradedEntry {
    int dim = 0;
    std::string provenance;
    bool window_limited = false;
};

// dims[(s,t)] with provenance per value; missing key = 0
struct BigradedDims {
    std::map<std::pair<int, int>, BigradedEntry> at;

    int dim(int s, int t) const
    {
        auto it = at.find({s, t});
        return it == at.end() ? 0 : it->second.dim;
    }
    void set(int s, int t, int d, std::string prov, bool limited = false)
    {
        if (d == 0 && !limited) return;
        at[{s, t}] = {d, std::move(prov), limited};
    }
};

// Hochschild cohomology HH^s per shift t for 0 <= s <= s_max and t in
// shifts. Polynomial bases with even generators take the Koszul fast
// path; anything else routes to the cotriple oracle within its budgets.
BigradedDims hochschild(const AlgebraPresentation& R, const ModuleViaHom& coeff, int s_max,
                        DegreeWindow shifts);

// Andre-Quillen cohomology AQ^s per shift t from the two-term cotangent
// complex. Requires a smooth or complete-intersection presentation.
BigradedDims andre_quillen(const AlgebraPresentation& B, const ModuleViaHom& coeff, int s_max,
                           DegreeWindow shifts);

// Z-lattice or rational C_n-module with a chosen generator action.
struct CyclicModule {
    int order = 2;
    std::variant<IntMatrix, RatMatrix> action;
};

// H^s(C_n; M) for s = 0..s_max via the 2-periodic resolution:
// H^0 fixed points, odd ker(Norm)/im(g-1), even>0 fixed/im(Norm).
std::vector<AbelianGroupDescriptor> cyclic_group_cohomology(const CyclicModule& m, int s_max);

// rational coefficients: dimensions only (vanish for s >= 1)
std::vector<int> cyclic_group_cohomology_q(const CyclicModule& m, int s_max);

}  // namespace e2
