#pragma once
#include "e2/specseq.hpp"

namespace e2 {

struct ScenarioResult {
    std::string name;
    std::string description;
    Page e2;
    std::vector<InjectedDifferential> differentials;
    CollapseBound collapse;
};

// Built-in constructors for the worked examples: su-n, bu, free, hopf,
// heisenberg, s-sigma, ku-c2. Deterministic in (name, params, window).
ScenarioResult build_scenario(const std::string& name,
                              const std::map<std::string, std::string>& params,
                              DegreeWindow t_window, int s_max);

std::vector<std::string> scenario_names();

struct OracleComparison {
    bool applicable = false;
    bool match = true;
    std::string detail;
};

// Recomputes the algebraic scenarios' E2 entries through the cotriple
// Moore oracle and compares, within the given budget.
OracleComparison oracle_crosscheck(const ScenarioResult& result,
                                   const std::map<std::string, std::string>& params,
                                   int s_cap, int t_cap, int budget);

}  // namespace e2
