#pragma once
#include "e2/cohomology.hpp"

#include <optional>

namespace e2 {

// E2^{0,0} is a set of maps, not a group: either an affine parameter
// space of algebra homs or a lattice of equivariant homotopy classes.
struct HomSetDescriptor {
    int affine_dim = 0;
    bool constraints_all_zero = true;
    int constraint_count = 0;
    std::optional<AbelianGroupDescriptor> lattice;
    std::vector<std::string> named_classes;
    std::map<std::string, bool> survives;

    bool single_point() const
    {
        return !lattice.has_value() && affine_dim == 0 && constraints_all_zero;
    }
    bool operator==(const HomSetDescriptor& o) const
    {
        return affine_dim == o.affine_dim && constraints_all_zero == o.constraints_all_zero &&
               constraint_count == o.constraint_count && lattice == o.lattice &&
               named_classes == o.named_classes && survives == o.survives;
    }
};

struct Entry {
    enum class Kind { q_dim, group, homset, unidentified, window_limited_marker };

    Kind kind = Kind::q_dim;
    int qdim = 0;
    AbelianGroupDescriptor group;
    HomSetDescriptor homset;
    std::string provenance;
    bool window_limited = false;

    static Entry q(int dim, std::string prov);
    static Entry grp(AbelianGroupDescriptor g, std::string prov);
    static Entry homs(HomSetDescriptor h, std::string prov);
    static Entry marker(Kind k, std::string prov);

    bool is_marker() const
    {
        return kind == Kind::unidentified || kind == Kind::window_limited_marker;
    }
    bool is_zero() const;
    std::string value_string() const;
    bool operator==(const Entry& o) const;
};

struct PageWindow {
    int s_max = 0;
    int t_min = 0, t_max = 0;
    bool contains(int s, int t) const { return 0 <= s && s <= s_max && t_min <= t && t <= t_max; }
};

struct Page {
    int r = 2;
    PageWindow window;
    std::map<std::pair<int, int>, Entry> entries;
    std::string caveat = "conditional convergence assumed; extension problems unresolved";

    const Entry* find(int s, int t) const
    {
        auto it = entries.find({s, t});
        return it == entries.end() ? nullptr : &it->second;
    }
    void put(int s, int t, Entry e);
    bool operator==(const Page& o) const
    {
        return r == o.r && window.s_max == o.window.s_max && window.t_min == o.window.t_min &&
               window.t_max == o.window.t_max && entries == o.entries;
    }
};

// d_r: (s,t) -> (s+r, t+r-1), the Bousfield cosimplicial convention.
struct InjectedDifferential {
    int r = 2;
    int s = 0, t = 0;
    bool is_integral = true;
    IntMatrix zmatrix;
    RatMatrix qmatrix;
    std::vector<std::string> killed_classes;  // for a (0,0)-sourced differential
    std::string citation;

    std::pair<int, int> source() const { return {s, t}; }
    std::pair<int, int> target() const { return {s + r, t + r - 1}; }
};

Page turn_page(const Page& p, const std::vector<InjectedDifferential>& diffs);

struct CollapseBound {
    std::optional<int> page;
    std::string justification;
    bool window_limited = false;
};

CollapseBound collapse_bound(const Page& p, std::optional<int> structural_vanishing_line);

struct ObstructionReport {
    bool forgetful_surjective = true;
    std::string surjectivity_note;
    bool forgetful_injective = true;
    bool injectivity_window_limited = false;
    std::vector<std::pair<int, std::string>> einf_diagonal;  // (t, value) for t > 0
    std::map<std::string, bool> class_survival;
    bool edge_bijection() const { return forgetful_surjective && forgetful_injective; }
};

// Runs the page through every injected differential and reports the
// edge-homomorphism behavior: surjectivity (no differentials leave
// (0,0)), injectivity (E_inf^{t,t} = 0 for t > 0), per-class survival.
ObstructionReport obstruction_report(const Page& p2,
                                     const std::vector<InjectedDifferential>& injected);

struct AbutmentPiece {
    int s = 0, t = 0;
    std::string value;
};

// Associated-graded pieces of the stem-n abutment, filtration-ordered.
std::vector<AbutmentPiece> abutment_diagonal(const Page& p_inf, int stem);

}  // namespace e2
