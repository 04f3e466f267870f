#include "e2/scenarios.hpp"

#include <fmt/format.h>

namespace e2 {

namespace {

AlgebraPresentation polynomial(Flavor f, std::vector<std::pair<std::string, int>> gens)
{
    AlgebraPresentation a;
    a.flavor = f;
    for (auto& [n, d] : gens) a.generators.push_back({n, d});
    a.validate();
    return a;
}

AlgebraHom identity_hom(const AlgebraPresentation& a)
{
    AlgebraHom h;
    h.source = a;
    h.target = a;
    for (const auto& g : a.generators) h.images[g.name] = a.term(1, {g.name});
    h.is_basepoint = true;
    return h;
}

int int_param(const std::map<std::string, std::string>& params, const std::string& key,
              int fallback)
{
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        return std::stoi(it->second);
    }
    catch (...) {
        throw InvalidInput("parameter '" + key + "' must be an integer");
    }
}

void mark_t0_column(Page& page)
{
    if (!page.window.contains(1, 0)) return;
    for (int s = 1; s <= page.window.s_max; ++s)
        page.put(s, 0, Entry::marker(Entry::Kind::unidentified,
                                     "no algebraic identification of E2^{s,0} for s>0"));
}

AlgebraPresentation heisenberg_presentation()
{
    auto a = polynomial(Flavor::commutative,
                        {{"x", -1}, {"y", -1}, {"alpha", -2}, {"beta", -2}});
    a.relations.push_back(a.term(1, {"x", "y"}));
    a.relations.push_back(a.term(1, {"alpha", "alpha"}));
    a.relations.push_back(a.term(1, {"beta", "beta"}));
    a.relations.push_back(a.term(1, {"alpha", "beta"}));
    a.relations.push_back(a.term(1, {"x", "alpha"}));
    a.relations.push_back(a.term(1, {"y", "beta"}));
    Poly mixed = a.term(1, {"x", "beta"});
    Poly ya = a.term(1, {"y", "alpha"});
    mixed.terms.insert(mixed.terms.end(), ya.terms.begin(), ya.terms.end());
    a.relations.push_back(a.normalize(mixed));
    return a;
}

AlgebraPresentation hopf_source()
{
    auto b = polynomial(Flavor::commutative, {{"e", -2}});
    b.relations.push_back(b.term(1, {"e", "e"}));
    return b;
}

AlgebraHom hopf_eps()
{
    AlgebraHom eps;
    eps.source = hopf_source();
    eps.target = polynomial(Flavor::commutative, {{"y", -3}});
    eps.images["e"] = Poly{};
    eps.is_basepoint = true;
    return eps;
}

AlgebraPresentation sun_algebra(int n)
{
    std::vector<std::pair<std::string, int>> gens;
    for (int i = 1; i <= n; ++i) gens.push_back({fmt::format("x{}", i), 2 * i});
    return polynomial(Flavor::commutative, gens);
}

ScenarioResult scenario_sun(const std::map<std::string, std::string>& params,
                            DegreeWindow tw, int s_max)
{
    const int n = int_param(params, "n", 2);
    if (n < 1) throw InvalidInput("su-n needs n >= 1");
    AlgebraPresentation r = sun_algebra(n);
    ModuleViaHom coeff{identity_hom(r)};

    ScenarioResult res;
    res.name = "su-n";
    res.description = fmt::format(
        "A-infinity self maps of a polynomial algebra on classes in degrees 2..{}; "
        "Hochschild regime, collapse forced by the vanishing line",
        2 * n);
    res.e2.r = 2;
    res.e2.window = {s_max, tw.t_min, tw.t_max};

    if (res.e2.window.contains(0, 0)) {
        auto hp = hom_parametrization(r, r, DegreeWindow(0, 2 * n + std::max(tw.t_max, 2)));
        HomSetDescriptor h;
        h.affine_dim = hp.parameter_count;
        h.constraints_all_zero = hp.constraints_identically_zero;
        h.constraint_count = static_cast<int>(hp.constraints.size());
        res.e2.put(0, 0, Entry::homs(h, "k-algebra self maps: product of (R)_{2i}"));
    }
    mark_t0_column(res.e2);

    const int t_lo = std::max(1, tw.t_min);
    if (t_lo <= tw.t_max) {
        DegreeWindow module_window(0, 2 * n * 2 + tw.t_max + 2);
        for (int t = t_lo; t <= tw.t_max; ++t) {
            auto der = derivations(r, coeff, t, module_window);
            if (der.dim > 0 && res.e2.window.contains(0, t))
                res.e2.put(0, t, Entry::q(der.dim, "derivations Der(R; R shifted by t)"));
        }
        if (s_max >= 1) {
            BigradedDims hh = hochschild(r, coeff, s_max + 1, DegreeWindow(t_lo, tw.t_max));
            for (int s = 1; s <= s_max; ++s)
                for (int t = t_lo; t <= tw.t_max; ++t) {
                    int d = hh.dim(s + 1, t);
                    if (d > 0)
                        res.e2.put(s, t,
                                   Entry::q(d, "Hochschild HH^{s+1} via the Koszul fast path"));
                }
        }
    }
    res.collapse = collapse_bound(res.e2, n - 1);
    return res;
}

ScenarioResult scenario_bu(DegreeWindow tw, int s_max)
{
    std::vector<std::pair<std::string, int>> gens;
    for (int i = 1; 2 * i <= std::max(tw.t_max, 2); ++i)
        gens.push_back({fmt::format("x{}", i), 2 * i});
    AlgebraPresentation r = polynomial(Flavor::commutative, gens);
    ModuleViaHom coeff{identity_hom(r)};

    ScenarioResult res;
    res.name = "bu";
    res.description =
        "E-infinity self maps of a truncated polynomial algebra (generators fitting the "
        "window); smooth, so the page collapses onto the 0-line";
    res.e2.r = 2;
    res.e2.window = {s_max, tw.t_min, tw.t_max};

    if (res.e2.window.contains(0, 0)) {
        auto hp = hom_parametrization(r, r, DegreeWindow(0, tw.t_max + 2));
        HomSetDescriptor h;
        h.affine_dim = hp.parameter_count;
        h.constraints_all_zero = hp.constraints_identically_zero;
        res.e2.put(0, 0, Entry::homs(h, "commutative algebra self maps"));
    }
    mark_t0_column(res.e2);

    const int t_lo = std::max(1, tw.t_min);
    DegreeWindow module_window(0, 2 * std::max(tw.t_max, 2) + 4);
    for (int t = t_lo; t <= tw.t_max; ++t) {
        auto der = derivations(r, coeff, t, module_window);
        if (der.dim > 0 && res.e2.window.contains(0, t))
            res.e2.put(0, t, Entry::q(der.dim, "derivations; higher AQ vanishes (smooth)"));
    }
    res.collapse = collapse_bound(res.e2, 0);
    return res;
}

ScenarioResult scenario_free(const std::map<std::string, std::string>& params,
                             DegreeWindow tw, int s_max)
{
    const int gdeg = int_param(params, "degree", 2);
    if (gdeg == 0) throw DegreeZeroGenerator("free scenario generator degree");
    AlgebraPresentation target = polynomial(Flavor::commutative, {{"x", gdeg}});

    ScenarioResult res;
    res.name = "free";
    res.description = fmt::format(
        "free source on one class in degree {}: the bar resolution splits, the page "
        "collapses onto the 0-line and the edge map is a bijection",
        gdeg);
    res.e2.r = 2;
    res.e2.window = {s_max, tw.t_min, tw.t_max};

    const int span = std::abs(gdeg) + std::abs(tw.t_max) + std::abs(tw.t_min) + 2;
    QuotientBasis tb(target, DegreeWindow(-span, span));
    if (res.e2.window.contains(0, 0)) {
        HomSetDescriptor h;
        h.affine_dim = tb.dim(gdeg);
        res.e2.put(0, 0, Entry::homs(h, "module maps on the generator"));
    }
    const int t_lo = std::max(1, tw.t_min);
    for (int t = t_lo; t <= tw.t_max; ++t) {
        int d = tb.dim(gdeg + t);
        if (d > 0 && res.e2.window.contains(0, t))
            res.e2.put(0, t, Entry::q(d, "free source: E2^{0,t} = Hom_t(M, pi_* Y)"));
    }
    res.collapse = collapse_bound(res.e2, 0);
    res.collapse.justification =
        "free source: the unit section splits the bar resolution, so the page collapses "
        "at E2 onto the 0-line";
    return res;
}

ScenarioResult scenario_hopf(DegreeWindow tw, int s_max)
{
    AlgebraPresentation b = hopf_source();
    ModuleViaHom coeff{hopf_eps()};

    ScenarioResult res;
    res.name = "hopf";
    res.description =
        "E-infinity maps from the cochains of S^2 to the cochains of S^3 with the trivial "
        "base point; the class in E2^{1,1} detects the family induced by the Hopf map";
    res.e2.r = 2;
    res.e2.window = {s_max, tw.t_min, tw.t_max};

    if (res.e2.window.contains(0, 0)) {
        auto hp = hom_parametrization(b, coeff.eps.target, DegreeWindow(-10, 0));
        HomSetDescriptor h;
        h.affine_dim = hp.parameter_count;
        h.constraints_all_zero = hp.constraints_identically_zero;
        res.e2.put(0, 0, Entry::homs(h, "single point: only the base map epsilon"));
    }
    mark_t0_column(res.e2);

    const int t_lo = std::max(1, tw.t_min);
    if (t_lo <= tw.t_max) {
        BigradedDims aq = andre_quillen(b, coeff, s_max, DegreeWindow(t_lo, tw.t_max));
        for (const auto& [st, entry] : aq.at) {
            auto [s, t] = st;
            if (entry.dim == 0 || !res.e2.window.contains(s, t)) continue;
            std::string prov = (s == 1 && t == 1)
                                   ? "paper value: detects an infinite family of E-infinity maps"
                                   : "implementer-derived: cotangent path (figure entries not "
                                     "printed in the text)";
            res.e2.put(s, t, Entry::q(entry.dim, prov));
        }
    }
    res.collapse = collapse_bound(res.e2, 1);
    return res;
}

ScenarioResult scenario_heisenberg(const std::map<std::string, std::string>& params,
                                   DegreeWindow tw, int s_max)
{
    AlgebraPresentation src = heisenberg_presentation();
    auto target = polynomial(Flavor::commutative, {{"u", -2}});
    target.relations.push_back(target.term(1, {"u", "u"}));

    ScenarioResult res;
    res.name = "heisenberg";
    res.description =
        "H-infinity maps out of the cochains of the Heisenberg manifold: E2^{0,0} is the "
        "plane of indecomposables {alpha, beta}; both classes must die, page unnamed, so "
        "the killing differential is user-injectable (param kill=alpha,beta)";
    res.e2.r = 2;
    res.e2.window = {s_max, tw.t_min, tw.t_max};

    auto hp = hom_parametrization(src, target, DegreeWindow(-10, 0));
    HomSetDescriptor h;
    h.affine_dim = hp.parameter_count;
    h.constraints_all_zero = hp.constraints_identically_zero;
    h.constraint_count = static_cast<int>(hp.constraints.size());
    h.named_classes = {"alpha", "beta"};
    h.survives = {{"alpha", true}, {"beta", true}};
    if (res.e2.window.contains(0, 0))
        res.e2.put(0, 0, Entry::homs(h, "Ind_{-2} of the source: Q{alpha, beta}"));

    // everything beyond (0,0) is out of the computed range for this
    // presentation (not lci, oracle reserved for small checks)
    for (int s = 0; s <= res.e2.window.s_max; ++s)
        for (int t = res.e2.window.t_min; t <= res.e2.window.t_max; ++t) {
            if (s == 0 && t == 0) continue;
            if (t < 0) continue;
            res.e2.put(s, t, Entry::marker(Entry::Kind::unidentified,
                                           "not computed: presentation is not lci"));
        }

    auto kill = params.find("kill");
    if (kill != params.end() && !kill->second.empty()) {
        InjectedDifferential d;
        d.r = int_param(params, "kill_r", 2);
        d.s = 0;
        d.t = 0;
        d.is_integral = false;
        std::string names = kill->second;
        size_t pos = 0;
        while (pos < names.size()) {
            size_t comma = names.find(',', pos);
            if (comma == std::string::npos) comma = names.size();
            d.killed_classes.push_back(names.substr(pos, comma - pos));
            pos = comma + 1;
        }
        d.citation = "user-injected: Toda brackets force alpha, beta to die (page not named)";
        res.differentials.push_back(std::move(d));
    }

    res.collapse = collapse_bound(res.e2, std::nullopt);
    return res;
}

ScenarioResult scenario_s_sigma(DegreeWindow tw, int s_max)
{
    ScenarioResult res;
    res.name = "s-sigma";
    res.description =
        "C2-equivariant maps S^0 -> S^sigma: homotopy fixed point chart with coefficients "
        "pi_t of the sign circle, concentrated on the t=1 row";
    res.e2.r = 2;
    res.e2.window = {s_max, tw.t_min, tw.t_max};

    if (res.e2.window.contains(0, 0)) {
        HomSetDescriptor h;  // fixed points of pi_0 = 0: the base map only
        res.e2.put(0, 0, Entry::homs(h, "fixed points of pi_0 S^sigma = 0"));
    }

    if (tw.t_min <= 1 && 1 <= tw.t_max) {
        IntMatrix sign(1, 1);
        sign.set(0, 0, Int(-1));
        auto h = cyclic_group_cohomology(CyclicModule{2, sign}, s_max);
        // unstable region: only t >= s carries entries
        for (int s = 0; s <= std::min(s_max, 1); ++s) {
            if (!res.e2.window.contains(s, 1)) continue;
            if (h[s].is_zero()) continue;
            res.e2.put(s, 1,
                       Entry::grp(h[s], "H^s(C2; pi_1 S^sigma), sign action, periodic "
                                        "resolution"));
        }
    }
    res.collapse.page = 2;
    res.collapse.justification =
        "coefficients concentrated on the t=1 row: every d_r changes t by r-1 > 0";
    return res;
}

ScenarioResult scenario_ku_c2(DegreeWindow tw, int s_max)
{
    ScenarioResult res;
    res.name = "ku-c2";
    res.description =
        "C2-equivariant maps S^0 -> KU with complex conjugation: homotopy fixed point "
        "chart, Bott classes in even degrees, d3(beta^2) = eta^3 injected as a cited "
        "external input";
    res.e2.r = 2;
    res.e2.window = {s_max, tw.t_min, tw.t_max};

    for (int t = tw.t_min; t <= tw.t_max; ++t) {
        if (t % 2 != 0) continue;  // pi_odd KU = 0
        const int sign = (((t / 2) % 2) + 2) % 2 == 0 ? 1 : -1;
        IntMatrix act(1, 1);
        act.set(0, 0, Int(sign));
        auto h = cyclic_group_cohomology(CyclicModule{2, act}, s_max);
        for (int s = 0; s <= s_max; ++s) {
            if (!res.e2.window.contains(s, t)) continue;
            if (s == 0 && t == 0) {
                HomSetDescriptor hs;
                hs.lattice = h[0];
                hs.named_classes = {"1"};
                hs.survives = {{"1", true}};
                res.e2.put(0, 0, Entry::homs(hs, "H^0(C2; pi_0 KU) = Z"));
                continue;
            }
            if (h[s].is_zero()) continue;
            res.e2.put(s, t,
                       Entry::grp(h[s], fmt::format(
                                      "H^{}(C2; pi_{} KU), action (-1)^{}, periodic resolution",
                                      s, t, t / 2)));
        }
    }

    if (res.e2.window.contains(0, 4) && res.e2.window.contains(3, 6)) {
        InjectedDifferential d3;
        d3.r = 3;
        d3.s = 0;
        d3.t = 4;
        d3.zmatrix = IntMatrix(1, 1);
        d3.zmatrix.set(0, 0, Int(1));  // beta^2 maps onto eta^3
        d3.citation =
            "d3(beta^2) = eta^3: comparison with the Adams-Novikov spectral sequence and "
            "eta^4 = 0";
        res.differentials.push_back(std::move(d3));
    }

    res.collapse = collapse_bound(res.e2, std::nullopt);
    return res;
}

}  // namespace

std::vector<std::string> scenario_names()
{
    return {"su-n", "bu", "free", "hopf", "heisenberg", "s-sigma", "ku-c2"};
}

ScenarioResult build_scenario(const std::string& name,
                              const std::map<std::string, std::string>& params,
                              DegreeWindow t_window, int s_max)
{
    if (s_max < 0) throw InvalidInput("s_max must be nonnegative");
    if (name == "su-n") return scenario_sun(params, t_window, s_max);
    if (name == "bu") return scenario_bu(t_window, s_max);
    if (name == "free") return scenario_free(params, t_window, s_max);
    if (name == "hopf") return scenario_hopf(t_window, s_max);
    if (name == "heisenberg") return scenario_heisenberg(params, t_window, s_max);
    if (name == "s-sigma") return scenario_s_sigma(t_window, s_max);
    if (name == "ku-c2") return scenario_ku_c2(t_window, s_max);
    throw InvalidInput("unknown scenario '" + name + "'");
}

OracleComparison oracle_crosscheck(const ScenarioResult& result,
                                   const std::map<std::string, std::string>& params,
                                   int s_cap, int t_cap, int budget)
{
    OracleComparison cmp;

    CotripleData data;
    data.basis_budget = budget;

    if (result.name == "su-n") {
        const int n = int_param(params, "n", 2);
        // associative regime: polynomial ring presented with commutators
        std::vector<std::pair<std::string, int>> gens;
        for (int i = 1; i <= n; ++i) gens.push_back({fmt::format("x{}", i), 2 * i});
        AlgebraPresentation r = polynomial(Flavor::associative, gens);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Poly comm = r.term(1, {r.generators[i].name, r.generators[j].name});
                Poly rev = r.term(-1, {r.generators[j].name, r.generators[i].name});
                comm.terms.insert(comm.terms.end(), rev.terms.begin(), rev.terms.end());
                r.relations.push_back(r.normalize(comm));
            }
        data.flavor = Flavor::associative;
        data.source = r;
        data.target = ModuleViaHom{identity_hom(r)};
        data.window = DegreeWindow(0, t_cap + 2 * n);
    }
    else if (result.name == "hopf") {
        data.flavor = Flavor::commutative;
        data.source = hopf_source();
        data.target = ModuleViaHom{hopf_eps()};
        data.window = DegreeWindow(-(t_cap + 4), 0);
    }
    else if (result.name == "free") {
        const int gdeg = int_param(params, "degree", 2);
        data.flavor = Flavor::commutative;
        data.source = polynomial(Flavor::commutative, {{"m", gdeg}});
        AlgebraHom eps;
        eps.source = data.source;
        eps.target = polynomial(Flavor::commutative, {{"x", gdeg}});
        eps.images["m"] = eps.target.term(1, {"x"});
        data.target = ModuleViaHom{eps};
        data.window = gdeg > 0 ? DegreeWindow(0, t_cap + std::abs(gdeg) + 2)
                               : DegreeWindow(-(t_cap + std::abs(gdeg) + 2), 0);
    }
    else if (result.name == "bu") {
        std::vector<std::pair<std::string, int>> gens;
        for (int i = 1; 2 * i <= std::max(result.e2.window.t_max, 2); ++i)
            gens.push_back({fmt::format("x{}", i), 2 * i});
        data.flavor = Flavor::commutative;
        data.source = polynomial(Flavor::commutative, gens);
        data.target = ModuleViaHom{identity_hom(data.source)};
        data.window = DegreeWindow(0, t_cap + 4);
    }
    else {
        cmp.detail = "oracle cross-check not applicable: no algebraic T_alg regime";
        return cmp;
    }

    cmp.applicable = true;
    data.s_max = s_cap + 1;

    for (int t = 1; t <= t_cap; ++t) {
        Complex m;
        try {
            m = cotriple_moore_complex(data, t);
        }
        catch (const OracleTooLarge& e) {
            cmp.detail += fmt::format("t={}: {}; ", t, e.what());
            continue;
        }
        for (int s = 0; s <= s_cap; ++s) {
            int oracle = complex_cohomology(m, s).dim(t);
            const Entry* e = result.e2.find(s, t);
            int chart = 0;
            if (e && e->kind == Entry::Kind::q_dim) chart = e->qdim;
            if (e && e->is_marker()) continue;
            if (oracle != chart) {
                cmp.match = false;
                cmp.detail += fmt::format("mismatch at (s={}, t={}): oracle {}, chart {}; ", s,
                                          t, oracle, chart);
            }
        }
    }
    if (cmp.match && cmp.detail.empty())
        cmp.detail = fmt::format("oracle agrees on s<={}, 1<=t<={}", s_cap, t_cap);
    return cmp;
}

}  // namespace e2
