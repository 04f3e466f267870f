#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "e2/chart.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace e2;
using Json = nlohmann::json;

namespace {

struct Options {
    std::string scenario;
    std::string spec_path;
    std::string window = "0:6";
    int smax = 3;
    std::string format = "ascii";
    std::string out;
    bool oracle = false;
    std::vector<std::string> params;
};

DegreeWindow parse_window(const std::string& text)
{
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("--window", "expected a:b");
    try {
        int lo = std::stoi(text.substr(0, colon));
        int hi = std::stoi(text.substr(colon + 1));
        return DegreeWindow(lo, hi);
    }
    catch (const std::invalid_argument&) {
        throw CLI::ValidationError("--window", "expected integers a:b");
    }
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& kvs)
{
    std::map<std::string, std::string> out;
    for (const auto& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--param", "expected k=v");
        out[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return out;
}

Poly poly_from_json(const AlgebraPresentation& a, const Json& jp)
{
    Poly raw;
    for (const auto& jt : jp.at("terms")) {
        Rat coeff = jt.at("coeff").is_string()
                        ? rat_from_string(jt.at("coeff").get<std::string>())
                        : Rat(jt.at("coeff").get<long>());
        std::vector<int> word;
        for (const auto& name : jt.at("monomial")) word.push_back(a.gen_index(name));
        raw.terms.push_back({coeff, Monomial{word}});
    }
    return a.normalize(raw);
}

AlgebraPresentation presentation_from_json(const Json& j)
{
    AlgebraPresentation a;
    const std::string flavor = j.at("flavor").get<std::string>();
    if (flavor == "commutative")
        a.flavor = Flavor::commutative;
    else if (flavor == "associative")
        a.flavor = Flavor::associative;
    else
        throw InvalidInput("flavor must be commutative or associative");
    for (const auto& jg : j.at("generators"))
        a.generators.push_back({jg.at("name").get<std::string>(), jg.at("degree").get<int>()});
    if (a.generators.empty()) throw InvalidInput("presentation has no generators");
    if (j.contains("relations"))
        for (const auto& jr : j.at("relations")) a.relations.push_back(poly_from_json(a, jr));
    a.validate();
    return a;
}

struct CustomSpec {
    AlgebraPresentation source, target;
    AlgebraHom eps;
    DegreeWindow window{0, 6};
    int smax = 3;
    std::vector<InjectedDifferential> differentials;
};

CustomSpec load_custom_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open spec file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    }
    catch (const std::exception& e) {
        throw InvalidInput(std::string("spec JSON: ") + e.what());
    }

    CustomSpec spec;
    spec.source = presentation_from_json(j);
    spec.target = j.contains("target") ? presentation_from_json(j.at("target")) : spec.source;
    spec.eps.source = spec.source;
    spec.eps.target = spec.target;
    if (j.contains("epsilon")) {
        for (const auto& [name, jp] : j.at("epsilon").at("images").items())
            spec.eps.images[name] = jp.is_array() && jp.empty()
                                        ? Poly{}
                                        : poly_from_json(spec.target, Json{{"terms", jp}});
    }
    else {
        for (const auto& g : spec.source.generators) spec.eps.images[g.name] = Poly{};
    }
    spec.eps.is_basepoint = true;
    if (j.contains("window"))
        spec.window = DegreeWindow(j.at("window").at("tmin").get<int>(),
                                   j.at("window").at("tmax").get<int>());
    if (j.contains("smax")) spec.smax = j.at("smax").get<int>();
    if (j.contains("differentials")) {
        for (const auto& jd : j.at("differentials")) {
            InjectedDifferential d;
            d.r = jd.at("r").get<int>();
            d.s = jd.at("source").at(0).get<int>();
            d.t = jd.at("source").at(1).get<int>();
            d.is_integral = false;
            const auto& rows = jd.at("matrix");
            int nr = static_cast<int>(rows.size());
            int nc = nr > 0 ? static_cast<int>(rows[0].size()) : 0;
            RatMatrix m(nr, nc);
            for (int i = 0; i < nr; ++i)
                for (int c = 0; c < nc; ++c) {
                    const auto& v = rows[i][c];
                    m.set(i, c, v.is_string() ? rat_from_string(v.get<std::string>())
                                              : Rat(v.get<long>()));
                }
            d.qmatrix = std::move(m);
            if (jd.contains("citation")) d.citation = jd.at("citation").get<std::string>();
            spec.differentials.push_back(std::move(d));
        }
    }
    return spec;
}

Page build_custom_page(const CustomSpec& spec)
{
    Page page;
    page.r = 2;
    page.window = {spec.smax, spec.window.t_min, spec.window.t_max};

    HomCheckResult hc = check_hom(spec.eps, spec.window);
    if (hc.status == HomStatus::invalid)
        throw InvalidInput("epsilon violates relation " + hc.witness);

    if (page.window.contains(0, 0)) {
        int span = 0;
        for (const auto& g : spec.source.generators) span += std::abs(g.degree);
        DegreeWindow hw = spec.source.connectivity_sign() > 0
                              ? DegreeWindow(0, span + std::abs(spec.window.t_max) + 2)
                              : DegreeWindow(-(span + std::abs(spec.window.t_max) + 2), 0);
        auto hp = hom_parametrization(spec.source, spec.target, hw);
        HomSetDescriptor h;
        h.affine_dim = hp.parameter_count;
        h.constraints_all_zero = hp.constraints_identically_zero;
        h.constraint_count = static_cast<int>(hp.constraints.size());
        page.put(0, 0, Entry::homs(h, "hom parametrization"));
    }
    if (page.window.contains(1, 0))
        for (int s = 1; s <= page.window.s_max; ++s)
            page.put(s, 0, Entry::marker(Entry::Kind::unidentified,
                                         "no algebraic identification of E2^{s,0} for s>0"));

    const int t_lo = std::max(1, spec.window.t_min);
    if (t_lo <= spec.window.t_max) {
        DegreeWindow shifts(t_lo, spec.window.t_max);
        ModuleViaHom coeff{spec.eps};
        BigradedDims dims;
        std::string what;
        if (spec.source.flavor == Flavor::commutative) {
            dims = andre_quillen(spec.source, coeff, spec.smax, shifts);
            what = "AQ";
            for (const auto& [st, e] : dims.at) {
                auto [s, t] = st;
                if (e.dim > 0 && page.window.contains(s, t))
                    page.put(s, t, Entry::q(e.dim, e.provenance));
            }
        }
        else {
            dims = hochschild(spec.source, coeff, spec.smax + 1, shifts);
            what = "HH";
            // E2^{0,t} = derivations, E2^{s,t} = HH^{s+1} for s >= 1
            for (int t = t_lo; t <= spec.window.t_max; ++t) {
                int span = 0;
                for (const auto& g : spec.source.generators) span += std::abs(g.degree);
                DegreeWindow mw = spec.source.connectivity_sign() > 0
                                      ? DegreeWindow(0, 2 * span + spec.window.t_max + 2)
                                      : DegreeWindow(-(2 * span + std::abs(spec.window.t_min) +
                                                       std::abs(spec.window.t_max) + 2),
                                                     0);
                auto der = derivations(spec.source, coeff, t, mw);
                if (der.dim > 0 && page.window.contains(0, t))
                    page.put(0, t, Entry::q(der.dim, "derivations"));
            }
            for (int s = 1; s <= spec.smax; ++s)
                for (int t = t_lo; t <= spec.window.t_max; ++t) {
                    int d = dims.dim(s + 1, t);
                    if (d > 0 && page.window.contains(s, t))
                        page.put(s, t, Entry::q(d, "Hochschild HH^{s+1}"));
                }
        }
        (void)what;
    }
    return page;
}

int run(const Options& opt)
{
    DegreeWindow tw = parse_window(opt.window);
    auto params = parse_params(opt.params);

    Page page;
    std::vector<InjectedDifferential> diffs;
    std::string description;
    std::string collapse_note;

    if (!opt.scenario.empty()) {
        ScenarioResult res = build_scenario(opt.scenario, params, tw, opt.smax);
        page = res.e2;
        diffs = res.differentials;
        description = res.description;
        collapse_note = res.collapse.page
                            ? fmt::format("collapse bound: E_{} ({})", *res.collapse.page,
                                          res.collapse.justification)
                            : fmt::format("collapse bound: {}", res.collapse.justification);
        if (opt.oracle) {
            auto cmp = oracle_crosscheck(res, params, std::min(opt.smax, 2),
                                         std::min(tw.t_max, 8), 20000);
            if (cmp.applicable && !cmp.match) {
                std::cerr << "OracleMismatch: " << cmp.detail << "\n";
                return 2;
            }
            std::cerr << "oracle cross-check: "
                      << (cmp.applicable ? cmp.detail : cmp.detail + " (skipped)") << "\n";
        }
    }
    else {
        CustomSpec spec = load_custom_spec(opt.spec_path);
        if (opt.window != "0:6") spec.window = tw;
        if (opt.smax != 3) spec.smax = opt.smax;
        page = build_custom_page(spec);
        diffs = spec.differentials;
        description = "custom presentation from " + opt.spec_path;
        if (opt.oracle) {
            CotripleData data;
            data.flavor = spec.source.flavor;
            data.source = spec.source;
            data.target = ModuleViaHom{spec.eps};
            data.s_max = std::min(spec.smax, 2) + 1;
            int span = 0;
            for (const auto& g : spec.source.generators) span += std::abs(g.degree);
            const int reach = std::min(spec.window.t_max, 8) + span + 2;
            data.window = spec.source.connectivity_sign() > 0 ? DegreeWindow(0, reach)
                                                              : DegreeWindow(-reach, 0);
            for (int t = std::max(1, spec.window.t_min); t <= std::min(spec.window.t_max, 8);
                 ++t) {
                Complex m = cotriple_moore_complex(data, t);
                for (int s = 0; s <= std::min(spec.smax, 2); ++s) {
                    int oracle = complex_cohomology(m, s).dim(t);
                    const Entry* e = page.find(s, t);
                    int chart = e && e->kind == Entry::Kind::q_dim ? e->qdim : 0;
                    if (e && e->is_marker()) continue;
                    if (oracle != chart) {
                        std::cerr << fmt::format(
                            "OracleMismatch: (s={}, t={}) oracle {} vs chart {}\n", s, t, oracle,
                            chart);
                        return 2;
                    }
                }
            }
            std::cerr << "oracle cross-check: agrees\n";
        }
    }

    std::cerr << description << "\n";
    if (!collapse_note.empty()) std::cerr << collapse_note << "\n";

    std::string rendered = render_chart(page, diffs, opt.format);
    if (opt.out.empty()) {
        std::cout << rendered;
    }
    else {
        std::ofstream out(opt.out);
        if (!out) throw InvalidInput("cannot write to '" + opt.out + "'");
        out << rendered;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact E2-page calculator for the T-algebra spectral sequence"};
    app.require_subcommand(1);

    Options opt;

    CLI::App* sc = app.add_subcommand("scenario", "run a built-in worked example");
    sc->add_option("name", opt.scenario, "one of: su-n, bu, free, hopf, heisenberg, s-sigma, ku-c2")
        ->required();

    CLI::App* cu = app.add_subcommand("custom", "run a presentation from a JSON spec file");
    cu->add_option("--spec", opt.spec_path, "path to the JSON spec")->required();

    for (CLI::App* cmd : {sc, cu}) {
        cmd->add_option("--window", opt.window, "internal degree window a:b (default 0:6)");
        cmd->add_option("--smax", opt.smax, "maximal cohomological degree (default 3)");
        cmd->add_option("--format", opt.format, "ascii|svg|json (default ascii)")
            ->check(CLI::IsMember({"ascii", "svg", "json"}));
        cmd->add_option("--out", opt.out, "write the chart to this path instead of stdout");
        cmd->add_flag("--oracle", opt.oracle, "force the cotriple oracle cross-check");
        cmd->add_option("--param", opt.params, "scenario parameter k=v (repeatable)");
    }

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        return run(opt);
    }
    catch (const InvalidInput& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    catch (const InvalidPresentation& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    catch (const DegreeZeroGenerator& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
