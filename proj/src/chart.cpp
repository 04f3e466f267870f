#include "e2/chart.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace e2 {

namespace {

using Json = nlohmann::ordered_json;

std::string cell_glyph(const Entry* e)
{
    if (!e) return ".";
    switch (e->kind) {
        case Entry::Kind::q_dim:
            if (e->qdim == 0) return ".";
            return e->qdim == 1 ? "Q" : fmt::format("Q^{}", e->qdim);
        case Entry::Kind::group: return e->group.is_zero() ? "." : e->group.to_string();
        case Entry::Kind::homset: {
            const auto& h = e->homset;
            if (h.lattice) return "[" + h.lattice->to_string() + "]";
            if (h.single_point()) return "*";
            if (h.constraints_all_zero) return fmt::format("A^{}", h.affine_dim);
            return fmt::format("A^{}!", h.affine_dim);
        }
        case Entry::Kind::unidentified: return "?";
        case Entry::Kind::window_limited_marker: return "~";
    }
    return "?";
}

}  // namespace

std::string render_ascii(const Page& p)
{
    std::ostringstream out;
    out << fmt::format("E_{} page, s <= {}, t in [{}, {}] ({})\n", p.r, p.window.s_max,
                       p.window.t_min, p.window.t_max, p.caveat);

    const int stem_lo = p.window.t_min - p.window.s_max;
    const int stem_hi = p.window.t_max;

    int width = 3;
    for (const auto& [st, e] : p.entries)
        width = std::max(width, static_cast<int>(cell_glyph(&e).size()) + 1);

    for (int s = p.window.s_max; s >= 0; --s) {
        out << fmt::format("{:>3} |", s);
        for (int stem = stem_lo; stem <= stem_hi; ++stem) {
            const int t = stem + s;
            std::string glyph =
                p.window.contains(s, t) ? cell_glyph(p.find(s, t)) : std::string(" ");
            out << fmt::format("{:>{}}", glyph, width);
        }
        out << "\n";
    }
    out << "    +" << std::string(width * (stem_hi - stem_lo + 1), '-') << "\n";
    out << "     ";
    for (int stem = stem_lo; stem <= stem_hi; ++stem) out << fmt::format("{:>{}}", stem, width);
    out << "  (t-s)\n";
    return out.str();
}

std::string render_svg(const Page& p, const std::vector<InjectedDifferential>& diffs)
{
    const int stem_lo = p.window.t_min - p.window.s_max;
    const int stem_hi = p.window.t_max;
    const int cell = 48, margin = 56;
    const int cols = stem_hi - stem_lo + 1, rows = p.window.s_max + 1;
    const int w = margin * 2 + cols * cell, h = margin * 2 + rows * cell;

    auto cx = [&](int stem) { return margin + (stem - stem_lo) * cell + cell / 2; };
    auto cy = [&](int s) { return h - margin - s * cell - cell / 2; };

    std::ostringstream out;
    out << fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
        "viewBox=\"0 0 {} {}\">\n",
        w, h, w, h);
    out << "<defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" "
           "refY=\"3\" orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\"/></marker></defs>\n";
    out << fmt::format("<text x=\"{}\" y=\"18\" font-size=\"13\">E_{} page ({})</text>\n",
                       margin, p.r, p.caveat);

    // grid
    for (int c = 0; c <= cols; ++c)
        out << fmt::format(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#ccc\"/>\n",
            margin + c * cell, margin, h - margin);
    for (int r = 0; r <= rows; ++r)
        out << fmt::format(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#ccc\"/>\n", margin,
            margin + r * cell, w - margin);

    // axis labels
    for (int stem = stem_lo; stem <= stem_hi; ++stem)
        out << fmt::format(
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
            cx(stem), h - margin + 16, stem);
    for (int s = 0; s <= p.window.s_max; ++s)
        out << fmt::format(
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\">{}</text>\n",
            margin - 8, cy(s) + 4, s);

    for (const auto& [st, e] : p.entries) {
        auto [s, t] = st;
        std::string glyph = cell_glyph(&e);
        if (glyph == ".") continue;
        out << fmt::format(
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
            cx(t - s), cy(s) + 4, glyph);
    }

    for (const auto& d : diffs) {
        auto [ts, tt] = d.target();
        out << fmt::format(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#d22\" "
            "marker-end=\"url(#arrow)\"/>\n",
            cx(d.t - d.s), cy(d.s) - 8, cx(tt - ts), cy(ts) + 12);
        out << fmt::format(
            "<text x=\"{}\" y=\"{}\" font-size=\"10\" fill=\"#d22\">d{}</text>\n",
            (cx(d.t - d.s) + cx(tt - ts)) / 2 + 4, (cy(d.s) + cy(ts)) / 2, d.r);
    }
    out << "</svg>\n";
    return out.str();
}

namespace {

Json group_to_json(const AbelianGroupDescriptor& g)
{
    Json j;
    j["free_rank"] = g.free_rank;
    Json tors = Json::array();
    for (const auto& t : g.torsion) {
        if (!t.fits_slong_p()) throw InvalidInput("torsion too large to serialize");
        tors.push_back(t.get_si());
    }
    j["torsion"] = std::move(tors);
    return j;
}

AbelianGroupDescriptor group_from_json(const Json& j)
{
    AbelianGroupDescriptor g;
    g.free_rank = j.at("free_rank").get<int>();
    for (const auto& t : j.at("torsion")) g.torsion.push_back(Int(t.get<long>()));
    return g;
}

Json homset_to_json(const HomSetDescriptor& h)
{
    Json j;
    j["affine_dim"] = h.affine_dim;
    j["constraints_all_zero"] = h.constraints_all_zero;
    j["constraint_count"] = h.constraint_count;
    if (h.lattice) j["lattice"] = group_to_json(*h.lattice);
    j["named_classes"] = h.named_classes;
    Json surv = Json::object();
    for (const auto& [k, v] : h.survives) surv[k] = v;
    j["survives"] = std::move(surv);
    return j;
}

HomSetDescriptor homset_from_json(const Json& j)
{
    HomSetDescriptor h;
    h.affine_dim = j.at("affine_dim").get<int>();
    h.constraints_all_zero = j.at("constraints_all_zero").get<bool>();
    h.constraint_count = j.at("constraint_count").get<int>();
    if (j.contains("lattice")) h.lattice = group_from_json(j.at("lattice"));
    for (const auto& n : j.at("named_classes")) h.named_classes.push_back(n.get<std::string>());
    for (const auto& [k, v] : j.at("survives").items()) h.survives[k] = v.get<bool>();
    return h;
}

}  // namespace

std::string render_json(const Page& p)
{
    Json j;
    j["r"] = p.r;
    j["window"] = {{"s_max", p.window.s_max}, {"t_min", p.window.t_min},
                   {"t_max", p.window.t_max}};
    j["caveat"] = p.caveat;
    Json entries = Json::array();
    for (const auto& [st, e] : p.entries) {  // std::map: already sorted by (s, t)
        Json je;
        je["s"] = st.first;
        je["t"] = st.second;
        switch (e.kind) {
            case Entry::Kind::q_dim:
                je["kind"] = "q";
                je["dim"] = e.qdim;
                break;
            case Entry::Kind::group:
                je["kind"] = "group";
                je["group"] = group_to_json(e.group);
                break;
            case Entry::Kind::homset:
                je["kind"] = "homset";
                je["homset"] = homset_to_json(e.homset);
                break;
            case Entry::Kind::unidentified: je["kind"] = "unidentified"; break;
            case Entry::Kind::window_limited_marker: je["kind"] = "window_limited"; break;
        }
        je["provenance"] = e.provenance;
        je["window_limited"] = e.window_limited;
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    return j.dump(2) + "\n";
}

Page parse_page_json(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    }
    catch (const std::exception& e) {
        throw InvalidInput(std::string("page JSON: ") + e.what());
    }
    Page p;
    p.r = j.at("r").get<int>();
    p.window = {j.at("window").at("s_max").get<int>(), j.at("window").at("t_min").get<int>(),
                j.at("window").at("t_max").get<int>()};
    p.caveat = j.at("caveat").get<std::string>();
    for (const auto& je : j.at("entries")) {
        Entry e;
        const std::string kind = je.at("kind").get<std::string>();
        if (kind == "q") {
            e.kind = Entry::Kind::q_dim;
            e.qdim = je.at("dim").get<int>();
        }
        else if (kind == "group") {
            e.kind = Entry::Kind::group;
            e.group = group_from_json(je.at("group"));
        }
        else if (kind == "homset") {
            e.kind = Entry::Kind::homset;
            e.homset = homset_from_json(je.at("homset"));
        }
        else if (kind == "unidentified")
            e.kind = Entry::Kind::unidentified;
        else if (kind == "window_limited")
            e.kind = Entry::Kind::window_limited_marker;
        else
            throw InvalidInput("unknown entry kind '" + kind + "'");
        e.provenance = je.at("provenance").get<std::string>();
        e.window_limited = je.at("window_limited").get<bool>();
        p.put(je.at("s").get<int>(), je.at("t").get<int>(), std::move(e));
    }
    return p;
}

std::string render_chart(const Page& p, const std::vector<InjectedDifferential>& diffs,
                         const std::string& format)
{
    if (format == "ascii") return render_ascii(p);
    if (format == "svg") return render_svg(p, diffs);
    if (format == "json") return render_json(p);
    throw InvalidInput("unknown chart format '" + format + "'");
}

}  // namespace e2
