#include "e2/specseq.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>

namespace e2 {

Entry Entry::q(int dim, std::string prov)
{
    Entry e;
    e.kind = Kind::q_dim;
    e.qdim = dim;
    e.provenance = std::move(prov);
    return e;
}

Entry Entry::grp(AbelianGroupDescriptor g, std::string prov)
{
    Entry e;
    e.kind = Kind::group;
    e.group = std::move(g);
    e.provenance = std::move(prov);
    return e;
}

Entry Entry::homs(HomSetDescriptor h, std::string prov)
{
    Entry e;
    e.kind = Kind::homset;
    e.homset = std::move(h);
    e.provenance = std::move(prov);
    return e;
}

Entry Entry::marker(Kind k, std::string prov)
{
    Entry e;
    e.kind = k;
    e.provenance = std::move(prov);
    return e;
}

bool Entry::is_zero() const
{
    switch (kind) {
        case Kind::q_dim: return qdim == 0;
        case Kind::group: return group.is_zero();
        case Kind::homset: return false;  // a set with a base point is never "zero"
        default: return false;
    }
}

std::string Entry::value_string() const
{
    switch (kind) {
        case Kind::q_dim:
            if (qdim == 0) return "0";
            return qdim == 1 ? "Q" : fmt::format("Q^{}", qdim);
        case Kind::group: return group.to_string();
        case Kind::homset: {
            if (homset.lattice) return "[" + homset.lattice->to_string() + "]-set";
            if (homset.single_point()) return "point";
            if (homset.constraints_all_zero)
                return fmt::format("affine^{}", homset.affine_dim);
            return fmt::format("{} params, {} constraints", homset.affine_dim,
                               homset.constraint_count);
        }
        case Kind::unidentified: return "?";
        case Kind::window_limited_marker: return "~";
    }
    return "?";
}

bool Entry::operator==(const Entry& o) const
{
    if (kind != o.kind || window_limited != o.window_limited || provenance != o.provenance)
        return false;
    switch (kind) {
        case Kind::q_dim: return qdim == o.qdim;
        case Kind::group: return group == o.group;
        case Kind::homset: return homset == o.homset;
        default: return true;
    }
}

void Page::put(int s, int t, Entry e)
{
    if (s < 0) throw InvalidInput("page entries live at s >= 0");
    if (!window.contains(s, t)) throw InvalidInput("page entry outside window");
    entries[{s, t}] = std::move(e);
}

namespace {

// presentation of a finitely generated abelian group: Z^gens / relations
struct GroupPresentation {
    int gens = 0;
    IntMatrix relations;  // gens x k

    static GroupPresentation of(const AbelianGroupDescriptor& d)
    {
        GroupPresentation p;
        p.gens = d.generator_count();
        p.relations = IntMatrix(p.gens, static_cast<int>(d.torsion.size()));
        for (size_t i = 0; i < d.torsion.size(); ++i)
            p.relations.set(d.free_rank + static_cast<int>(i), static_cast<int>(i), d.torsion[i]);
        return p;
    }
};

// columns of m must lie in the span of the relation columns
bool columns_in_span(const IntMatrix& relations, const IntMatrix& m)
{
    if (m.is_zero()) return true;
    if (relations.cols() == 0) return false;
    IntMatrix basis = column_space_basis(relations);
    try {
        solve_in_basis(basis, m);
        return true;
    }
    catch (const InvalidInput&) {
        return false;
    }
}

// ker(out)/im(in) for maps of presented groups; either map may be absent
AbelianGroupDescriptor group_subquotient(const GroupPresentation& g,
                                         const std::optional<IntMatrix>& d_in,
                                         const GroupPresentation* out_target,
                                         const std::optional<IntMatrix>& d_out)
{
    // L = preimage of the target relation span under d_out
    IntMatrix kernel_basis(g.gens, g.gens);
    if (d_out && out_target) {
        const IntMatrix& d = *d_out;
        IntMatrix block(d.rows(), g.gens + out_target->relations.cols());
        for (const auto& [rc, v] : d.nonzeros()) block.set(rc.first, rc.second, v);
        for (const auto& [rc, v] : out_target->relations.nonzeros())
            block.set(rc.first, g.gens + rc.second, v);
        IntMatrix full_kernel = integer_kernel_basis(block);
        IntMatrix proj(g.gens, full_kernel.cols());
        for (const auto& [rc, v] : full_kernel.nonzeros())
            if (rc.first < g.gens) proj.set(rc.first, rc.second, v);
        // include the source relations: they always map into the span
        IntMatrix gen(g.gens, proj.cols() + g.relations.cols());
        for (const auto& [rc, v] : proj.nonzeros()) gen.set(rc.first, rc.second, v);
        for (const auto& [rc, v] : g.relations.nonzeros())
            gen.set(rc.first, proj.cols() + rc.second, v);
        kernel_basis = column_space_basis(gen);
    }
    else {
        kernel_basis = IntMatrix::identity(g.gens);
    }

    // quotient by source relations plus the incoming image
    int extra = d_in ? d_in->cols() : 0;
    IntMatrix mods(g.gens, g.relations.cols() + extra);
    for (const auto& [rc, v] : g.relations.nonzeros()) mods.set(rc.first, rc.second, v);
    if (d_in)
        for (const auto& [rc, v] : d_in->nonzeros())
            mods.set(rc.first, g.relations.cols() + rc.second, v);

    IntMatrix coords = solve_in_basis(kernel_basis, mods);
    return quotient_group(kernel_basis.cols(), coords);
}

void check_monotone(const Entry& before, const Entry& after, int s, int t)
{
    auto fail = [&] {
        throw Error("SubquotientMonotonicity",
                    fmt::format("entry at ({},{}) grew across a page turn", s, t));
    };
    if (before.kind == Entry::Kind::q_dim && after.kind == Entry::Kind::q_dim) {
        if (after.qdim > before.qdim) fail();
    }
    if (before.kind == Entry::Kind::group && after.kind == Entry::Kind::group) {
        if (after.group.free_rank > before.group.free_rank) fail();
        if (after.group.generator_count() > before.group.generator_count()) fail();
    }
}

}  // namespace

Page turn_page(const Page& p, const std::vector<InjectedDifferential>& diffs)
{
    // incoming/outgoing differentials per lattice point
    std::map<std::pair<int, int>, const InjectedDifferential*> out_at, in_at;
    for (const auto& d : diffs) {
        if (d.r != p.r)
            throw BidegreeMismatch(fmt::format("differential on page {} injected into page {}",
                                               d.r, p.r));
        auto [ts, tt] = d.target();
        if (!p.window.contains(d.s, d.t) || !p.window.contains(ts, tt))
            throw BidegreeMismatch("differential endpoint outside the page window");
        // a pure class-killing differential records set-level survival on
        // its source and leaves the target entry alone
        const bool pure_kill =
            !d.killed_classes.empty() && d.zmatrix.is_zero() && d.qmatrix.is_zero();
        const Entry* src = p.find(d.s, d.t);
        const Entry* dst = p.find(ts, tt);
        if ((src && src->is_marker()) || (!pure_kill && dst && dst->is_marker()))
            throw MarkerInDifferentialPath(
                fmt::format("differential touches a marker at ({},{})->({},{})", d.s, d.t, ts,
                            tt));
        if (out_at.count({d.s, d.t}) || (!pure_kill && in_at.count({ts, tt})))
            throw InvalidInput("at most one injected differential per entry per page");
        out_at[{d.s, d.t}] = &d;
        if (!pure_kill) in_at[{ts, tt}] = &d;
    }

    Page next;
    next.r = p.r + 1;
    next.window = p.window;
    next.caveat = p.caveat;

    for (const auto& [st, entry] : p.entries) {
        auto [s, t] = st;
        const InjectedDifferential* din = nullptr;
        const InjectedDifferential* dout = nullptr;
        if (auto it = in_at.find(st); it != in_at.end()) din = it->second;
        if (auto it = out_at.find(st); it != out_at.end()) dout = it->second;

        Entry e = entry;
        if (entry.kind == Entry::Kind::homset) {
            // set-level data: a differential off (0,0) kills named classes
            if (dout) {
                for (const auto& name : dout->killed_classes) {
                    if (!e.homset.survives.count(name))
                        throw InvalidInput("killed class '" + name + "' is not named at (0,0)");
                    e.homset.survives[name] = false;
                }
                e.provenance += fmt::format("; d{} support recorded ({})", p.r, dout->citation);
            }
        }
        else if (entry.kind == Entry::Kind::q_dim && (din || dout)) {
            RatMatrix min(entry.qdim, 0), mout(0, entry.qdim);
            if (din) {
                const Entry* src = p.find(din->s, din->t);
                min = din->qmatrix;
                if (min.rows() != entry.qdim || (src && min.cols() != src->qdim))
                    throw InvalidInput("differential matrix shape mismatch");
            }
            if (dout) {
                auto [ts, tt] = dout->target();
                const Entry* dst = p.find(ts, tt);
                mout = dout->qmatrix;
                if (mout.cols() != entry.qdim || (dst && mout.rows() != dst->qdim))
                    throw InvalidInput("differential matrix shape mismatch");
            }
            if (din && dout && !(mout * min).is_zero())
                throw CompositionNotZero("injected differentials do not compose to zero");
            e.qdim = entry.qdim - rank_of(min) - rank_of(mout);
            e.provenance += fmt::format("; subquotient at page {}", p.r);
        }
        else if (entry.kind == Entry::Kind::group && (din || dout)) {
            GroupPresentation g = GroupPresentation::of(entry.group);
            std::optional<IntMatrix> zin, zout;
            GroupPresentation tgt;
            if (din) {
                const Entry* src = p.find(din->s, din->t);
                if (!src || src->kind != Entry::Kind::group)
                    throw InvalidInput("group differential needs a group source");
                zin = din->zmatrix;
                if (zin->rows() != g.gens ||
                    zin->cols() != GroupPresentation::of(src->group).gens)
                    throw InvalidInput("differential matrix shape mismatch");
            }
            if (dout) {
                auto [ts, tt] = dout->target();
                const Entry* dst = p.find(ts, tt);
                if (!dst || dst->kind != Entry::Kind::group)
                    throw InvalidInput("group differential needs a group target");
                tgt = GroupPresentation::of(dst->group);
                zout = dout->zmatrix;
                if (zout->cols() != g.gens || zout->rows() != tgt.gens)
                    throw InvalidInput("differential matrix shape mismatch");
                // well-defined on the presentation
                if (!g.relations.is_zero() && !columns_in_span(tgt.relations, *zout * g.relations))
                    throw InvalidInput("differential not well-defined on torsion");
            }
            if (zin && zout && !columns_in_span(tgt.relations, *zout * *zin))
                throw CompositionNotZero("injected differentials do not compose to zero");
            e.group = group_subquotient(g, zin, dout ? &tgt : nullptr, zout);
            e.provenance += fmt::format("; subquotient at page {}", p.r);
        }

        check_monotone(entry, e, s, t);

        // flag entries whose potential differentials leave the window
        auto [os, ot] = std::pair<int, int>{s + p.r, t + p.r - 1};
        auto [is, it] = std::pair<int, int>{s - p.r, t - p.r + 1};
        if (!p.window.contains(os, ot) || (is >= 0 && !p.window.contains(is, it)))
            e.window_limited = true;

        next.put(s, t, std::move(e));
    }
    return next;
}

CollapseBound collapse_bound(const Page& p, std::optional<int> structural_vanishing_line)
{
    CollapseBound out;
    if (!structural_vanishing_line) {
        out.justification = "window-limited, no bound: only truncated data available";
        out.window_limited = true;
        return out;
    }
    const int line = *structural_vanishing_line;
    out.page = std::max(2, line + 1);
    out.justification = fmt::format(
        "entries vanish above line s={}; any d_r with r > {} has source or target outside "
        "lines 0..{}, so E_{} = E_infinity",
        line, line, line, *out.page);
    (void)p;
    return out;
}

ObstructionReport obstruction_report(const Page& p2,
                                     const std::vector<InjectedDifferential>& injected)
{
    ObstructionReport rep;

    int r_max = p2.r;
    for (const auto& d : injected) r_max = std::max(r_max, d.r + 1);

    Page cur = p2;
    while (cur.r < r_max) {
        std::vector<InjectedDifferential> now;
        for (const auto& d : injected)
            if (d.r == cur.r) now.push_back(d);
        cur = turn_page(cur, now);
    }

    // (a) surjectivity of the forgetful map: trivial differentials on E^{0,0}
    for (const auto& d : injected) {
        if (d.s == 0 && d.t == 0 &&
            (!d.killed_classes.empty() || !d.zmatrix.is_zero() || !d.qmatrix.is_zero())) {
            rep.forgetful_surjective = false;
            rep.surjectivity_note = fmt::format(
                "d{} is nonzero on E^(0,0) ({}), so some homotopy T-algebra maps fail to lift",
                d.r, d.citation);
        }
    }
    if (rep.forgetful_surjective)
        rep.surjectivity_note = "no injected differential leaves (0,0) within the window";

    // (b) injectivity: E_inf^{t,t} = 0 for t > 0, window caveats recorded
    const int diag_max = std::min(cur.window.s_max, cur.window.t_max);
    for (int t = 1; t <= diag_max; ++t) {
        const Entry* e = cur.find(t, t);
        if (!e || e->is_zero()) continue;
        if (e->is_marker()) {
            rep.injectivity_window_limited = true;
            continue;
        }
        rep.forgetful_injective = false;
        rep.einf_diagonal.push_back({t, e->value_string()});
    }
    if (cur.window.t_max > cur.window.s_max) rep.injectivity_window_limited = true;

    // (c) per-class survival on E^{0,0}
    if (const Entry* e = cur.find(0, 0); e && e->kind == Entry::Kind::homset)
        rep.class_survival = e->homset.survives;

    return rep;
}

std::vector<AbutmentPiece> abutment_diagonal(const Page& p_inf, int stem)
{
    std::vector<AbutmentPiece> out;
    for (int s = 0; s <= p_inf.window.s_max; ++s) {
        const int t = s + stem;
        const Entry* e = p_inf.find(s, t);
        if (!e || e->is_zero()) continue;
        if (s == 0 && t == 0) continue;  // the hom-set spot is not a group piece
        out.push_back({s, t, e->value_string()});
    }
    return out;
}

}  // namespace e2
