#include "e2/cohomology.hpp"

#include <fmt/format.h>

namespace e2 {

namespace {

int parity(long long n) { return static_cast<int>(((n % 2) + 2) % 2); }

// ample module window covering every coefficient degree the Koszul or
// cotangent terms can ask for over the requested shifts
DegreeWindow ample_window(const AlgebraPresentation& a, DegreeWindow shifts)
{
    int span = 0;
    for (const auto& g : a.generators) span += std::abs(g.degree);
    for (const auto& r : a.relations)
        if (!r.is_zero()) span += std::abs(a.degree_of(r));
    span += 2;
    int lo = std::min({0, shifts.t_min - span, shifts.t_min});
    int hi = std::max({0, shifts.t_max + span, shifts.t_max});
    return DegreeWindow(lo, hi);
}

Poly monomial_partial_local(const AlgebraPresentation& a, const Monomial& m, int gi)
{
    Poly out;
    for (size_t p = 0; p < m.factors.size(); ++p) {
        if (m.factors[p] != gi) continue;
        long long prefix = 0;
        for (size_t q = 0; q < p; ++q) prefix += a.gen_degree(m.factors[q]);
        int sgn = parity(static_cast<long long>(a.gen_degree(gi)) * prefix) ? -1 : 1;
        std::vector<int> rest;
        for (size_t q = 0; q < m.factors.size(); ++q)
            if (q != p) rest.push_back(m.factors[q]);
        out.terms.push_back({Rat(sgn), Monomial{rest}});
    }
    return a.normalize(out);
}

Poly poly_partial_local(const AlgebraPresentation& a, const Poly& f, int gi)
{
    Poly out;
    for (const auto& t : f.terms) {
        Poly dp = monomial_partial_local(a, t.mono, gi);
        for (auto& term : dp.terms) out.terms.push_back({term.coeff * t.coeff, term.mono});
    }
    return a.normalize(out);
}

}  // namespace

BigradedDims hochschild(const AlgebraPresentation& R, const ModuleViaHom& coeff, int s_max,
                        DegreeWindow shifts)
{
    R.validate();
    BigradedDims out;

    bool even = true;
    for (size_t i = 0; i < R.generators.size(); ++i)
        if (R.gen_odd(static_cast<int>(i))) even = false;
    const bool koszul_path = R.flavor == Flavor::commutative && R.relations.empty() && even;

    DegreeWindow w = ample_window(R, shifts);

    if (koszul_path) {
        KoszulData k{R};
        for (int t = shifts.t_min; t <= shifts.t_max; ++t) {
            Complex c = koszul_hochschild_complex(k, coeff, t, w, s_max);
            for (int s = 0; s <= s_max; ++s) {
                GradedDim h = complex_cohomology(c, s);
                out.set(s, t, h.dim(t), "koszul fast path", c.window_limited);
            }
        }
        return out;
    }

    // oracle route: HH^0 from the centralizer, HH^1 from derivations
    // modulo inner derivations, HH^{s+1} = cotriple H^s for s >= 1
    QuotientBasis tb(coeff.eps.target, w);
    std::vector<std::vector<Rat>> eps_gen(R.generators.size());
    for (size_t gi = 0; gi < R.generators.size(); ++gi) {
        auto it = coeff.eps.images.find(R.generators[gi].name);
        if (it == coeff.eps.images.end())
            throw InvalidInput("epsilon is missing a generator image");
        eps_gen[gi] = tb.reduce(it->second, R.gen_degree(static_cast<int>(gi)));
    }

    CotripleData data;
    data.flavor = R.flavor;
    data.source = R;
    data.target = coeff;
    data.s_max = s_max;
    // the tower pays per degree: reach just past the largest shift
    int max_gen = 0;
    for (const auto& g : R.generators) max_gen = std::max(max_gen, std::abs(g.degree));
    const int reach = std::max(std::abs(shifts.t_min), std::abs(shifts.t_max)) + max_gen + 2;
    data.window = R.connectivity_sign() > 0 ? DegreeWindow(0, reach) : DegreeWindow(-reach, 0);

    for (int t = shifts.t_min; t <= shifts.t_max; ++t) {
        // centralizer at degree t: graded commutators with every
        // generator image vanish
        const int mt = tb.dim(t);
        std::vector<std::vector<Rat>> all_rows;
        for (size_t gi = 0; gi < R.generators.size(); ++gi) {
            const int gd = R.gen_degree(static_cast<int>(gi));
            const int rd = gd + t;
            const int rdim = tb.dim(rd);
            if (rdim == 0 || mt == 0) continue;
            std::vector<std::vector<Rat>> block(rdim, std::vector<Rat>(mt, Rat(0)));
            int sgn = parity(static_cast<long long>(gd) * t) ? -1 : 1;
            for (int b = 0; b < mt; ++b) {
                std::vector<Rat> eb(mt, Rat(0));
                eb[b] = 1;
                auto lm = tb.mul(gd, eps_gen[gi], t, eb);
                auto mr = tb.mul(t, eb, gd, eps_gen[gi]);
                for (int r = 0; r < rdim; ++r) block[r][b] = lm[r] - Rat(sgn) * mr[r];
            }
            for (auto& row : block) all_rows.push_back(std::move(row));
        }
        RatMatrix cm(static_cast<int>(all_rows.size()), mt);
        for (size_t i = 0; i < all_rows.size(); ++i)
            for (int j = 0; j < mt; ++j)
                if (all_rows[i][j] != 0) cm.set(static_cast<int>(i), j, all_rows[i][j]);
        const int hh0 = mt - rank_of(cm);
        out.set(0, t, hh0, "oracle route: centralizer");

        if (s_max >= 1) {
            auto der = derivations(R, coeff, t, w);
            const int inner = mt - hh0;
            out.set(1, t, der.dim - inner, "oracle route: derivations modulo inner",
                    der.window_limited);
        }
        if (s_max >= 2) {
            Complex m = cotriple_moore_complex(data, t);
            for (int s = 2; s <= s_max; ++s) {
                if (s - 1 >= data.s_max) break;
                GradedDim h = complex_cohomology(m, s - 1);
                out.set(s, t, h.dim(t), "oracle route: cotriple H^{s-1}");
            }
        }
    }
    return out;
}

BigradedDims andre_quillen(const AlgebraPresentation& B, const ModuleViaHom& coeff, int s_max,
                           DegreeWindow shifts)
{
    B.validate();
    DegreeWindow w = ample_window(B, shifts);
    RegularityResult reg = regularity_check(B, w);
    if (reg.kind == Regularity::unknown)
        throw NotRegular("andre_quillen requires smooth or complete intersection: " +
                         reg.evidence);

    QuotientBasis tb(coeff.eps.target, w);
    const int ngen = static_cast<int>(B.generators.size());
    std::vector<Poly> rels;
    for (const auto& r : B.relations)
        if (!r.is_zero()) rels.push_back(B.normalize(r));
    const int nrel = static_cast<int>(rels.size());

    std::vector<std::vector<Rat>> eps_gen(ngen);
    for (int gi = 0; gi < ngen; ++gi) {
        auto it = coeff.eps.images.find(B.generators[gi].name);
        if (it == coeff.eps.images.end())
            throw InvalidInput("epsilon is missing a generator image");
        eps_gen[gi] = tb.reduce(it->second, B.gen_degree(gi));
    }

    // epsilon images of the partial derivatives d f_j / d g_i
    std::vector<std::vector<std::vector<Rat>>> eps_partial(nrel,
                                                           std::vector<std::vector<Rat>>(ngen));
    std::vector<int> rel_deg(nrel);
    AlgebraHom eps = coeff.eps;
    QuotientBasis dummy(eps.target, w);
    for (int j = 0; j < nrel; ++j) {
        rel_deg[j] = B.degree_of(rels[j]);
        for (int i = 0; i < ngen; ++i) {
            Poly partial = poly_partial_local(B, rels[j], i);
            const int pd = rel_deg[j] - B.gen_degree(i);
            std::vector<Rat> acc(tb.dim(pd), Rat(0));
            for (const auto& term : partial.terms) {
                std::vector<Rat> img = hom_image_coords(eps, tb, term.mono);
                for (size_t k = 0; k < img.size(); ++k) acc[k] += term.coeff * img[k];
            }
            eps_partial[j][i] = std::move(acc);
        }
    }

    BigradedDims out;
    const std::string prov =
        reg.kind == Regularity::smooth ? "one-term cotangent complex (smooth)"
                                       : "two-term cotangent complex (lci)";
    for (int t = shifts.t_min; t <= shifts.t_max; ++t) {
        std::vector<int> c0_dim(ngen), c0_off(ngen);
        int c0 = 0;
        for (int i = 0; i < ngen; ++i) {
            c0_dim[i] = tb.dim(B.gen_degree(i) + t);
            c0_off[i] = c0;
            c0 += c0_dim[i];
        }
        std::vector<int> c1_dim(nrel), c1_off(nrel);
        int c1 = 0;
        for (int j = 0; j < nrel; ++j) {
            c1_dim[j] = tb.dim(rel_deg[j] + t);
            c1_off[j] = c1;
            c1 += c1_dim[j];
        }

        RatMatrix delta(c1, c0);
        for (int j = 0; j < nrel; ++j) {
            if (c1_dim[j] == 0) continue;
            for (int i = 0; i < ngen; ++i) {
                if (c0_dim[i] == 0) continue;
                const auto& coeff_vec = eps_partial[j][i];
                bool zero = true;
                for (const auto& v : coeff_vec)
                    if (v != 0) zero = false;
                if (zero) continue;
                const int pd = rel_deg[j] - B.gen_degree(i);
                const int sgn = parity(static_cast<long long>(t) * pd) ? -1 : 1;
                for (int b = 0; b < c0_dim[i]; ++b) {
                    std::vector<Rat> eb(c0_dim[i], Rat(0));
                    eb[b] = 1;
                    auto val = tb.mul(pd, coeff_vec, B.gen_degree(i) + t, eb);
                    for (int r = 0; r < c1_dim[j]; ++r)
                        if (val[r] != 0) delta.add(c1_off[j] + r, c0_off[i] + b, val[r] * sgn);
                }
            }
        }

        const int rank = rank_of(delta);
        out.set(0, t, c0 - rank, prov + ": AQ^0 = ker");
        if (s_max >= 1) out.set(1, t, c1 - rank, prov + ": AQ^1 = coker");
        // AQ^s = 0 for s >= 2: two-term complex, nothing to record
    }
    return out;
}

namespace {

template <typename M>
M power(const M& a, int n)
{
    M acc = M::identity(a.rows());
    for (int i = 0; i < n; ++i) acc = acc * a;
    return acc;
}

template <typename M>
std::pair<M, M> norm_and_aug(const M& g, int n)
{
    // returns (g - 1, Norm = 1 + g + ... + g^{n-1})
    M gm1 = g;
    M norm(g.rows(), g.cols());
    M pw = M::identity(g.rows());
    for (int k = 0; k < n; ++k) {
        for (const auto& [rc, v] : pw.nonzeros()) norm.add(rc.first, rc.second, v);
        pw = pw * g;
    }
    M id = M::identity(g.rows());
    for (const auto& [rc, v] : id.nonzeros()) gm1.add(rc.first, rc.second, -v);
    return {gm1, norm};
}

}  // namespace

std::vector<AbelianGroupDescriptor> cyclic_group_cohomology(const CyclicModule& m, int s_max)
{
    const IntMatrix* g = std::get_if<IntMatrix>(&m.action);
    if (!g) throw InvalidInput("integer cyclic cohomology needs an integer action");
    if (g->rows() != g->cols()) throw InvalidInput("action matrix must be square");
    if (!(power(*g, m.order) == IntMatrix::identity(g->rows())))
        throw ActionOrderMismatch(fmt::format("action^{} != identity", m.order));

    auto [gm1, norm] = norm_and_aug(*g, m.order);
    const int r = g->rows();

    std::vector<AbelianGroupDescriptor> out;
    for (int s = 0; s <= s_max; ++s) {
        if (s == 0) {
            IntMatrix kernel = integer_kernel_basis(gm1);
            AbelianGroupDescriptor d;
            d.free_rank = kernel.cols();
            out.push_back(d);
        }
        else if (s % 2 == 1) {
            out.push_back(homology_at(gm1, norm));
        }
        else {
            out.push_back(homology_at(norm, gm1));
        }
        (void)r;
    }
    return out;
}

std::vector<int> cyclic_group_cohomology_q(const CyclicModule& m, int s_max)
{
    const RatMatrix* g = std::get_if<RatMatrix>(&m.action);
    if (!g) throw InvalidInput("rational cyclic cohomology needs a rational action");
    if (g->rows() != g->cols()) throw InvalidInput("action matrix must be square");
    if (!(power(*g, m.order) == RatMatrix::identity(g->rows())))
        throw ActionOrderMismatch(fmt::format("action^{} != identity", m.order));

    auto [gm1, norm] = norm_and_aug(*g, m.order);
    std::vector<int> out;
    for (int s = 0; s <= s_max; ++s) {
        if (s == 0)
            out.push_back(g->cols() - rank_of(gm1));
        else if (s % 2 == 1)
            out.push_back(homology_at(gm1, norm));
        else
            out.push_back(homology_at(norm, gm1));
    }
    return out;
}

}  // namespace e2
