#include "e2/algebra.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>

namespace e2 {

namespace {

// Incrementally maintained reduced row echelon form over Q.
struct Rref {
    std::vector<std::vector<Rat>> rows;
    std::vector<int> pivots;

    void reduce_vec(std::vector<Rat>& v) const
    {
        for (size_t k = 0; k < rows.size(); ++k) {
            const Rat& c = v[pivots[k]];
            if (c == 0) continue;
            Rat f = c;
            for (size_t j = 0; j < v.size(); ++j)
                if (rows[k][j] != 0) v[j] -= f * rows[k][j];
        }
    }

    void add(std::vector<Rat> v)
    {
        reduce_vec(v);
        int p = -1;
        for (size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) { p = static_cast<int>(j); break; }
        if (p < 0) return;
        Rat inv = 1 / v[p];
        for (auto& x : v) x *= inv;
        for (size_t k = 0; k < rows.size(); ++k) {
            Rat c = rows[k][p];
            if (c == 0) continue;
            for (size_t j = 0; j < v.size(); ++j)
                if (v[j] != 0) rows[k][j] -= c * v[j];
        }
        rows.push_back(std::move(v));
        pivots.push_back(p);
    }

    int rank() const { return static_cast<int>(rows.size()); }
};

int parity(int n) { return ((n % 2) + 2) % 2; }

}  // namespace

void AlgebraPresentation::validate() const
{
    int sign = 0;
    std::set<std::string> names;
    for (const auto& g : generators) {
        if (g.degree == 0)
            throw DegreeZeroGenerator("generator '" + g.name + "' has degree 0");
        int s = g.degree > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        if (s != sign)
            throw InvalidPresentation("generator degrees must share one sign");
        if (!names.insert(g.name).second)
            throw InvalidPresentation("duplicate generator name '" + g.name + "'");
    }
    for (const auto& r : relations) {
        if (r.is_zero()) continue;
        degree_of(r);
    }
}

int AlgebraPresentation::gen_index(const std::string& name) const
{
    for (size_t i = 0; i < generators.size(); ++i)
        if (generators[i].name == name) return static_cast<int>(i);
    throw InvalidInput("unknown generator '" + name + "'");
}

int AlgebraPresentation::connectivity_sign() const
{
    if (generators.empty()) return 0;
    return generators[0].degree > 0 ? 1 : -1;
}

int AlgebraPresentation::degree_of(const Monomial& m) const
{
    int d = 0;
    for (int i : m.factors) d += gen_degree(i);
    return d;
}

int AlgebraPresentation::degree_of(const Poly& p) const
{
    if (p.is_zero()) throw InvalidInput("degree of the zero polynomial");
    int d = degree_of(p.terms[0].mono);
    for (const auto& t : p.terms)
        if (degree_of(t.mono) != d) throw InvalidPresentation("inhomogeneous polynomial");
    return d;
}

std::optional<std::pair<int, Monomial>> AlgebraPresentation::canonical_word(
    const std::vector<int>& word) const
{
    for (int i : word)
        if (i < 0 || i >= static_cast<int>(generators.size()))
            throw InvalidInput("generator index out of range");
    if (flavor == Flavor::associative) return std::make_pair(1, Monomial{word});

    std::vector<int> w = word;
    int sign = 1;
    for (size_t i = 1; i < w.size(); ++i) {
        for (size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
            if (gen_odd(w[j]) && gen_odd(w[j - 1])) sign = -sign;
            std::swap(w[j], w[j - 1]);
        }
    }
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i] == w[i - 1] && gen_odd(w[i])) return std::nullopt;
    return std::make_pair(sign, Monomial{std::move(w)});
}

Poly AlgebraPresentation::normalize(const Poly& raw) const
{
    std::map<Monomial, Rat> acc;
    for (const auto& t : raw.terms) {
        if (t.coeff == 0) continue;
        auto c = canonical_word(t.mono.factors);
        if (!c) continue;
        acc[c->second] += t.coeff * c->first;
    }
    Poly out;
    for (auto& [m, c] : acc) {
        c.canonicalize();
        if (c != 0) out.terms.push_back({c, m});
    }
    return out;
}

Poly AlgebraPresentation::multiply(const Poly& a, const Poly& b) const
{
    Poly raw;
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) {
            std::vector<int> word = ta.mono.factors;
            word.insert(word.end(), tb.mono.factors.begin(), tb.mono.factors.end());
            raw.terms.push_back({ta.coeff * tb.coeff, Monomial{std::move(word)}});
        }
    return normalize(raw);
}

Poly AlgebraPresentation::term(const Rat& coeff, const std::vector<std::string>& names) const
{
    std::vector<int> word;
    word.reserve(names.size());
    for (const auto& n : names) word.push_back(gen_index(n));
    return normalize(Poly{{{coeff, Monomial{word}}}});
}

std::string AlgebraPresentation::monomial_string(const Monomial& m) const
{
    if (m.is_unit()) return "1";
    std::string out;
    for (size_t i = 0; i < m.factors.size();) {
        size_t j = i;
        while (j < m.factors.size() && m.factors[j] == m.factors[i]) ++j;
        if (!out.empty()) out += "*";
        out += generators[m.factors[i]].name;
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

std::string AlgebraPresentation::poly_string(const Poly& p) const
{
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& t : p.terms) {
        std::string c = t.coeff.get_str();
        if (!out.empty()) out += " + ";
        if (c == "1" && !t.mono.is_unit())
            out += monomial_string(t.mono);
        else if (t.mono.is_unit())
            out += c;
        else
            out += c + "*" + monomial_string(t.mono);
    }
    return out;
}

// ---------------------------------------------------------------- basis

QuotientBasis::QuotientBasis(AlgebraPresentation a, DegreeWindow w)
    : alg_(std::move(a)), window_(w)
{
    alg_.validate();
}

void QuotientBasis::enumerate_monomials(int d, DegreeData& data)
{
    const int sign = alg_.connectivity_sign();
    if (d == 0) {
        data.monomials.push_back(Monomial{});
    }
    else if (sign != 0 && (d > 0) == (sign > 0)) {
        if (alg_.flavor == Flavor::commutative) {
            std::vector<int> word;
            auto rec = [&](auto&& self, int gi, int remaining) -> void {
                if (gi == static_cast<int>(alg_.generators.size())) {
                    if (remaining == 0) data.monomials.push_back(Monomial{word});
                    return;
                }
                int deg = alg_.gen_degree(gi);
                int max_exp = std::abs(remaining) / std::abs(deg);
                if (alg_.gen_odd(gi)) max_exp = std::min(max_exp, 1);
                for (int e = 0; e <= max_exp; ++e) {
                    for (int k = 0; k < e; ++k) word.push_back(gi);
                    self(self, gi + 1, remaining - e * deg);
                    for (int k = 0; k < e; ++k) word.pop_back();
                }
            };
            rec(rec, 0, d);
        }
        else {
            // noncommutative words, first letter then the rest
            auto rec = [&](auto&& self, int remaining, std::vector<int>& word) -> void {
                if (remaining == 0) {
                    if (!word.empty()) data.monomials.push_back(Monomial{word});
                    return;
                }
                if ((remaining > 0) != (sign > 0)) return;
                for (int gi = 0; gi < static_cast<int>(alg_.generators.size()); ++gi) {
                    int deg = alg_.gen_degree(gi);
                    if (std::abs(deg) > std::abs(remaining)) continue;
                    word.push_back(gi);
                    self(self, remaining - deg, word);
                    word.pop_back();
                }
            };
            std::vector<int> word;
            rec(rec, d, word);
            std::sort(data.monomials.begin(), data.monomials.end());
        }
    }
    for (size_t i = 0; i < data.monomials.size(); ++i)
        data.index[data.monomials[i]] = static_cast<int>(i);
}

void QuotientBasis::build_ideal_slice(int d, DegreeData& data)
{
    const int n = static_cast<int>(data.monomials.size());
    Rref rref;
    auto expand_into = [&](const Poly& p, std::vector<Rat>& vec) {
        for (const auto& t : p.terms) {
            auto it = data.index.find(t.mono);
            if (it == data.index.end())
                throw InvalidInput("expansion left the degree slice");
            vec[it->second] += t.coeff;
        }
    };

    for (const auto& r : alg_.relations) {
        if (r.is_zero()) continue;
        const int e = alg_.degree_of(r);
        const int rest = d - e;
        const int sign = alg_.connectivity_sign();
        if (rest != 0 && (rest > 0) != (sign > 0)) continue;

        if (alg_.flavor == Flavor::commutative) {
            for (const auto& m : monomials(rest)) {
                Poly prod = alg_.multiply(Poly{{{Rat(1), m}}}, r);
                if (prod.is_zero()) continue;
                std::vector<Rat> vec(n, Rat(0));
                expand_into(prod, vec);
                rref.add(std::move(vec));
            }
        }
        else {
            for (int d1 = 0; std::abs(d1) <= std::abs(rest); d1 += (sign == 0 ? 1 : sign)) {
                int d2 = rest - d1;
                const auto& left = monomials(d1);
                const auto& right = monomials(d2);
                for (const auto& ml : left)
                    for (const auto& mr : right) {
                        Poly prod = alg_.multiply(alg_.multiply(Poly{{{Rat(1), ml}}}, r),
                                                  Poly{{{Rat(1), mr}}});
                        if (prod.is_zero()) continue;
                        std::vector<Rat> vec(n, Rat(0));
                        expand_into(prod, vec);
                        rref.add(std::move(vec));
                    }
                if (sign == 0) break;
            }
        }
    }

    data.rref_rows = std::move(rref.rows);
    data.pivot_cols = std::move(rref.pivots);
    data.is_pivot.assign(n, false);
    for (int p : data.pivot_cols) data.is_pivot[p] = true;
    data.coord_of_mono.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (data.is_pivot[i]) continue;
        data.coord_of_mono[i] = static_cast<int>(data.basis.size());
        data.basis.push_back(i);
    }
}

QuotientBasis::DegreeData& QuotientBasis::at(int d)
{
    auto it = data_.find(d);
    if (it != data_.end()) return it->second;
    DegreeData& data = data_[d];
    enumerate_monomials(d, data);
    build_ideal_slice(d, data);
    return data;
}

const std::vector<Monomial>& QuotientBasis::monomials(int d) { return at(d).monomials; }
int QuotientBasis::dim(int d) { return static_cast<int>(at(d).basis.size()); }
const std::vector<int>& QuotientBasis::basis_monomial_indices(int d) { return at(d).basis; }

std::string QuotientBasis::basis_label(int d, int k)
{
    const DegreeData& data = at(d);
    return alg_.monomial_string(data.monomials[data.basis.at(k)]);
}

Poly QuotientBasis::basis_poly(int d, int k)
{
    const DegreeData& data = at(d);
    return Poly{{{Rat(1), data.monomials[data.basis.at(k)]}}};
}

std::vector<Rat> QuotientBasis::reduce(const Poly& raw, int d)
{
    DegreeData& data = at(d);
    Poly p = alg_.normalize(raw);
    std::vector<Rat> vec(data.monomials.size(), Rat(0));
    for (const auto& t : p.terms) {
        if (alg_.degree_of(t.mono) != d) throw InvalidInput("reduce: degree mismatch");
        vec[data.index.at(t.mono)] += t.coeff;
    }
    for (size_t k = 0; k < data.rref_rows.size(); ++k) {
        Rat f = vec[data.pivot_cols[k]];
        if (f == 0) continue;
        const auto& row = data.rref_rows[k];
        for (size_t j = 0; j < vec.size(); ++j)
            if (row[j] != 0) vec[j] -= f * row[j];
    }
    std::vector<Rat> coords(data.basis.size(), Rat(0));
    for (size_t k = 0; k < data.basis.size(); ++k) coords[k] = vec[data.basis[k]];
    return coords;
}

std::vector<Rat> QuotientBasis::mul(int d1, const std::vector<Rat>& a, int d2,
                                    const std::vector<Rat>& b)
{
    const int dout = d1 + d2;
    std::vector<Rat> out(dim(dout), Rat(0));
    for (size_t k1 = 0; k1 < a.size(); ++k1) {
        if (a[k1] == 0) continue;
        for (size_t k2 = 0; k2 < b.size(); ++k2) {
            if (b[k2] == 0) continue;
            auto key = std::make_tuple(d1, static_cast<int>(k1), d2, static_cast<int>(k2));
            auto it = mul_memo_.find(key);
            if (it == mul_memo_.end()) {
                Poly prod = alg_.multiply(basis_poly(d1, static_cast<int>(k1)),
                                          basis_poly(d2, static_cast<int>(k2)));
                it = mul_memo_.emplace(key, reduce(prod, dout)).first;
            }
            const std::vector<Rat>& pv = it->second;
            Rat f = a[k1] * b[k2];
            for (size_t j = 0; j < pv.size(); ++j)
                if (pv[j] != 0) out[j] += f * pv[j];
        }
    }
    return out;
}

GradedDim QuotientBasis::graded_dims()
{
    GradedDim g;
    g.window = window_;
    for (int d = window_.t_min; d <= window_.t_max; ++d) {
        int n = dim(d);
        if (n == 0) continue;
        std::vector<std::string> labels;
        labels.reserve(n);
        for (int k = 0; k < n; ++k) labels.push_back(basis_label(d, k));
        g.set_dim(d, n, std::move(labels));
    }
    return g;
}

// ------------------------------------------------------------ operations

GradedDim monomial_basis(const AlgebraPresentation& a, DegreeWindow w)
{
    QuotientBasis qb(a, w);
    return qb.graded_dims();
}

int indecomposables(const AlgebraPresentation& a, int d)
{
    a.validate();
    const int sign = a.connectivity_sign();
    if (sign == 0 || d == 0 || (d > 0) != (sign > 0)) return 0;
    DegreeWindow w = d > 0 ? DegreeWindow(0, d) : DegreeWindow(d, 0);
    QuotientBasis qb(a, w);
    const int full = qb.dim(d);
    if (full == 0) return 0;

    Rref products;
    for (int d1 = sign; std::abs(d1) < std::abs(d); d1 += sign) {
        int d2 = d - d1;
        for (int k1 = 0; k1 < qb.dim(d1); ++k1) {
            std::vector<Rat> e1(qb.dim(d1), Rat(0));
            e1[k1] = 1;
            for (int k2 = 0; k2 < qb.dim(d2); ++k2) {
                std::vector<Rat> e2(qb.dim(d2), Rat(0));
                e2[k2] = 1;
                products.add(qb.mul(d1, e1, d2, e2));
            }
        }
    }
    return full - products.rank();
}

namespace {

// classify a target degree: exact inside the window (or structurally
// forced), unknown beyond it
enum class DegreeClass { exact, structurally_zero, outside_window };

DegreeClass classify_degree(const AlgebraPresentation& target, const DegreeWindow& w, int d)
{
    if (d == 0) return DegreeClass::exact;
    const int sign = target.connectivity_sign();
    if (sign == 0 || (d > 0) != (sign > 0)) return DegreeClass::structurally_zero;
    return w.contains(d) ? DegreeClass::exact : DegreeClass::outside_window;
}

std::vector<Rat> eps_gen_coords(const AlgebraHom& h, QuotientBasis& tb, int gi)
{
    const auto& name = h.source.generators.at(gi).name;
    auto it = h.images.find(name);
    if (it == h.images.end())
        throw InvalidInput("hom is missing the image of generator '" + name + "'");
    const int d = h.source.gen_degree(gi);
    if (!it->second.is_zero() && h.target.degree_of(it->second) != d)
        throw InvalidPresentation("image of '" + name + "' is not homogeneous of its degree");
    return tb.reduce(it->second, d);
}

}  // namespace

std::vector<Rat> hom_image_coords(const AlgebraHom& h, QuotientBasis& tb,
                                  const Monomial& source_monomial)
{
    std::vector<Rat> acc = tb.reduce(Poly{{{Rat(1), Monomial{}}}}, 0);
    int deg = 0;
    for (int gi : source_monomial.factors) {
        std::vector<Rat> img = eps_gen_coords(h, tb, gi);
        acc = tb.mul(deg, acc, h.source.gen_degree(gi), img);
        deg += h.source.gen_degree(gi);
    }
    return acc;
}

DerivationSpace derivations(const AlgebraPresentation& a, const ModuleViaHom& coeff, int t,
                            DegreeWindow w)
{
    a.validate();
    const AlgebraHom& eps = coeff.eps;
    QuotientBasis tb(eps.target, w);

    DerivationSpace out;
    const int ngen = static_cast<int>(a.generators.size());
    std::vector<int> block_dim(ngen, 0), block_off(ngen, 0), block_deg(ngen, 0);
    int total = 0;
    for (int gi = 0; gi < ngen; ++gi) {
        const int md = a.gen_degree(gi) + t;
        block_deg[gi] = md;
        switch (classify_degree(eps.target, w, md)) {
            case DegreeClass::exact: block_dim[gi] = tb.dim(md); break;
            case DegreeClass::structurally_zero: break;
            case DegreeClass::outside_window: out.window_limited = true; break;
        }
        block_off[gi] = total;
        total += block_dim[gi];
    }

    std::vector<std::vector<Rat>> eps_coords(ngen);
    for (int gi = 0; gi < ngen; ++gi) eps_coords[gi] = eps_gen_coords(eps, tb, gi);

    std::vector<std::vector<Rat>> rows;
    for (const auto& r : a.relations) {
        if (r.is_zero()) continue;
        const int e = a.degree_of(r);
        const int rd = e + t;
        DegreeClass cls = classify_degree(eps.target, w, rd);
        if (cls == DegreeClass::structurally_zero) continue;
        if (cls == DegreeClass::outside_window) {
            out.window_limited = true;
            continue;
        }
        const int rdim = tb.dim(rd);
        if (rdim == 0) continue;
        std::vector<std::vector<Rat>> block(rdim, std::vector<Rat>(total, Rat(0)));

        for (const auto& term : r.terms) {
            const auto& word = term.mono.factors;
            // suffix epsilon products, rightmost first
            const int k = static_cast<int>(word.size());
            std::vector<std::vector<Rat>> suffix(k + 1);
            std::vector<int> suffix_deg(k + 1, 0);
            suffix[k] = tb.reduce(Poly{{{Rat(1), Monomial{}}}}, 0);
            for (int j = k - 1; j >= 0; --j) {
                suffix[j] = tb.mul(a.gen_degree(word[j]), eps_coords[word[j]], suffix_deg[j + 1],
                                   suffix[j + 1]);
                suffix_deg[j] = a.gen_degree(word[j]) + suffix_deg[j + 1];
            }
            std::vector<Rat> prefix = tb.reduce(Poly{{{Rat(1), Monomial{}}}}, 0);
            int prefix_deg = 0;
            for (int j = 0; j < k; ++j) {
                const int gi = word[j];
                if (block_dim[gi] > 0) {
                    const int sgn = parity(t * prefix_deg) ? -1 : 1;
                    for (int b = 0; b < block_dim[gi]; ++b) {
                        std::vector<Rat> eb(block_dim[gi], Rat(0));
                        eb[b] = 1;
                        std::vector<Rat> mid = tb.mul(prefix_deg, prefix, block_deg[gi], eb);
                        std::vector<Rat> val =
                            tb.mul(prefix_deg + block_deg[gi], mid, suffix_deg[j + 1], suffix[j + 1]);
                        for (int rr = 0; rr < rdim; ++rr)
                            if (val[rr] != 0)
                                block[rr][block_off[gi] + b] += term.coeff * sgn * val[rr];
                    }
                }
                prefix = tb.mul(prefix_deg, prefix, a.gen_degree(gi), eps_coords[gi]);
                prefix_deg += a.gen_degree(gi);
            }
        }
        for (auto& row : block) rows.push_back(std::move(row));
    }

    RatMatrix constraint(static_cast<int>(rows.size()), total);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < total; ++j)
            if (rows[i][j] != 0) constraint.set(static_cast<int>(i), j, rows[i][j]);

    auto rki = rank_kernel_image(constraint);
    out.dim = static_cast<int>(rki.kernel_basis.size());
    for (const auto& v : rki.kernel_basis) {
        DerivationBasisElement el;
        for (int gi = 0; gi < ngen; ++gi) {
            std::vector<Rat> coords(block_dim[gi], Rat(0));
            for (int b = 0; b < block_dim[gi]; ++b) coords[b] = v[block_off[gi] + b];
            el.images[a.generators[gi].name] = std::move(coords);
        }
        out.basis.push_back(std::move(el));
    }
    return out;
}

HomCheckResult check_hom(const AlgebraHom& h, DegreeWindow w)
{
    h.source.validate();
    h.target.validate();
    QuotientBasis tb(h.target, w);
    HomCheckResult res;
    for (const auto& r : h.source.relations) {
        if (r.is_zero()) continue;
        const int e = h.source.degree_of(r);
        DegreeClass cls = classify_degree(h.target, w, e);
        if (cls == DegreeClass::structurally_zero) continue;
        if (cls == DegreeClass::outside_window) {
            res.status = HomStatus::window_limited;
            continue;
        }
        std::vector<Rat> acc(tb.dim(e), Rat(0));
        for (const auto& term : r.terms) {
            std::vector<Rat> img = hom_image_coords(h, tb, term.mono);
            for (size_t j = 0; j < img.size(); ++j) acc[j] += term.coeff * img[j];
        }
        for (const auto& c : acc)
            if (c != 0) return {HomStatus::invalid, h.source.poly_string(r)};
    }
    return res;
}

// ---------------------------------------------------- hom parametrization

namespace {

// polynomial in the hom parameters; exponent = sorted parameter indices
struct ParamPoly {
    std::map<std::vector<int>, Rat> terms;

    static ParamPoly zero() { return {}; }
    static ParamPoly one()
    {
        ParamPoly p;
        p.terms[{}] = 1;
        return p;
    }
    static ParamPoly var(int i)
    {
        ParamPoly p;
        p.terms[{i}] = 1;
        return p;
    }
    bool is_zero() const { return terms.empty(); }

    void add_scaled(const ParamPoly& o, const Rat& f)
    {
        if (f == 0) return;
        for (const auto& [e, c] : o.terms) {
            Rat& slot = terms[e];
            slot += c * f;
            if (slot == 0) terms.erase(e);
        }
    }

    ParamPoly times(const ParamPoly& o, const Rat& f) const
    {
        ParamPoly out;
        if (f == 0) return out;
        for (const auto& [e1, c1] : terms)
            for (const auto& [e2, c2] : o.terms) {
                std::vector<int> e = e1;
                e.insert(e.end(), e2.begin(), e2.end());
                std::sort(e.begin(), e.end());
                Rat& slot = out.terms[e];
                slot += c1 * c2 * f;
                if (slot == 0) out.terms.erase(e);
            }
        return out;
    }

    std::string to_string(const std::vector<std::string>& names) const
    {
        if (is_zero()) return "0";
        std::string out;
        for (const auto& [e, c] : terms) {
            if (!out.empty()) out += " + ";
            std::string mono;
            for (size_t i = 0; i < e.size();) {
                size_t j = i;
                while (j < e.size() && e[j] == e[i]) ++j;
                if (!mono.empty()) mono += "*";
                mono += names[e[i]];
                if (j - i > 1) mono += "^" + std::to_string(j - i);
                i = j;
            }
            if (mono.empty())
                out += c.get_str();
            else if (c == 1)
                out += mono;
            else
                out += c.get_str() + "*" + mono;
        }
        return out;
    }
};

using ParamVec = std::vector<ParamPoly>;  // coordinates over a target basis

}  // namespace

HomParametrization hom_parametrization(const AlgebraPresentation& source,
                                       const AlgebraPresentation& target, DegreeWindow w)
{
    source.validate();
    target.validate();
    QuotientBasis tb(target, w);

    HomParametrization out;
    const int ngen = static_cast<int>(source.generators.size());
    std::vector<int> block_dim(ngen, 0), block_off(ngen, 0);
    for (int gi = 0; gi < ngen; ++gi) {
        const int d = source.gen_degree(gi);
        switch (classify_degree(target, w, d)) {
            case DegreeClass::exact: block_dim[gi] = tb.dim(d); break;
            case DegreeClass::structurally_zero: break;
            case DegreeClass::outside_window: out.window_limited = true; break;
        }
        block_off[gi] = out.parameter_count;
        out.parameter_count += block_dim[gi];
        for (int b = 0; b < block_dim[gi]; ++b)
            out.parameter_labels.push_back(fmt::format("c[{}->{}]", source.generators[gi].name,
                                                       tb.basis_label(d, b)));
    }

    auto gen_image = [&](int gi) {
        ParamVec v(block_dim[gi]);
        for (int b = 0; b < block_dim[gi]; ++b) v[b] = ParamPoly::var(block_off[gi] + b);
        return v;
    };

    auto mul_vec = [&](int d1, const ParamVec& a, int d2, const ParamVec& b) {
        ParamVec prod(tb.dim(d1 + d2));
        for (size_t k1 = 0; k1 < a.size(); ++k1) {
            if (a[k1].is_zero()) continue;
            std::vector<Rat> e1(a.size(), Rat(0));
            e1[k1] = 1;
            for (size_t k2 = 0; k2 < b.size(); ++k2) {
                if (b[k2].is_zero()) continue;
                std::vector<Rat> e2(b.size(), Rat(0));
                e2[k2] = 1;
                std::vector<Rat> basis_prod = tb.mul(d1, e1, d2, e2);
                ParamPoly pp = a[k1].times(b[k2], Rat(1));
                for (size_t j = 0; j < basis_prod.size(); ++j)
                    if (basis_prod[j] != 0) prod[j].add_scaled(pp, basis_prod[j]);
            }
        }
        return prod;
    };

    for (const auto& r : source.relations) {
        if (r.is_zero()) continue;
        const int e = source.degree_of(r);
        DegreeClass cls = classify_degree(target, w, e);
        if (cls == DegreeClass::structurally_zero) continue;
        if (cls == DegreeClass::outside_window) {
            out.window_limited = true;
            continue;
        }
        ParamVec acc(tb.dim(e));
        for (const auto& term : r.terms) {
            ParamVec prod(1, ParamPoly::one());
            int deg = 0;
            bool dead = false;
            for (int gi : term.mono.factors) {
                prod = mul_vec(deg, prod, source.gen_degree(gi), gen_image(gi));
                deg += source.gen_degree(gi);
                if (prod.empty()) { dead = true; break; }
            }
            if (dead) continue;
            for (size_t j = 0; j < prod.size(); ++j) acc[j].add_scaled(prod[j], term.coeff);
        }
        for (const auto& c : acc)
            if (!c.is_zero()) {
                out.constraints.push_back(c.to_string(out.parameter_labels));
                out.constraints_identically_zero = false;
            }
    }

    if (out.constraints_identically_zero) out.affine_dim = out.parameter_count;
    return out;
}

// ----------------------------------------------------------- free monad

GradedDim free_monad_apply(Flavor flavor, const GradedDim& g, DegreeWindow w)
{
    struct Letter {
        int degree;
        std::string label;
    };
    std::vector<Letter> letters;
    int sign = 0;
    for (const auto& [d, n] : g.dims) {
        if (d == 0) throw DegreeZeroGenerator("free monad input supported at degree 0");
        int s = d > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        if (s != sign)
            throw InvalidPresentation("free monad input degrees must share one sign");
        auto lab = g.labels.find(d);
        for (int i = 0; i < n; ++i) {
            std::string name = (lab != g.labels.end()) ? lab->second[i]
                                                       : fmt::format("m{}_{}", d, i);
            letters.push_back({d, name});
        }
    }

    std::map<int, std::vector<std::string>> words;
    if (w.contains(0)) words[0].push_back("1");

    const int L = static_cast<int>(letters.size());
    const int bound = std::max(std::abs(w.t_min), std::abs(w.t_max));

    std::vector<int> stack;
    auto emit = [&](int degree) {
        if (!w.contains(degree) || stack.empty()) return;
        std::string label;
        for (int id : stack) {
            if (!label.empty()) label += ".";
            label += letters[id].label;
        }
        words[degree].push_back(std::move(label));
    };

    if (flavor == Flavor::commutative) {
        auto rec = [&](auto&& self, int li, int degree) -> void {
            emit(degree);
            if (li >= L) return;
            for (int next = li; next < L; ++next) {
                int nd = degree + letters[next].degree;
                if (std::abs(nd) > bound) continue;
                bool odd = parity(letters[next].degree) == 1;
                if (odd && !stack.empty() && stack.back() == next) continue;
                stack.push_back(next);
                self(self, next, nd);
                stack.pop_back();
            }
        };
        rec(rec, 0, 0);
    }
    else {
        auto rec = [&](auto&& self, int degree) -> void {
            emit(degree);
            for (int next = 0; next < L; ++next) {
                int nd = degree + letters[next].degree;
                if (std::abs(nd) > bound) continue;
                stack.push_back(next);
                self(self, nd);
                stack.pop_back();
            }
        };
        rec(rec, 0);
    }

    GradedDim out;
    out.window = w;
    for (auto& [d, labs] : words) {
        std::sort(labs.begin(), labs.end());
        out.set_dim(d, static_cast<int>(labs.size()), labs);
    }
    return out;
}

}  // namespace e2
