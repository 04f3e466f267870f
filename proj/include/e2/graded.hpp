#pragma once
#include "e2/exactlin.hpp"

#include <map>
#include <string>
#include <vector>

namespace e2 {

struct DegreeWindow {
    int t_min = 0;
    int t_max = 0;

    DegreeWindow() = default;
    DegreeWindow(int lo, int hi) : t_min(lo), t_max(hi)
    {
        if (lo > hi) throw InvalidInput("degree window with t_min > t_max");
    }
    bool contains(int d) const { return t_min <= d && d <= t_max; }
};

// Finitely supported dimension function on internal degrees, with an
// optional labeled basis. window_limited records that the value could
// differ outside the truncation window.
struct GradedDim {
    DegreeWindow window;
    std::map<int, int> dims;  // nonzero entries only
    std::map<int, std::vector<std::string>> labels;
    bool window_limited = false;

    int dim(int d) const
    {
        auto it = dims.find(d);
        return it == dims.end() ? 0 : it->second;
    }
    void set_dim(int d, int n, std::vector<std::string> lab = {})
    {
        if (!window.contains(d)) throw InvalidInput("degree outside window");
        if (n < 0) throw InvalidInput("negative dimension");
        if (!lab.empty() && static_cast<int>(lab.size()) != n)
            throw InvalidInput("label count does not match dimension");
        if (n == 0) {
            dims.erase(d);
            labels.erase(d);
            return;
        }
        dims[d] = n;
        if (!lab.empty()) labels[d] = std::move(lab);
    }
    int total_dim() const
    {
        int t = 0;
        for (const auto& [d, n] : dims) t += n;
        return t;
    }
    bool operator==(const GradedDim& o) const { return dims == o.dims; }
};

// Degree-t map of graded vector spaces: blocks keyed by source degree d,
// block(d) has shape target.dim(d + shift) x source.dim(d).
struct GradedMap {
    GradedDim source, target;
    int shift = 0;
    std::map<int, RatMatrix> blocks;  // absent block = zero

    RatMatrix block(int d) const
    {
        auto it = blocks.find(d);
        if (it != blocks.end()) return it->second;
        return RatMatrix(target.dim(d + shift), source.dim(d));
    }
    void set_block(int d, RatMatrix m)
    {
        if (m.rows() != target.dim(d + shift) || m.cols() != source.dim(d))
            throw InvalidInput("graded map block shape mismatch");
        if (!m.is_zero()) blocks[d] = std::move(m);
    }
};

// Cochain (or chain) complex of graded vector spaces, indexed by
// cohomological degree s >= 0. delta^2 = 0 is checked on construction.
struct Complex {
    enum class Direction { cochain, chain };

    Direction direction = Direction::cochain;
    std::map<int, GradedDim> terms;
    std::map<int, GradedMap> differentials;  // key: source cohomological degree
    std::string provenance;
    bool window_limited = false;

    const GradedDim& term(int s) const
    {
        static const GradedDim empty;
        auto it = terms.find(s);
        return it == terms.end() ? empty : it->second;
    }
    int max_degree() const { return terms.empty() ? -1 : terms.rbegin()->first; }

    // exact delta(next) . delta(s) == 0 for every consecutive pair
    void validate() const;

    // rank of differentials[s].block(degree), memoized: cohomology at
    // consecutive spots shares each differential
    int block_rank(int s, int degree) const;

private:
    mutable std::map<std::pair<int, int>, int> rank_cache_;
    mutable bool validated_ = false;
};

// shift(g, t).dims[d] = g.dims[d + t]; the Der-formula convention: a
// degree-d source generator pairs with target elements of degree d + t.
GradedDim shift(const GradedDim& g, int t);

// Degreewise ker/im dimensions at cohomological degree s.
GradedDim complex_cohomology(const Complex& c, int s);

}  // namespace e2
