#include "e2/graded.hpp"

#include <set>

namespace e2 {

void Complex::validate() const
{
    if (validated_) return;
    const int step = direction == Direction::cochain ? 1 : -1;
    for (const auto& [s, d] : differentials) {
        const GradedDim& src = term(s);
        const GradedDim& dst = term(s + step);
        for (const auto& [deg, block] : d.blocks) {
            if (block.rows() != dst.dim(deg + d.shift) || block.cols() != src.dim(deg))
                throw InvalidInput("complex differential block shape mismatch at s=" +
                                   std::to_string(s));
        }
        auto next = differentials.find(s + step);
        if (next == differentials.end()) continue;
        for (const auto& [deg, block] : d.blocks) {
            RatMatrix out = next->second.block(deg + d.shift);
            if (!(out * block).is_zero())
                throw CompositionNotZero(provenance + ": delta.delta != 0 at s=" +
                                         std::to_string(s) + ", degree " + std::to_string(deg));
        }
    }
    validated_ = true;
}

GradedDim shift(const GradedDim& g, int t)
{
    GradedDim out;
    out.window = DegreeWindow(g.window.t_min - t, g.window.t_max - t);
    out.window_limited = g.window_limited;
    for (const auto& [d, n] : g.dims) out.dims[d - t] = n;
    for (const auto& [d, lab] : g.labels) out.labels[d - t] = lab;
    return out;
}

int Complex::block_rank(int s, int degree) const
{
    auto key = std::make_pair(s, degree);
    auto it = rank_cache_.find(key);
    if (it != rank_cache_.end()) return it->second;
    auto dit = differentials.find(s);
    int rank = dit == differentials.end() ? 0 : rank_of(dit->second.block(degree));
    rank_cache_[key] = rank;
    return rank;
}

GradedDim complex_cohomology(const Complex& c, int s)
{
    if (s < 0) throw InvalidInput("cohomological degree must be nonnegative");
    c.validate();
    const int step = c.direction == Complex::Direction::cochain ? 1 : -1;
    const GradedDim& mid = c.term(s);

    auto in_it = c.differentials.find(s - step);
    auto out_it = c.differentials.find(s);

    GradedDim h;
    h.window = mid.window;
    h.window_limited = c.window_limited || mid.window_limited;

    std::set<int> degrees;
    for (const auto& [d, n] : mid.dims) degrees.insert(d);

    for (int d : degrees) {
        int rank_in = 0;
        if (in_it != c.differentials.end()) {
            const GradedMap& m = in_it->second;
            rank_in = c.block_rank(s - step, d - m.shift);
            if (m.block(d - m.shift).rows() != mid.dim(d))
                throw InvalidInput("incoming differential block shape mismatch");
        }
        int rank_out = 0;
        if (out_it != c.differentials.end()) {
            if (out_it->second.block(d).cols() != mid.dim(d))
                throw InvalidInput("outgoing differential block shape mismatch");
            rank_out = c.block_rank(s, d);
        }
        int dim = mid.dim(d) - rank_in - rank_out;
        if (dim > 0) h.set_dim(d, dim);
    }
    return h;
}

}  // namespace e2
