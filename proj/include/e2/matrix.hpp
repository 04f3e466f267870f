#pragma once
#include "e2/numeric.hpp"

#include <map>
#include <utility>
#include <vector>

namespace e2 {

// Sparse matrix in canonical triplet form: stored entries are nonzero,
// rationals in lowest terms with positive denominator, indices in range.
// Immutable in spirit: construct, then read. set() exists for builders.
template <typename S>
class SparseMat {
public:
    SparseMat() : rows_(0), cols_(0) {}
    SparseMat(int rows, int cols) : rows_(rows), cols_(cols)
    {
        if (rows < 0 || cols < 0)
            throw InvalidInput("negative matrix dimension");
    }

    static SparseMat identity(int n)
    {
        SparseMat m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, S(1));
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, const S& v)
    {
        check_index(r, c);
        S canon = v;
        canonicalize(canon);
        if (canon == 0)
            entries_.erase({r, c});
        else
            entries_[{r, c}] = canon;
    }

    void add(int r, int c, const S& v)
    {
        check_index(r, c);
        auto it = entries_.find({r, c});
        S sum = (it == entries_.end()) ? v : S(it->second + v);
        set(r, c, sum);
    }

    S at(int r, int c) const
    {
        check_index(r, c);
        auto it = entries_.find({r, c});
        return it == entries_.end() ? S(0) : it->second;
    }

    const std::map<std::pair<int, int>, S>& nonzeros() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    SparseMat transpose() const
    {
        SparseMat t(cols_, rows_);
        for (const auto& [rc, v] : entries_) t.set(rc.second, rc.first, v);
        return t;
    }

    SparseMat operator*(const SparseMat& rhs) const
    {
        if (cols_ != rhs.rows_)
            throw InvalidInput("matrix product shape mismatch");
        SparseMat out(rows_, rhs.cols_);
        // group rhs entries by row for the sparse product
        std::map<int, std::vector<std::pair<int, S>>> rhs_rows;
        for (const auto& [rc, v] : rhs.entries_)
            rhs_rows[rc.first].push_back({rc.second, v});
        std::map<std::pair<int, int>, S> acc;
        for (const auto& [rc, v] : entries_) {
            auto it = rhs_rows.find(rc.second);
            if (it == rhs_rows.end()) continue;
            for (const auto& [c2, v2] : it->second) acc[{rc.first, c2}] += v * v2;
        }
        for (const auto& [rc, v] : acc) out.set(rc.first, rc.second, v);
        return out;
    }

    bool operator==(const SparseMat& rhs) const
    {
        return rows_ == rhs.rows_ && cols_ == rhs.cols_ && entries_ == rhs.entries_;
    }

    std::vector<S> column(int c) const
    {
        std::vector<S> v(rows_, S(0));
        for (const auto& [rc, val] : entries_)
            if (rc.second == c) v[rc.first] = val;
        return v;
    }

    std::vector<std::vector<S>> dense_rows() const
    {
        std::vector<std::vector<S>> d(rows_, std::vector<S>(cols_, S(0)));
        for (const auto& [rc, v] : entries_) d[rc.first][rc.second] = v;
        return d;
    }

    static SparseMat from_dense(const std::vector<std::vector<S>>& d)
    {
        int r = static_cast<int>(d.size());
        int c = r == 0 ? 0 : static_cast<int>(d[0].size());
        SparseMat m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (d[i][j] != 0) m.set(i, j, d[i][j]);
        return m;
    }

private:
    static void canonicalize(Rat& v) { v.canonicalize(); }
    static void canonicalize(Int&) {}

    void check_index(int r, int c) const
    {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw InvalidInput("matrix index out of range");
    }

    int rows_, cols_;
    std::map<std::pair<int, int>, S> entries_;
};

using RatMatrix = SparseMat<Rat>;
using IntMatrix = SparseMat<Int>;

inline RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix out(m.rows(), m.cols());
    for (const auto& [rc, v] : m.nonzeros()) out.set(rc.first, rc.second, Rat(v));
    return out;
}

}  // namespace e2
