#include "e2/exactlin.hpp"

#include <algorithm>
#include <cstdlib>

namespace e2 {

std::string AbelianGroupDescriptor::to_string() const
{
    if (is_zero()) return "0";
    std::string out;
    if (free_rank == 1)
        out = "Z";
    else if (free_rank > 1)
        out = "Z^" + std::to_string(free_rank);
    for (const auto& t : torsion) {
        if (!out.empty()) out += "+";
        out += "Z/" + t.get_str();
    }
    return out;
}

namespace {

using DenseInt = std::vector<std::vector<Int>>;
using DenseRat = std::vector<std::vector<Rat>>;

// Clear denominators row by row; scaling rows by nonzero rationals
// changes neither rank nor kernel.
DenseInt cleared_rows(const RatMatrix& m)
{
    DenseRat d = m.dense_rows();
    DenseInt out(m.rows(), std::vector<Int>(m.cols(), 0));
    for (int i = 0; i < m.rows(); ++i) {
        Int lcm = 1;
        for (int j = 0; j < m.cols(); ++j)
            if (d[i][j] != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), d[i][j].get_den_mpz_t());
        for (int j = 0; j < m.cols(); ++j) {
            Rat v = d[i][j] * Rat(lcm);
            v.canonicalize();
            out[i][j] = v.get_num();
        }
    }
    return out;
}

struct Echelon {
    DenseInt mat;
    std::vector<int> pivot_cols;  // ascending
    std::vector<int> pivot_rows;  // pivot_rows[k] pairs with pivot_cols[k]
};

// Fraction-free (Bareiss) elimination with column scanning; exact
// divisions by the previous pivot keep every entry a minor of the input.
Echelon bareiss_echelon(DenseInt a, int rows, int cols)
{
    Echelon e;
    e.pivot_cols.reserve(std::min(rows, cols));
    Int prev = 1;
    int pr = 0;
    for (int col = 0; col < cols && pr < rows; ++col) {
        int best = -1;
        for (int i = pr; i < rows; ++i) {
            if (a[i][col] == 0) continue;
            if (best < 0 || mpz_cmpabs(a[i][col].get_mpz_t(), a[best][col].get_mpz_t()) < 0) best = i;
        }
        if (best < 0) continue;
        std::swap(a[pr], a[best]);
        for (int i = pr + 1; i < rows; ++i) {
            for (int j = col + 1; j < cols; ++j) {
                Int num = a[i][j] * a[pr][col] - a[i][col] * a[pr][j];
                mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][col] = 0;
        }
        prev = a[pr][col];
        e.pivot_cols.push_back(col);
        e.pivot_rows.push_back(pr);
        ++pr;
    }
    e.mat = std::move(a);
    return e;
}

}  // namespace

RankKernelImage rank_kernel_image(const RatMatrix& m)
{
    const int rows = m.rows(), cols = m.cols();
    Echelon e = bareiss_echelon(cleared_rows(m), rows, cols);
    const int rank = static_cast<int>(e.pivot_cols.size());

    RankKernelImage out;
    out.rank = rank;

    std::vector<bool> is_pivot(cols, false);
    for (int c : e.pivot_cols) is_pivot[c] = true;

    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[f] = 1;
        for (int k = rank - 1; k >= 0; --k) {
            const int pc = e.pivot_cols[k];
            const auto& row = e.mat[k];
            Rat acc(0);
            for (int j = pc + 1; j < cols; ++j)
                if (row[j] != 0 && v[j] != 0) acc += Rat(row[j]) * v[j];
            if (acc != 0) {
                v[pc] = -acc / Rat(row[pc]);
                v[pc].canonicalize();
            }
        }
        out.kernel_basis.push_back(std::move(v));
    }
    for (int c : e.pivot_cols) out.image_basis.push_back(m.column(c));
    return out;
}

int rank_of(const RatMatrix& m)
{
    // sparse rational elimination; cochain differentials are far too
    // sparse for the dense fraction-free path to pay off
    std::vector<std::map<int, Rat>> rows;
    rows.reserve(m.rows());
    {
        std::map<int, std::map<int, Rat>> by_row;
        for (const auto& [rc, v] : m.nonzeros()) by_row[rc.first][rc.second] = v;
        for (auto& [r, row] : by_row) rows.push_back(std::move(row));
    }
    std::map<int, int> colcount;
    for (const auto& row : rows)
        for (const auto& [c, v] : row) ++colcount[c];

    std::vector<bool> done(rows.size(), false);
    int rank = 0;
    while (true) {
        int best = -1;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (done[i] || rows[i].empty()) continue;
            if (best < 0 || rows[i].size() < rows[best].size()) best = static_cast<int>(i);
        }
        if (best < 0) break;
        // pivot on the rarest column of the shortest row to limit fill
        int pcol = -1;
        for (const auto& [c, v] : rows[best])
            if (pcol < 0 || colcount[c] < colcount[pcol]) pcol = c;
        const Rat pivot = rows[best].at(pcol);
        done[best] = true;
        ++rank;
        for (size_t j = 0; j < rows.size(); ++j) {
            if (done[j] || static_cast<int>(j) == best) continue;
            auto it = rows[j].find(pcol);
            if (it == rows[j].end()) continue;
            Rat factor = it->second / pivot;
            factor.canonicalize();
            for (const auto& [c, v] : rows[best]) {
                auto jt = rows[j].find(c);
                if (jt == rows[j].end()) {
                    Rat nv = -factor * v;
                    nv.canonicalize();
                    if (nv != 0) {
                        rows[j][c] = nv;
                        ++colcount[c];
                    }
                }
                else {
                    jt->second -= factor * v;
                    jt->second.canonicalize();
                    if (jt->second == 0) {
                        rows[j].erase(jt);
                        --colcount[c];
                    }
                }
            }
        }
        for (const auto& [c, v] : rows[best]) --colcount[c];
        rows[best].clear();
    }
    return rank;
}

Int integer_determinant(const IntMatrix& m)
{
    if (m.rows() != m.cols()) throw InvalidInput("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) return 1;
    DenseInt a = m.dense_rows();
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int sw = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) { sw = i; break; }
            if (sw < 0) return 0;
            std::swap(a[k], a[sw]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : Int(-a[n - 1][n - 1]);
}

namespace {

struct SnfWork {
    DenseInt a;
    DenseInt l;  // rows x rows
    DenseInt r;  // cols x cols
    int rows, cols;

    void row_swap(int i, int j)
    {
        std::swap(a[i], a[j]);
        std::swap(l[i], l[j]);
    }
    void col_swap(int i, int j)
    {
        for (auto& row : a) std::swap(row[i], row[j]);
        for (auto& row : r) std::swap(row[i], row[j]);
    }
    // row i -= q * row j
    void row_sub(int i, int j, const Int& q)
    {
        if (q == 0) return;
        for (int c = 0; c < cols; ++c) a[i][c] -= q * a[j][c];
        for (int c = 0; c < rows; ++c) l[i][c] -= q * l[j][c];
    }
    // col i -= q * col j
    void col_sub(int i, int j, const Int& q)
    {
        if (q == 0) return;
        for (int rr = 0; rr < rows; ++rr) a[rr][i] -= q * a[rr][j];
        for (int rr = 0; rr < cols; ++rr) r[rr][i] -= q * r[rr][j];
    }
    void row_negate(int i)
    {
        for (auto& v : a[i]) v = -v;
        for (auto& v : l[i]) v = -v;
    }
};

Int round_quotient(const Int& num, const Int& den)
{
    // nearest-integer quotient keeps remainders at most |den|/2
    Int q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Int twice = rem * 2;
    if (mpz_cmpabs(twice.get_mpz_t(), den.get_mpz_t()) > 0) q += 1;
    return q;
}

}  // namespace

SmithNormalForm smith_normal_form(const IntMatrix& m)
{
    const int rows = m.rows(), cols = m.cols();
    SnfWork w;
    w.rows = rows;
    w.cols = cols;
    w.a = m.dense_rows();
    w.l = IntMatrix::identity(rows).dense_rows();
    w.r = IntMatrix::identity(cols).dense_rows();

    const int n = std::min(rows, cols);
    for (int t = 0; t < n; ++t) {
        // locate minimal-absolute-value nonzero entry in the trailing block
        int pi = -1, pj = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (w.a[i][j] == 0) continue;
                if (pi < 0 || mpz_cmpabs(w.a[i][j].get_mpz_t(), w.a[pi][pj].get_mpz_t()) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        w.row_swap(t, pi);
        w.col_swap(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (w.a[i][t] == 0) continue;
                Int q = round_quotient(w.a[i][t], w.a[t][t]);
                w.row_sub(i, t, q);
                if (w.a[i][t] != 0) {
                    w.row_swap(t, i);
                    clean = false;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (w.a[t][j] == 0) continue;
                Int q = round_quotient(w.a[t][j], w.a[t][t]);
                w.col_sub(j, t, q);
                if (w.a[t][j] != 0) {
                    w.col_swap(t, j);
                    clean = false;
                }
            }
        }
        if (w.a[t][t] < 0) w.row_negate(t);
    }

    // enforce the divisibility chain on the diagonal
    bool chained = false;
    while (!chained) {
        chained = true;
        for (int t = 0; t + 1 < n; ++t) {
            Int &d1 = w.a[t][t], &d2 = w.a[t + 1][t + 1];
            if (d1 == 0 && d2 != 0) {
                w.row_swap(t, t + 1);
                w.col_swap(t, t + 1);
                chained = false;
                continue;
            }
            if (d1 == 0 || d2 == 0) continue;
            if (d2 % d1 == 0) continue;
            // fold the pair into (gcd, lcm)
            w.row_sub(t, t + 1, Int(-1));  // row t += row t+1, makes a[t][t+1] = d2
            while (true) {
                if (w.a[t][t + 1] != 0) {
                    Int q = round_quotient(w.a[t][t + 1], w.a[t][t]);
                    w.col_sub(t + 1, t, q);
                    if (w.a[t][t + 1] != 0) w.col_swap(t, t + 1);
                }
                if (w.a[t + 1][t] == 0 && w.a[t][t + 1] == 0) break;
                if (w.a[t + 1][t] != 0) {
                    Int q = round_quotient(w.a[t + 1][t], w.a[t][t]);
                    w.row_sub(t + 1, t, q);
                    if (w.a[t + 1][t] != 0) w.row_swap(t, t + 1);
                }
                if (w.a[t + 1][t] == 0 && w.a[t][t + 1] == 0) break;
            }
            if (w.a[t][t] < 0) w.row_negate(t);
            if (w.a[t + 1][t + 1] < 0) w.row_negate(t + 1);
            chained = false;
        }
    }

    SmithNormalForm out;
    for (int t = 0; t < n; ++t)
        if (w.a[t][t] != 0) out.invariant_factors.push_back(w.a[t][t]);
    out.left = IntMatrix::from_dense(w.l);
    out.right = IntMatrix::from_dense(w.r);

    // unimodularity is promised, so verify it
    Int dl = integer_determinant(out.left), dr = integer_determinant(out.right);
    if ((dl != 1 && dl != -1) || (dr != 1 && dr != -1))
        throw Error("SnfInternal", "transform not unimodular");
    IntMatrix check = out.left * m * out.right;
    for (const auto& [rc, v] : check.nonzeros()) {
        if (rc.first != rc.second || rc.first >= static_cast<int>(out.invariant_factors.size()) ||
            v != out.invariant_factors[rc.first])
            throw Error("SnfInternal", "reduction mismatch");
    }
    return out;
}

IntMatrix integer_kernel_basis(const IntMatrix& m)
{
    SmithNormalForm snf = smith_normal_form(m);
    const int k = static_cast<int>(snf.invariant_factors.size());
    IntMatrix basis(m.cols(), m.cols() - k);
    for (const auto& [rc, v] : snf.right.nonzeros())
        if (rc.second >= k) basis.set(rc.first, rc.second - k, v);
    return basis;
}

IntMatrix column_space_basis(const IntMatrix& m)
{
    SmithNormalForm snf = smith_normal_form(m);
    const int k = static_cast<int>(snf.invariant_factors.size());
    IntMatrix prod = m * snf.right;
    IntMatrix basis(m.rows(), k);
    for (const auto& [rc, v] : prod.nonzeros())
        if (rc.second < k) basis.set(rc.first, rc.second, v);
    return basis;
}

IntMatrix solve_in_basis(const IntMatrix& basis, const IntMatrix& b)
{
    if (basis.rows() != b.rows()) throw InvalidInput("solve_in_basis shape mismatch");
    const int n = basis.rows(), k = basis.cols(), nb = b.cols();
    // rational elimination on [basis | b]
    DenseRat aug(n, std::vector<Rat>(k + nb, Rat(0)));
    for (const auto& [rc, v] : basis.nonzeros()) aug[rc.first][rc.second] = Rat(v);
    for (const auto& [rc, v] : b.nonzeros()) aug[rc.first][k + rc.second] = Rat(v);

    int pr = 0;
    std::vector<int> pivot_row_of_col(k, -1);
    for (int col = 0; col < k && pr < n; ++col) {
        int sel = -1;
        for (int i = pr; i < n; ++i)
            if (aug[i][col] != 0) { sel = i; break; }
        if (sel < 0) throw InvalidInput("solve_in_basis: basis not full column rank");
        std::swap(aug[pr], aug[sel]);
        Rat inv = 1 / aug[pr][col];
        for (int j = col; j < k + nb; ++j) {
            aug[pr][j] *= inv;
            aug[pr][j].canonicalize();
        }
        for (int i = 0; i < n; ++i) {
            if (i == pr || aug[i][col] == 0) continue;
            Rat f = aug[i][col];
            for (int j = col; j < k + nb; ++j) {
                aug[i][j] -= f * aug[pr][j];
                aug[i][j].canonicalize();
            }
        }
        pivot_row_of_col[col] = pr;
        ++pr;
    }
    // rows beyond the pivots must have vanished on the b side
    for (int i = pr; i < n; ++i)
        for (int j = k; j < k + nb; ++j)
            if (aug[i][j] != 0) throw InvalidInput("solve_in_basis: not in span");

    IntMatrix coords(k, nb);
    for (int col = 0; col < k; ++col) {
        int row = pivot_row_of_col[col];
        for (int j = 0; j < nb; ++j) {
            const Rat& v = aug[row][k + j];
            if (v == 0) continue;
            if (v.get_den() != 1) throw InvalidInput("solve_in_basis: non-integral coordinate");
            coords.set(col, j, v.get_num());
        }
    }
    return coords;
}

AbelianGroupDescriptor quotient_group(int ambient_rank, const IntMatrix& relations)
{
    if (relations.rows() != ambient_rank) throw InvalidInput("quotient_group shape mismatch");
    AbelianGroupDescriptor g;
    if (relations.cols() == 0 || relations.is_zero()) {
        g.free_rank = ambient_rank;
        return g;
    }
    SmithNormalForm snf = smith_normal_form(relations);
    g.free_rank = ambient_rank - static_cast<int>(snf.invariant_factors.size());
    for (const auto& f : snf.invariant_factors)
        if (f >= 2) g.torsion.push_back(f);
    return g;
}

AbelianGroupDescriptor homology_at(const IntMatrix& d_in, const IntMatrix& d_out)
{
    if (d_in.rows() != d_out.cols()) throw InvalidInput("homology_at: middle dimension mismatch");
    if (!(d_out * d_in).is_zero())
        throw CompositionNotZero("integer complex: d_out * d_in != 0");
    IntMatrix kernel = integer_kernel_basis(d_out);
    IntMatrix coords = solve_in_basis(kernel, d_in);
    return quotient_group(kernel.cols(), coords);
}

int homology_at(const RatMatrix& d_in, const RatMatrix& d_out)
{
    if (d_in.rows() != d_out.cols()) throw InvalidInput("homology_at: middle dimension mismatch");
    if (!(d_out * d_in).is_zero())
        throw CompositionNotZero("rational complex: d_out * d_in != 0");
    return (d_out.cols() - rank_of(d_out)) - rank_of(d_in);
}

}  // namespace e2
