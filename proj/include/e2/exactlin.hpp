#pragma once
#include "e2/matrix.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace e2 {

// Finitely generated abelian group in invariant-factor normal form.
struct AbelianGroupDescriptor {
    int free_rank = 0;
    std::vector<Int> torsion;  // each >= 2, sorted, divisibility-chained

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const AbelianGroupDescriptor& o) const
    {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    int generator_count() const { return free_rank + static_cast<int>(torsion.size()); }
    std::string to_string() const;
};

struct RankKernelImage {
    int rank = 0;
    std::vector<std::vector<Rat>> kernel_basis;  // column vectors, length = cols
    std::vector<std::vector<Rat>> image_basis;   // column vectors, length = rows
};

// Rank, exact kernel basis and column-space basis via fraction-free
// (Bareiss) elimination after clearing row denominators.
RankKernelImage rank_kernel_image(const RatMatrix& m);

int rank_of(const RatMatrix& m);

struct SmithNormalForm {
    std::vector<Int> invariant_factors;  // positive, divisibility-chained
    IntMatrix left;                      // unimodular, rows x rows
    IntMatrix right;                     // unimodular, cols x cols
    // left * m * right is diagonal with the invariant factors.
};

SmithNormalForm smith_normal_form(const IntMatrix& m);

Int integer_determinant(const IntMatrix& m);

// Basis of ker(m) as a direct summand of Z^cols (kernel of an integer
// matrix is saturated, so the SNF columns form an honest basis).
IntMatrix integer_kernel_basis(const IntMatrix& m);

// Basis of the column span of m inside Z^rows.
IntMatrix column_space_basis(const IntMatrix& m);

// Coordinates of each column of b in the column basis K (full column
// rank). Throws if any column is not an exact integral combination.
IntMatrix solve_in_basis(const IntMatrix& basis, const IntMatrix& b);

// Z^ambient_rank modulo the column span of relations, in normal form.
AbelianGroupDescriptor quotient_group(int ambient_rank, const IntMatrix& relations);

// ker(d_out)/im(d_in). Checks d_out * d_in == 0 exactly and throws
// CompositionNotZero otherwise.
AbelianGroupDescriptor homology_at(const IntMatrix& d_in, const IntMatrix& d_out);
int homology_at(const RatMatrix& d_in, const RatMatrix& d_out);

}  // namespace e2
