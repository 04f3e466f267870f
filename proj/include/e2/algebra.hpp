#pragma once
#include "e2/graded.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace e2 {

enum class Flavor { commutative, associative };

struct Generator {
    std::string name;
    int degree = 0;
};

// Canonical monomial: generator indices, left to right. Commutative
// flavor keeps indices sorted ascending with odd generators squarefree;
// associative flavor keeps the word as written.
struct Monomial {
    std::vector<int> factors;
    bool operator==(const Monomial& o) const { return factors == o.factors; }
    bool operator<(const Monomial& o) const { return factors < o.factors; }
    bool is_unit() const { return factors.empty(); }
};

struct Term {
    Rat coeff;
    Monomial mono;
};

struct Poly {
    std::vector<Term> terms;  // canonical: sorted by monomial, no zero coefficients
    bool is_zero() const { return terms.empty(); }
};

// Finitely presented graded Q-algebra. All generator degrees share one
// sign (degree-0 generators are rejected: infinite monomial counts).
class AlgebraPresentation {
public:
    Flavor flavor = Flavor::commutative;
    std::vector<Generator> generators;
    std::vector<Poly> relations;

    void validate() const;

    int gen_index(const std::string& name) const;
    int gen_degree(int i) const { return generators.at(i).degree; }
    bool gen_odd(int i) const { return (generators.at(i).degree % 2 + 2) % 2 == 1; }
    int connectivity_sign() const;  // +1, -1, or 0 when there are no generators

    int degree_of(const Monomial& m) const;
    int degree_of(const Poly& p) const;  // homogeneous degree; throws if mixed

    // canonical form of a raw word; nullopt when it collapses to zero
    // (odd generator squared). The sign is the Koszul reordering sign.
    std::optional<std::pair<int, Monomial>> canonical_word(const std::vector<int>& word) const;

    Poly normalize(const Poly& raw) const;
    Poly multiply(const Poly& a, const Poly& b) const;
    Poly term(const Rat& coeff, const std::vector<std::string>& names) const;

    std::string monomial_string(const Monomial& m) const;
    std::string poly_string(const Poly& p) const;
};

// Windowed monomial bases of the quotient algebra, with degreewise
// reduction against the ideal slice. Memoizes per degree.
class QuotientBasis {
public:
    QuotientBasis(AlgebraPresentation a, DegreeWindow w);

    const AlgebraPresentation& presentation() const { return alg_; }
    const DegreeWindow& window() const { return window_; }

    const std::vector<Monomial>& monomials(int d);
    int dim(int d);
    const std::vector<int>& basis_monomial_indices(int d);
    std::string basis_label(int d, int k);
    Poly basis_poly(int d, int k);

    // coordinates of a homogeneous polynomial over the degree-d basis
    std::vector<Rat> reduce(const Poly& p, int d);
    // product of quotient classes; degrees must stay inside the window
    std::vector<Rat> mul(int d1, const std::vector<Rat>& a, int d2, const std::vector<Rat>& b);

    GradedDim graded_dims();

private:
    struct DegreeData {
        std::vector<Monomial> monomials;
        std::map<Monomial, int> index;
        // fully reduced ideal-slice rows, pivot column of each row
        std::vector<std::vector<Rat>> rref_rows;
        std::vector<int> pivot_cols;
        std::vector<bool> is_pivot;
        std::vector<int> basis;           // surviving monomial indices
        std::vector<int> coord_of_mono;   // monomial index -> basis coordinate or -1
    };
    DegreeData& at(int d);
    void enumerate_monomials(int d, DegreeData& data);
    void build_ideal_slice(int d, DegreeData& data);

    AlgebraPresentation alg_;
    DegreeWindow window_;
    std::map<int, DegreeData> data_;
    std::map<std::tuple<int, int, int, int>, std::vector<Rat>> mul_memo_;
};

struct AlgebraHom {
    AlgebraPresentation source, target;
    std::map<std::string, Poly> images;  // generator name -> homogeneous target element
    bool is_basepoint = false;           // the spectral-sequence base point epsilon
};

// Target algebra viewed as a module over the source through epsilon.
struct ModuleViaHom {
    AlgebraHom eps;
};

enum class HomStatus { valid, invalid, window_limited };
struct HomCheckResult {
    HomStatus status = HomStatus::valid;
    std::string witness;  // violated relation, when invalid
};

struct DerivationBasisElement {
    // generator name -> coordinates over the target basis at |g| + t
    std::map<std::string, std::vector<Rat>> images;
};

struct DerivationSpace {
    int dim = 0;
    std::vector<DerivationBasisElement> basis;
    bool window_limited = false;
};

struct HomParametrization {
    int parameter_count = 0;
    std::vector<std::string> parameter_labels;
    std::vector<std::string> constraints;  // nonzero constraint polynomials
    bool constraints_identically_zero = true;
    std::optional<int> affine_dim;  // set when the constraints vanish identically
    bool window_limited = false;
};

GradedDim monomial_basis(const AlgebraPresentation& a, DegreeWindow w);

int indecomposables(const AlgebraPresentation& a, int d);

DerivationSpace derivations(const AlgebraPresentation& a, const ModuleViaHom& coeff, int t,
                            DegreeWindow w);

HomCheckResult check_hom(const AlgebraHom& h, DegreeWindow w);

HomParametrization hom_parametrization(const AlgebraPresentation& source,
                                       const AlgebraPresentation& target, DegreeWindow w);

GradedDim free_monad_apply(Flavor flavor, const GradedDim& g, DegreeWindow w);

// epsilon image of a quotient class: coordinates over the target basis,
// computed in a caller-provided target QuotientBasis.
std::vector<Rat> hom_image_coords(const AlgebraHom& h, QuotientBasis& target_basis,
                                  const Monomial& source_monomial);

}  // namespace e2
