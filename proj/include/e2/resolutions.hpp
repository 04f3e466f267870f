#pragma once
#include "e2/algebra.hpp"

namespace e2 {

struct KoszulData {
    AlgebraPresentation base;  // polynomial, even generators
};

// Hochschild cochain complex from the Koszul resolution, restricted to
// one shift t. Term s is spanned by pairs (dual s-fold sigma-monomial,
// coefficient basis element) with |m| = |sigma-monomial| + t; the
// differential acts by graded commutators with the generator images.
Complex koszul_hochschild_complex(const KoszulData& k, const ModuleViaHom& coeff, int t,
                                  DegreeWindow w, int s_max);

struct CotangentData {
    AlgebraPresentation base_poly;       // polynomial part, no relations
    std::vector<Poly> regular_sequence;  // homogeneous f_j
};

// B = base/(f) as a presentation
AlgebraPresentation cotangent_quotient(const CotangentData& c);

// Two-term complex sum_j B.df_j -> sum_i B.dg_i (chain direction), with
// the graded partial derivatives as the differential.
Complex cotangent_complex_ci(const CotangentData& c, DegreeWindow w);

enum class Regularity { smooth, complete_intersection, etale, unknown };

struct RegularityResult {
    Regularity kind = Regularity::unknown;
    bool window_limited = false;
    std::string evidence;
};

RegularityResult regularity_check(const AlgebraPresentation& a, DegreeWindow w);

struct CotripleData {
    Flavor flavor = Flavor::commutative;
    AlgebraPresentation source;
    ModuleViaHom target;  // epsilon: source -> target
    int s_max = 3;
    DegreeWindow window;  // source internal-degree window
    int basis_budget = 20000;
};

// Brute-force oracle: Moore cochain complex of the cotriple resolution
// of the reduced source, mapped into the target with shift t. Terms are
// concentrated in internal degree t; cosimplicial degrees 0..s_max.
// Construction checks delta.delta = 0 exactly.
Complex cotriple_moore_complex(const CotripleData& c, int t);

}  // namespace e2
