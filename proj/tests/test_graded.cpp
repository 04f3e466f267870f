#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "e2/graded.hpp"

#include <random>

using namespace e2;

namespace {

GradedDim concentrated(int degree, int dim, DegreeWindow w)
{
    GradedDim g;
    g.window = w;
    g.set_dim(degree, dim);
    return g;
}

}  // namespace

TEST_CASE("shift convention follows the Der formula")
{
    DegreeWindow w(-10, 10);
    GradedDim g;
    g.window = w;
    g.set_dim(2, 1);

    CHECK(shift(g, 0) == g);

    GradedDim s3 = shift(g, 3);
    CHECK(s3.dim(-1) == 1);
    CHECK(s3.total_dim() == 1);

    // shift composes additively
    GradedDim a = shift(shift(g, 2), -5);
    GradedDim b = shift(g, -3);
    CHECK(a == b);

    // R = Q[x1], |x1| = 2: derivation target slots at generator degree 2
    // with t = 4 live in R_6, which is one-dimensional
    GradedDim r;
    r.window = DegreeWindow(0, 10);
    for (int d = 0; d <= 10; d += 2) r.set_dim(d, 1);
    CHECK(shift(r, 4).dim(2) == 1);
}

TEST_CASE("two-term acyclic complex has vanishing cohomology")
{
    DegreeWindow w(0, 0);
    Complex c;
    c.provenance = "test acyclic";
    c.terms[0] = concentrated(0, 1, w);
    c.terms[1] = concentrated(0, 1, w);
    GradedMap d;
    d.source = c.terms[0];
    d.target = c.terms[1];
    d.set_block(0, RatMatrix::identity(1));
    c.differentials[0] = d;
    c.validate();

    CHECK(complex_cohomology(c, 0).total_dim() == 0);
    CHECK(complex_cohomology(c, 1).total_dim() == 0);
}

TEST_CASE("complex with zero differentials returns its terms")
{
    DegreeWindow w(-4, 4);
    Complex c;
    c.terms[0] = concentrated(-2, 3, w);
    c.terms[1] = concentrated(2, 2, w);
    GradedMap d;
    d.source = c.terms[0];
    d.target = c.terms[1];
    c.differentials[0] = d;

    CHECK(complex_cohomology(c, 0) == c.terms[0]);
    CHECK(complex_cohomology(c, 1) == c.terms[1]);
}

TEST_CASE("validate rejects non-squaring differentials")
{
    DegreeWindow w(0, 0);
    Complex c;
    for (int s = 0; s <= 2; ++s) c.terms[s] = concentrated(0, 1, w);
    for (int s = 0; s <= 1; ++s) {
        GradedMap d;
        d.source = c.terms[s];
        d.target = c.terms[s + 1];
        d.set_block(0, RatMatrix::identity(1));
        c.differentials[s] = d;
    }
    CHECK_THROWS_AS(c.validate(), CompositionNotZero);
}

TEST_CASE("Euler characteristic is conserved per internal degree")
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> dim(0, 4), val(-2, 2);
    DegreeWindow w(-3, 3);
    for (int iter = 0; iter < 30; ++iter) {
        // random three-term complex, built degreewise so that delta^2 = 0:
        // middle differential composed with a map into its kernel
        Complex c;
        GradedDim t0, t1, t2;
        t0.window = t1.window = t2.window = w;
        for (int d = w.t_min; d <= w.t_max; ++d) {
            int a = dim(rng), b = dim(rng), e = dim(rng);
            if (a) t0.set_dim(d, a);
            if (b) t1.set_dim(d, b);
            if (e) t2.set_dim(d, e);
        }
        c.terms[0] = t0;
        c.terms[1] = t1;
        c.terms[2] = t2;

        GradedMap d1;
        d1.source = t1;
        d1.target = t2;
        for (int d = w.t_min; d <= w.t_max; ++d) {
            RatMatrix m(t2.dim(d), t1.dim(d));
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j) m.set(i, j, Rat(val(rng)));
            d1.set_block(d, m);
        }

        GradedMap d0;
        d0.source = t0;
        d0.target = t1;
        for (int d = w.t_min; d <= w.t_max; ++d) {
            auto rki = rank_kernel_image(d1.block(d));
            RatMatrix m(t1.dim(d), t0.dim(d));
            for (int j = 0; j < t0.dim(d); ++j)
                for (size_t k = 0; k < rki.kernel_basis.size(); ++k) {
                    Rat coeff(val(rng));
                    if (coeff == 0) continue;
                    for (int i = 0; i < t1.dim(d); ++i)
                        m.set(i, j, m.at(i, j) + coeff * rki.kernel_basis[k][i]);
                }
            d0.set_block(d, m);
        }
        c.differentials[0] = d0;
        c.differentials[1] = d1;
        c.validate();

        for (int d = w.t_min; d <= w.t_max; ++d) {
            int chi_terms = t0.dim(d) - t1.dim(d) + t2.dim(d);
            int chi_h = complex_cohomology(c, 0).dim(d) - complex_cohomology(c, 1).dim(d) +
                        complex_cohomology(c, 2).dim(d);
            CHECK(chi_terms == chi_h);
        }
    }
}
