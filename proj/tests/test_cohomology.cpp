#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "e2/cohomology.hpp"

#include <random>

using namespace e2;

namespace {

AlgebraPresentation polynomial(Flavor f, std::vector<std::pair<std::string, int>> gens)
{
    AlgebraPresentation a;
    a.flavor = f;
    for (auto& [n, d] : gens) a.generators.push_back({n, d});
    a.validate();
    return a;
}

AlgebraHom identity_hom(const AlgebraPresentation& a)
{
    AlgebraHom h;
    h.source = a;
    h.target = a;
    for (const auto& g : a.generators) h.images[g.name] = a.term(1, {g.name});
    return h;
}

IntMatrix zmat(const std::vector<std::vector<int>>& d)
{
    IntMatrix m(static_cast<int>(d.size()), d.empty() ? 0 : static_cast<int>(d[0].size()));
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = 0; j < d[i].size(); ++j) m.set((int)i, (int)j, Int(d[i][j]));
    return m;
}

ModuleViaHom hopf_coeff()
{
    AlgebraHom eps;
    eps.source = polynomial(Flavor::commutative, {{"e", -2}});
    eps.source.relations.push_back(eps.source.term(1, {"e", "e"}));
    eps.target = polynomial(Flavor::commutative, {{"y", -3}});
    eps.images["e"] = Poly{};
    eps.is_basepoint = true;
    return ModuleViaHom{eps};
}

}  // namespace

TEST_CASE("hochschild of Q[x1] with identity coefficients")
{
    auto r = polynomial(Flavor::commutative, {{"x1", 2}});
    ModuleViaHom coeff{identity_hom(r)};
    BigradedDims hh = hochschild(r, coeff, 3, DegreeWindow(0, 8));
    for (int t = 0; t <= 8; t += 2) {
        CHECK(hh.dim(0, t) == 1);  // HH^0 = R_t
        CHECK(hh.dim(1, t) == 1);  // HH^1 = R_{t+2}
        CHECK(hh.dim(2, t) == 0);  // vanishing above cohomological degree n=1
        CHECK(hh.dim(3, t) == 0);
    }
    CHECK(hh.dim(1, 0) == 1);  // dim R_2 = 1
}

TEST_CASE("hochschild vanishing above n for three generators")
{
    auto r = polynomial(Flavor::commutative, {{"x1", 2}, {"x2", 4}, {"x3", 6}});
    ModuleViaHom coeff{identity_hom(r)};
    BigradedDims hh = hochschild(r, coeff, 5, DegreeWindow(0, 6));
    for (int t = 0; t <= 6; ++t) {
        CHECK(hh.dim(4, t) == 0);
        CHECK(hh.dim(5, t) == 0);
        CHECK(hh.dim(3, t) >= 0);
    }
    // top Koszul class sx1 sx2 sx3 has internal degree 12; HH^3 at t=0
    // is R_12, whose monomials are the 7 partitions of 12 into {2,4,6}
    CHECK(hh.dim(3, 0) == 7);
}

TEST_CASE("andre_quillen of the Hopf map scenario")
{
    auto b = polynomial(Flavor::commutative, {{"e", -2}});
    b.relations.push_back(b.term(1, {"e", "e"}));
    BigradedDims aq = andre_quillen(b, hopf_coeff(), 2, DegreeWindow(1, 6));
    CHECK(aq.dim(1, 1) == 1);  // the Q in E2^{1,1}
    CHECK(aq.dim(0, 2) == 1);
    CHECK(aq.dim(1, 4) == 1);
    for (int s = 0; s <= 2; ++s)
        for (int t = 1; t <= 6; ++t) {
            if ((s == 1 && t == 1) || (s == 0 && t == 2) || (s == 1 && t == 4)) continue;
            CHECK(aq.dim(s, t) == 0);
        }
}

TEST_CASE("andre_quillen of a smooth algebra vanishes above s=0")
{
    auto b = polynomial(Flavor::commutative, {{"x1", 2}, {"x2", 4}, {"x3", 6}});
    ModuleViaHom coeff{identity_hom(b)};
    BigradedDims aq = andre_quillen(b, coeff, 3, DegreeWindow(1, 10));
    for (int t = 1; t <= 10; ++t)
        for (int s = 1; s <= 3; ++s) CHECK(aq.dim(s, t) == 0);
    // Der slots at t=2: dim R_4 + dim R_6 + dim R_8 = 2 + 3 + 4
    CHECK(aq.dim(0, 2) == 9);
}

TEST_CASE("andre_quillen rejects non-regular presentations")
{
    auto a = polynomial(Flavor::commutative, {{"x", -1}, {"y", -1}});
    a.relations.push_back(a.term(1, {"x", "y"}));
    // x*y is regular here, so build something that is not: impose both
    // xy = 0 and x^2 = 0 ... x odd means x^2 = 0 already; take a
    // presentation with a redundant relation instead
    auto bad = polynomial(Flavor::commutative, {{"u", -2}});
    bad.relations.push_back(bad.term(1, {"u", "u"}));
    bad.relations.push_back(bad.term(1, {"u", "u", "u"}));  // redundant, not regular
    AlgebraHom eps;
    eps.source = bad;
    eps.target = polynomial(Flavor::commutative, {{"y", -3}});
    eps.images["u"] = Poly{};
    CHECK_THROWS_AS(andre_quillen(bad, ModuleViaHom{eps}, 2, DegreeWindow(1, 4)), NotRegular);
}

TEST_CASE("AQ^0 agrees with derivations on the Hopf scenario")
{
    auto b = polynomial(Flavor::commutative, {{"e", -2}});
    b.relations.push_back(b.term(1, {"e", "e"}));
    ModuleViaHom coeff = hopf_coeff();
    BigradedDims aq = andre_quillen(b, coeff, 2, DegreeWindow(1, 6));
    for (int t = 1; t <= 6; ++t)
        CHECK(aq.dim(0, t) == derivations(b, coeff, t, DegreeWindow(-10, 0)).dim);
}

TEST_CASE("cyclic cohomology of C2 with the sign action on Z")
{
    CyclicModule m{2, zmat({{-1}})};
    auto h = cyclic_group_cohomology(m, 4);
    CHECK(h[0].is_zero());
    CHECK(h[1] == AbelianGroupDescriptor{0, {Int(2)}});
    CHECK(h[2].is_zero());
    CHECK(h[3] == AbelianGroupDescriptor{0, {Int(2)}});
    CHECK(h[4].is_zero());
}

TEST_CASE("cyclic cohomology of C2 acting trivially on Z")
{
    CyclicModule m{2, zmat({{1}})};
    auto h = cyclic_group_cohomology(m, 4);
    CHECK(h[0] == AbelianGroupDescriptor{1, {}});
    CHECK(h[1].is_zero());
    CHECK(h[2] == AbelianGroupDescriptor{0, {Int(2)}});
    CHECK(h[3].is_zero());
    CHECK(h[4] == AbelianGroupDescriptor{0, {Int(2)}});
}

TEST_CASE("cyclic cohomology of C3 on Z^2 via the rotation action")
{
    // SNF oracle on the explicit matrices: N = I + g + g^2 = 0 and
    // g - 1 has determinant 3, so the odd spots carry Z/3
    CyclicModule m{3, zmat({{0, -1}, {1, -1}})};
    auto h = cyclic_group_cohomology(m, 4);
    CHECK(h[0].is_zero());
    CHECK(h[1] == AbelianGroupDescriptor{0, {Int(3)}});
    CHECK(h[2].is_zero());
    CHECK(h[3] == AbelianGroupDescriptor{0, {Int(3)}});
    CHECK(h[4].is_zero());
}

TEST_CASE("action order mismatch is rejected")
{
    CyclicModule m{3, zmat({{-1}})};  // (-1)^3 = -1 != 1
    CHECK_THROWS_AS(cyclic_group_cohomology(m, 2), ActionOrderMismatch);
}

TEST_CASE("rational cyclic cohomology vanishes above s=0")
{
    std::mt19937 rng(3);
    for (int iter = 0; iter < 20; ++iter) {
        // random C2 representation: conjugate diag(+-1) by a unimodular map
        int n = 1 + iter % 3;
        RatMatrix d(n, n);
        for (int i = 0; i < n; ++i) d.set(i, i, Rat(rng() % 2 ? 1 : -1));
        RatMatrix p = RatMatrix::identity(n);
        if (n > 1) p.set(0, n - 1, Rat(static_cast<int>(rng() % 5) - 2));
        RatMatrix pinv = RatMatrix::identity(n);
        if (n > 1) pinv.set(0, n - 1, -p.at(0, n - 1));
        CyclicModule m{2, p * d * pinv};
        auto dims = cyclic_group_cohomology_q(m, 4);
        for (int s = 1; s <= 4; ++s) CHECK(dims[s] == 0);
    }
}

TEST_CASE("two-periodicity in s for s >= 1")
{
    CyclicModule m{2, zmat({{1, 1}, {0, -1}})};  // order-2 action
    auto h = cyclic_group_cohomology(m, 6);
    for (int s = 1; s + 2 <= 6; ++s) CHECK(h[s] == h[s + 2]);
}
