#include <gtest/gtest.h>

#include "dec/cohomology.hpp"
#include "dec/random.hpp"

using namespace dec;

namespace {

const GridShape g22 = GridShape::torus(2, 2);

Form sum_of(int degree, std::initializer_list<CellId> cells) {
    Form w(g22, degree);
    for (const auto& c : cells) w += Form::indicator(g22, c);
    return w;
}

}  // namespace

TEST(Betti, TorusValuesUpToSixBySix) {
    for (int n = 1; n <= 6; ++n)
        for (int m = 1; m <= 6; ++m) {
            const auto b = betti_numbers(GridShape::torus(n, m));
            EXPECT_EQ(b, (std::array<int, 3>{1, 2, 1})) << n << "x" << m;
            EXPECT_EQ(b[0] - b[1] + b[2], 0);
        }
    EXPECT_EQ(betti_numbers(GridShape::torus(3, 5)), (std::array<int, 3>{1, 2, 1}));
}

TEST(Betti, RejectsPlaneWindow) { EXPECT_THROW(betti_numbers(GridShape::window(2, 2)), error); }

TEST(Cohomology, RanksAreReported) {
    const auto res = cohomology(GridShape::torus(3, 4), false);
    EXPECT_EQ(res.ranks[0], 11u);
    EXPECT_EQ(res.ranks[1], 11u);
    EXPECT_EQ(res.ranks[2], 0u);
    for (const auto& gens : res.generators) EXPECT_TRUE(gens.empty());
}

TEST(Generators, DegreeZeroIsTheConstant) {
    const auto gens = generators(g22, 0);
    ASSERT_EQ(gens.size(), 1u);
    Form expected(g22, 0);
    for (double& x : expected.data()) x = 1.0;
    EXPECT_EQ(gens[0], expected);
}

TEST(Generators, DiagonalEdgePairsAreNotClosed) {
    // e1^{2,1} + e1^{1,2}: psi(1,1) = u(1,1) - u(1,2) + v(2,1) - v(1,1) = -1.
    const Form p1 = sum_of(1, {edge1(g22, 2, 1), edge1(g22, 1, 2)});
    const Form p2 = sum_of(1, {edge2(g22, 2, 1), edge2(g22, 1, 2)});
    EXPECT_EQ(d(p1)(1, 1), -1.0);
    EXPECT_EQ(d(p2)(1, 1), 1.0);
    EXPECT_THROW(is_exact(p1), not_closed);
    EXPECT_THROW(is_exact(p2), not_closed);
    // Only their sum is closed; it represents the diagonal class.
    EXPECT_TRUE(d(p1 + p2).is_zero());
    EXPECT_FALSE(is_exact(p1 + p2).exact);
    const Form c1 = sum_of(1, {edge1(g22, 1, 1), edge1(g22, 1, 2)});
    const Form c2 = sum_of(1, {edge2(g22, 1, 1), edge2(g22, 2, 1)});
    EXPECT_TRUE(cohomologous(p1 + p2, c1 + c2));
}

TEST(Generators, DegreeOneMatchesColumnAndRowRepresentatives) {
    const auto gens = generators(g22, 1);
    ASSERT_EQ(gens.size(), 2u);
    const Form c1 = sum_of(1, {edge1(g22, 1, 1), edge1(g22, 1, 2)});
    const Form c2 = sum_of(1, {edge2(g22, 1, 1), edge2(g22, 2, 1)});
    for (const Form& p : {c1, c2}) {
        bool found = false;
        for (int a = -2; a <= 2 && !found; ++a)
            for (int b = -2; b <= 2 && !found; ++b)
                if (cohomologous(p, double(a) * gens[0] + double(b) * gens[1])) found = true;
        EXPECT_TRUE(found);
    }
    EXPECT_FALSE(cohomologous(c1, c2));
    EXPECT_FALSE(is_exact(c1).exact);
    EXPECT_FALSE(is_exact(c2).exact);
    // Shifting the column is a change by an exact form.
    EXPECT_TRUE(cohomologous(c1, sum_of(1, {edge1(g22, 2, 1), edge1(g22, 2, 2)})));
}

TEST(Generators, DegreeTwoIsEquivalentToSingleFace) {
    const auto gens = generators(g22, 2);
    ASSERT_EQ(gens.size(), 1u);
    double total = 0.0;
    for (double x : gens[0].data()) total += x;
    EXPECT_TRUE(cohomologous(gens[0], total * Form::indicator(g22, face(g22, 2, 2))));
}

TEST(Generators, ClosedNotExactAndIndependent) {
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 4; ++m) {
            const auto g = GridShape::torus(n, m);
            for (int r = 0; r <= 2; ++r) {
                const auto gens = generators(g, r);
                EXPECT_EQ(static_cast<int>(gens.size()), betti_numbers(g)[r]);
                for (const auto& x : gens) {
                    EXPECT_TRUE(d(x).is_zero());
                    EXPECT_FALSE(is_exact(x).exact);
                    for (double v : x.data(0)) EXPECT_EQ(v, std::round(v));
                }
                if (gens.size() == 2) {
                    for (int a = -2; a <= 2; ++a)
                        for (int b = -2; b <= 2; ++b)
                            if (a != 0 || b != 0) {
                                EXPECT_FALSE(is_exact(double(a) * gens[0] + double(b) * gens[1]).exact);
                            }
                }
            }
        }
}

TEST(Exactness, ExactFormsHaveWitnesses) {
    Rng rng(3);
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 4; ++m) {
            const auto g = GridShape::torus(n, m);
            for (int r = 1; r <= 2; ++r) {
                const Form w = d(random_integer_form(g, r - 1, rng));
                const auto res = is_exact(w);
                ASSERT_TRUE(res.exact);
                ASSERT_TRUE(res.preimage.has_value());
                EXPECT_EQ(d(*res.preimage), w);
            }
        }
}

TEST(Exactness, SumOfFaceValuesDecidesDegreeTwo) {
    Rng rng(5);
    const auto g = GridShape::torus(3, 2);
    for (int t = 0; t < 20; ++t) {
        Form psi = random_integer_form(g, 2, rng);
        double total = 0.0;
        for (double x : psi.data()) total += x;
        EXPECT_EQ(is_exact(psi).exact, total == 0.0);
        // psi ~ (sum of psi) V^{2,2} for any psi.
        EXPECT_TRUE(cohomologous(psi, total * Form::indicator(g, face(g, 2, 2))));
    }
}

TEST(Exactness, DegreeZeroOnlyZeroIsExact) {
    Form c(g22, 0);
    EXPECT_TRUE(is_exact(c).exact);
    for (double& x : c.data()) x = 2.0;
    EXPECT_FALSE(is_exact(c).exact);
}

TEST(Exactness, NotClosedThrows) {
    const Form w = Form::indicator(g22, edge1(g22, 1, 1));
    EXPECT_THROW(is_exact(w), not_closed);
    EXPECT_THROW(cohomologous(w, w), not_closed);
    const Form phi = Form::indicator(g22, vertex(g22, 1, 1));
    EXPECT_THROW(is_exact(phi), not_closed);
}

TEST(Cohomologous, ReflexiveAndShapeChecked) {
    const Form p = sum_of(1, {edge1(g22, 1, 1), edge1(g22, 1, 2)});
    EXPECT_TRUE(cohomologous(p, p));
    EXPECT_THROW(cohomologous(p, Form(GridShape::torus(2, 3), 1)), shape_mismatch);
    EXPECT_THROW(cohomologous(p, Form(g22, 2)), degree_mismatch);
}
