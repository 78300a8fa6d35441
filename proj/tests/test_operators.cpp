#include <gtest/gtest.h>

#include "dec/operators.hpp"
#include "dec/random.hpp"
#include "oracles.hpp"

using namespace dec;

namespace {

const GridShape g22 = GridShape::torus(2, 2);

std::vector<std::string> names(const BasisOrdering& b) {
    std::vector<std::string> out;
    for (const auto& c : b.labels) out.push_back(label(c));
    return out;
}

IntMatrix block_dirac(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t nx = a.cols(), ne = a.rows(), nv = b.rows(), total = nx + ne + nv;
    IntMatrix out(total, total);
    for (std::size_t i = 0; i < ne; ++i)
        for (std::size_t j = 0; j < nx; ++j) out(nx + i, j) = out(j, nx + i) = a(i, j);
    for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = 0; j < ne; ++j) out(nx + ne + i, nx + j) = out(nx + j, nx + ne + i) = b(i, j);
    return out;
}

IntMatrix zero(std::size_t r, std::size_t c) { return IntMatrix(r, c); }

}  // namespace

TEST(Ordering, FixedOrderingMatchesFixtureLabels) {
    EXPECT_EQ(names(paper2x2_ordering(0)), oracle::fixture_labels("x"));
    EXPECT_EQ(names(paper2x2_ordering(1)), oracle::fixture_labels("e"));
    EXPECT_EQ(names(paper2x2_ordering(2)), oracle::fixture_labels("V"));
}

TEST(Ordering, EnumeratesEveryCellOnce) {
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 4; ++m) {
            const auto g = GridShape::torus(n, m);
            for (int r = 0; r <= 2; ++r) {
                auto labels = canonical_ordering(g, r).labels;
                const std::size_t count = labels.size();
                std::sort(labels.begin(), labels.end());
                EXPECT_EQ(std::unique(labels.begin(), labels.end()), labels.end());
                EXPECT_EQ(count, static_cast<std::size_t>((r == 1 ? 2 : 1) * n * m));
            }
        }
    for (int r = 0; r <= 2; ++r) {
        auto p = paper2x2_ordering(r).labels, c = canonical_ordering(g22, r).labels;
        std::sort(p.begin(), p.end());
        std::sort(c.begin(), c.end());
        EXPECT_EQ(p, c);
    }
}

TEST(Ordering, FixedOrderingRejectsOtherShapes) {
    EXPECT_THROW(assemble_d(GridShape::torus(3, 2), 0, OrderingKind::Paper2x2), ordering_shape_mismatch);
    EXPECT_THROW(assemble_dirac(GridShape::torus(2, 3), OrderingKind::Paper2x2), ordering_shape_mismatch);
    EXPECT_THROW(assemble_d(GridShape::window(2, 2), 0), error);
}

TEST(FixtureMatrices, FirstOrderOperatorsMatchFixtures) {
    const auto a = oracle::fixture_matrix("A"), b = oracle::fixture_matrix("B");
    EXPECT_EQ(assemble_d(g22, 0, OrderingKind::Paper2x2).entries, a);
    EXPECT_EQ(assemble_d(g22, 1, OrderingKind::Paper2x2).entries, b);
    EXPECT_EQ(assemble_delta(g22, 1, OrderingKind::Paper2x2).entries, a.transpose());
    EXPECT_EQ(assemble_delta(g22, 2, OrderingKind::Paper2x2).entries, b.transpose());
}

TEST(FixtureMatrices, LaplaciansMatchFixtures) {
    const auto dm = oracle::fixture_matrix("D"), d1 = oracle::fixture_matrix("D1");
    EXPECT_EQ(assemble_laplacian(g22, 0, OrderingKind::Paper2x2).entries, dm);
    EXPECT_EQ(assemble_laplacian(g22, 1, OrderingKind::Paper2x2).entries, d1);
    EXPECT_EQ(assemble_laplacian(g22, 2, OrderingKind::Paper2x2).entries, dm);
}

TEST(FixtureMatrices, FixtureCompositionIdentities) {
    const auto a = oracle::fixture_matrix("A"), b = oracle::fixture_matrix("B");
    EXPECT_EQ(a.transpose() * a, oracle::fixture_matrix("D"));
    EXPECT_EQ(a * a.transpose() + b.transpose() * b, oracle::fixture_matrix("D1"));
    EXPECT_EQ(b * b.transpose(), oracle::fixture_matrix("D"));
}

TEST(FixtureMatrices, DiracBlockMatrix) {
    const auto m = assemble_dirac(g22, OrderingKind::Paper2x2);
    EXPECT_EQ(m.entries.rows(), 16u);
    EXPECT_EQ(m.entries, block_dirac(oracle::fixture_matrix("A"), oracle::fixture_matrix("B")));
    EXPECT_TRUE(m.entries.is_symmetric());
}

TEST(FixtureMatrices, ConstantsAreAnnihilated) {
    const std::vector<double> ones(4, 1.0);
    for (double y : dec::apply(assemble_d(g22, 0, OrderingKind::Paper2x2), ones)) EXPECT_EQ(y, 0.0);
    for (double y : dec::apply(assemble_laplacian(g22, 0, OrderingKind::Paper2x2), ones)) EXPECT_EQ(y, 0.0);
}

TEST(Assembly, MatchesIndependentStencil) {
    for (int n = 1; n <= 6; ++n)
        for (int m = 1; m <= 6; ++m) {
            const auto g = GridShape::torus(n, m);
            EXPECT_EQ(assemble_d(g, 0).entries, oracle::stencil_d0(n, m)) << n << "x" << m;
            EXPECT_EQ(assemble_d(g, 1).entries, oracle::stencil_d1(n, m)) << n << "x" << m;
        }
}

TEST(Assembly, NilpotentCompositions) {
    for (int n = 1; n <= 6; ++n)
        for (int m = 1; m <= 6; ++m) {
            const auto g = GridShape::torus(n, m);
            const std::size_t nm = static_cast<std::size_t>(n) * m;
            EXPECT_EQ(assemble_d(g, 1).entries * assemble_d(g, 0).entries, zero(nm, nm));
            EXPECT_EQ(assemble_delta(g, 1).entries * assemble_delta(g, 2).entries, zero(nm, nm));
        }
}

TEST(Assembly, DeltaIsTransposeOfDInCanonicalOrder) {
    for (int n = 1; n <= 5; ++n)
        for (int m = 1; m <= 5; ++m) {
            const auto g = GridShape::torus(n, m);
            EXPECT_EQ(assemble_delta(g, 1).entries, assemble_d(g, 0).entries.transpose());
            EXPECT_EQ(assemble_delta(g, 2).entries, assemble_d(g, 1).entries.transpose());
        }
}

TEST(Assembly, LaplacianCompositionIdentities) {
    for (int n = 1; n <= 5; ++n)
        for (int m = 1; m <= 5; ++m) {
            const auto g = GridShape::torus(n, m);
            const auto a = oracle::stencil_d0(n, m), b = oracle::stencil_d1(n, m);
            EXPECT_EQ(assemble_laplacian(g, 0).entries, a.transpose() * a);
            EXPECT_EQ(assemble_laplacian(g, 1).entries, a * a.transpose() + b.transpose() * b);
            EXPECT_EQ(assemble_laplacian(g, 2).entries, b * b.transpose());
        }
}

TEST(Assembly, LaplaciansSymmetricWithZeroRowSums) {
    for (int n = 1; n <= 5; ++n)
        for (int m = 1; m <= 5; ++m)
            for (int r = 0; r <= 2; ++r) {
                const auto l = assemble_laplacian(GridShape::torus(n, m), r).entries;
                EXPECT_TRUE(l.is_symmetric());
                for (std::size_t i = 0; i < l.rows(); ++i) {
                    EXPECT_GE(l(i, i), 0);
                    std::int64_t sum = 0;
                    for (std::size_t j = 0; j < l.cols(); ++j) sum += l(i, j);
                    // Degree 1 rows mix both edge directions; their sum still vanishes on the torus.
                    EXPECT_EQ(sum, 0) << n << "x" << m << " degree " << r << " row " << i;
                }
            }
}

TEST(Assembly, DiracSquaredIsBlockLaplacian) {
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 4; ++m) {
            const auto g = GridShape::torus(n, m);
            const auto dirac_m = assemble_dirac(g).entries;
            EXPECT_TRUE(dirac_m.is_symmetric());
            const auto sq = dirac_m * dirac_m;
            const std::size_t nm = static_cast<std::size_t>(n) * m;
            IntMatrix expected(4 * nm, 4 * nm);
            const std::size_t offsets[3] = {0, nm, 3 * nm};
            for (int r = 0; r <= 2; ++r) {
                const auto l = assemble_laplacian(g, r).entries;
                for (std::size_t i = 0; i < l.rows(); ++i)
                    for (std::size_t j = 0; j < l.cols(); ++j) expected(offsets[r] + i, offsets[r] + j) = l(i, j);
            }
            EXPECT_EQ(sq, expected) << n << "x" << m;
        }
}

TEST(Apply, MatchesFormOperatorsExactly) {
    Rng rng(13);
    for (const auto& g : {GridShape::torus(2, 2), GridShape::torus(3, 4), GridShape::torus(5, 1)})
        for (auto kind : {OrderingKind::Canonical, OrderingKind::Paper2x2}) {
            if (kind == OrderingKind::Paper2x2 && !(g.n == 2 && g.m == 2)) continue;
            for (int t = 0; t < 10; ++t) {
                for (int r = 0; r <= 1; ++r) {
                    const Form w = random_integer_form(g, r, rng);
                    const auto m = assemble_d(g, r, kind);
                    EXPECT_EQ(devectorize(dec::apply(m, vectorize(w, m.cols)), g, m.rows), d(w));
                }
                for (int r = 1; r <= 2; ++r) {
                    const Form w = random_integer_form(g, r, rng);
                    const auto m = assemble_delta(g, r, kind);
                    EXPECT_EQ(devectorize(dec::apply(m, vectorize(w, m.cols)), g, m.rows), delta(w));
                }
                for (int r = 0; r <= 2; ++r) {
                    const Form w = random_integer_form(g, r, rng);
                    const auto m = assemble_laplacian(g, r, kind);
                    EXPECT_EQ(devectorize(dec::apply(m, vectorize(w, m.cols)), g, m.rows), laplacian(w));
                }
                const InhomogeneousForm w(random_integer_form(g, 0, rng), random_integer_form(g, 1, rng),
                                          random_integer_form(g, 2, rng));
                const auto m = assemble_dirac(g, kind);
                EXPECT_EQ(devectorize_graded(dec::apply(m, vectorize(w, m.cols)), g, m.rows), dirac(w));
            }
        }
}

TEST(Apply, ChangeOfOrderingIsConsistent) {
    Rng rng(14);
    const auto canon = assemble_d(g22, 0), fixed = assemble_d(g22, 0, OrderingKind::Paper2x2);
    for (int t = 0; t < 10; ++t) {
        const Form w = random_integer_form(g22, 0, rng);
        EXPECT_EQ(devectorize(dec::apply(canon, vectorize(w, canon.cols)), g22, canon.rows),
                  devectorize(dec::apply(fixed, vectorize(w, fixed.cols)), g22, fixed.rows));
    }
}

TEST(Apply, DimensionMismatchThrows) {
    const auto m = assemble_d(g22, 0);
    const std::vector<double> x(3, 0.0);
    EXPECT_THROW(dec::apply(m, x), dimension_mismatch);
}

TEST(AssembleNamed, DispatchesEveryOperator) {
    for (const auto& op : operator_names()) EXPECT_EQ(assemble_named(g22, op, OrderingKind::Canonical).op, op);
    EXPECT_THROW(assemble_named(g22, "curl", OrderingKind::Canonical), error);
}
