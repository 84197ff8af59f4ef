#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "symdisk/errors.hpp"
#include "symdisk/linalg.hpp"
#include "test_util.hpp"

using namespace symdisk;
using symdisk::test::mat;

TEST(Spectrum, NilpotentIdentityAndJordan) {
    auto s = spectrum(mat({{0, 2}, {0, 0}}));
    ASSERT_EQ(s.size(), 2u);
    EXPECT_LT(std::abs(s[0]) + std::abs(s[1]), 1e-12);
    s = spectrum(ComplexMatrix::Identity(2, 2));
    EXPECT_NEAR(std::abs(s[0] - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(s[1] - 1.0), 0.0, 1e-14);
    s = spectrum(mat({{0.5, 1}, {0, 0.5}}));
    for (const auto& z : s) EXPECT_NEAR(std::abs(z - 0.5), 0.0, 1e-7);
}

TEST(Spectrum, SortedByRealThenImaginary) {
    const auto s = spectrum(mat({{2, 0, 0}, {0, Complex(0, 1), 0}, {0, 0, Complex(0, -1)}}));
    ASSERT_EQ(s.size(), 3u);
    EXPECT_NEAR(s[0].imag(), -1.0, 1e-14);
    EXPECT_NEAR(s[1].imag(), 1.0, 1e-14);
    EXPECT_NEAR(s[2].real(), 2.0, 1e-14);
}

TEST(Spectrum, UnitaryEigenvaluesOnCircle) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix u = test::haar(rng, 1 + t % 6);
        for (const auto& z : spectrum(u)) EXPECT_NEAR(std::abs(z), 1.0, 1e-10);
    }
}

TEST(Spectrum, ClusterCountsMultiplicity) {
    const auto c = cluster_eigenvalues({Complex(0, 0), Complex(1e-10, 0), Complex(1, 0)}, 1e-8);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0].multiplicity + c[1].multiplicity, 3u);
}

TEST(HermitianEig, Examples) {
    auto e = hermitian_eig(mat({{1, 0}, {0, 2}}));
    EXPECT_NEAR(e.values(0), 1.0, 1e-14);
    EXPECT_NEAR(e.values(1), 2.0, 1e-14);
    e = hermitian_eig(mat({{0, 1}, {1, 0}}));
    EXPECT_NEAR(e.values(0), -1.0, 1e-14);
    EXPECT_NEAR(e.values(1), 1.0, 1e-14);
}

TEST(HermitianEig, RandomReconstruction) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix g = test::gaussian(rng, 1 + t % 8, 1 + t % 8);
        const ComplexMatrix h = g + g.adjoint();
        const auto e = hermitian_eig(h);
        const ComplexMatrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
        EXPECT_LE((back - h).norm(), 1e-12 * op_norm(h) * 10);
    }
}

TEST(HermitianEig, RejectsNonHermitian) {
    EXPECT_THROW(hermitian_eig(mat({{0, 1}, {0, 0}})), InputError);
}

TEST(NullSpace, Examples) {
    auto ns = null_space(mat({{0, 2}, {0, 0}}), 1e-10);
    ASSERT_EQ(ns.size(), 1u);
    EXPECT_NEAR(std::abs(ns[0](0)), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(ns[0](1)), 0.0, 1e-14);

    const Complex z = 0.5;
    const ComplexMatrix f = mat({{0, 2}, {0, 0}});
    const ComplexMatrix pencil = f + std::conj(z * z) * f.adjoint() - std::conj(2.0 * z) * ComplexMatrix::Identity(2, 2);
    ns = null_space(pencil, 1e-10);
    ASSERT_EQ(ns.size(), 1u);
    ComplexVector expected(2);
    expected << 1.0, 0.5;
    expected.normalize();
    EXPECT_NEAR((ns[0] - expected).norm(), 0.0, 1e-12);

    EXPECT_TRUE(null_space(ComplexMatrix::Identity(2, 2), 1e-10).empty());
}

TEST(PsdSqrt, Examples) {
    EXPECT_NEAR((psd_sqrt(mat({{4, 0}, {0, 9}})) - mat({{2, 0}, {0, 3}})).norm(), 0.0, 1e-14);
    EXPECT_NEAR(psd_sqrt(ComplexMatrix::Zero(2, 2)).norm(), 0.0, 1e-14);
    EXPECT_THROW(psd_sqrt(mat({{1, 0}, {0, -1}})), InputError);
}

TEST(PsdSqrt, RandomSquareBack) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 30; ++t) {
        const int n = 1 + t % 8;
        const ComplexMatrix g = test::gaussian(rng, n, n);
        const ComplexMatrix m = g * g.adjoint();
        const ComplexMatrix r = psd_sqrt(m);
        EXPECT_LE((r * r - m).norm(), 1e-10 * scale_of(m));
        EXPECT_TRUE(is_hermitian(r, 1e-12 * scale_of(r)));
    }
}

TEST(SpectralProjection, Examples) {
    auto p = spectral_projection(mat({{0, 0}, {0, 2}}), 0.0, 1.0, 64);
    EXPECT_NEAR((p.matrix - mat({{1, 0}, {0, 0}})).norm(), 0.0, 1e-12);
    EXPECT_EQ(p.enclosed_count, 1u);
    p = spectral_projection(mat({{0, 1}, {0, 0}}), 0.0, 1.0, 64);
    EXPECT_NEAR((p.matrix - ComplexMatrix::Identity(2, 2)).norm(), 0.0, 1e-12);
}

TEST(SpectralProjection, RoyalBranchAgainstEigenvectors) {
    const ComplexMatrix f = mat({{0, 2}, {0, 0}});
    const double z = 0.01;
    const ComplexMatrix a = f + z * f.adjoint();
    const auto p = spectral_projection(a, 0.2, 0.05, 64);
    EXPECT_EQ(p.enclosed_count, 1u);
    EXPECT_LE((p.matrix * p.matrix - p.matrix).norm(), 1e-10);
    // Oracle: eigenvalue 0.2 with right vector (1, 0.1), left vector (1, 10)/2.
    ComplexMatrix oracle(2, 2);
    oracle << 0.5, 5.0, 0.05, 0.5;
    EXPECT_NEAR((p.matrix - oracle).norm(), 0.0, 1e-10);
}

TEST(SpectralProjection, AllOrNoneEnclosed) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 10; ++t) {
        const ComplexMatrix a = test::gaussian(rng, 4, 4) * 0.3;
        const double r = spectral_radius(a);
        const auto all = spectral_projection(a, 0.0, r * 2 + 0.1, 64);
        EXPECT_LE((all.matrix - ComplexMatrix::Identity(4, 4)).norm(), 1e-8);
        const auto none = spectral_projection(a, 10.0, 1.0, 64);
        EXPECT_LE(none.matrix.norm(), 1e-8);
    }
}

TEST(SpectralProjection, IllPlacedContourThrows) {
    EXPECT_THROW(spectral_projection(mat({{1, 0}, {0, 0}}), 0.0, 1.0, 64), NumericalError);
}

TEST(CompleteToUnitary, Examples) {
    ComplexVector e1 = ComplexVector::Unit(2, 0);
    std::vector<ComplexVector> dom{e1}, ran{e1};
    const ComplexMatrix u = complete_to_unitary(dom, ran, 2);
    EXPECT_TRUE(is_unitary(u, 1e-12));
    EXPECT_NEAR((u * e1 - e1).norm(), 0.0, 1e-12);
    const ComplexMatrix id = complete_to_unitary({}, {}, 2);
    EXPECT_NEAR((id - ComplexMatrix::Identity(2, 2)).norm(), 0.0, 0.0);
}

TEST(CompleteToUnitary, RandomIsometricFamilies) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + t % 5;
        const int k = 1 + t % n;
        const ComplexMatrix w = test::haar(rng, n);
        const ComplexMatrix x = test::gaussian(rng, n, k);
        // Families with equal Gram matrices, including a dependent column.
        std::vector<ComplexVector> dom, ran;
        for (int j = 0; j < k; ++j) {
            dom.emplace_back(x.col(j));
            ran.emplace_back(w * x.col(j));
        }
        dom.emplace_back(x.col(0) + x.col(k - 1));
        ran.emplace_back(w * (x.col(0) + x.col(k - 1)));
        const ComplexMatrix u = complete_to_unitary(dom, ran, n);
        EXPECT_LE((u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm(), 1e-12);
        for (std::size_t j = 0; j < dom.size(); ++j) EXPECT_LE((u * dom[j] - ran[j]).norm(), 1e-10);
    }
}

TEST(CompleteToUnitary, GramMismatchThrows) {
    std::vector<ComplexVector> dom{ComplexVector::Unit(2, 0)};
    std::vector<ComplexVector> ran{2.0 * ComplexVector::Unit(2, 1)};
    EXPECT_THROW(complete_to_unitary(dom, ran, 2), InputError);
}

TEST(NormalizePhase, LargestEntryRealPositive) {
    ComplexVector v(3);
    v << Complex(0, 1), Complex(0, -3), 1.0;
    const ComplexVector n = normalize_phase(v);
    EXPECT_NEAR(n.norm(), 1.0, 1e-14);
    EXPECT_NEAR(n(1).imag(), 0.0, 1e-14);
    EXPECT_GT(n(1).real(), 0.0);
}

TEST(Tolerances, NamedAccess) {
    Tolerances t;
    EXPECT_TRUE(t.set("mod", 1e-7));
    EXPECT_DOUBLE_EQ(*t.get("mod"), 1e-7);
    EXPECT_FALSE(t.set("nope", 1.0));
    EXPECT_FALSE(t.get("nope").has_value());
    EXPECT_TRUE(t.set("n-quad", 128));
    EXPECT_EQ(t.n_quad, 128u);
}
