#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "symdisk/errors.hpp"
#include "symdisk/numrange.hpp"
#include "test_util.hpp"

using namespace symdisk;
using symdisk::test::mat;

TEST(SupportFunction, Examples) {
    for (double th : {0.0, 0.7, 2.0, 4.5}) {
        EXPECT_NEAR(support_function(ComplexMatrix::Identity(2, 2), th), std::cos(th), 1e-14);
        EXPECT_NEAR(support_function(ComplexMatrix::Zero(2, 2), th), 0.0, 1e-14);
        EXPECT_NEAR(support_function(mat({{0, 2}, {0, 0}}), th), 1.0, 1e-14);
    }
}

TEST(NumericalRadius, Examples) {
    EXPECT_NEAR(numerical_radius(mat({{0.5, 1}, {0, 0.5}})), 1.0, 1e-10);
    EXPECT_NEAR(numerical_radius(ComplexMatrix::Identity(2, 2)), 1.0, 1e-10);
    EXPECT_NEAR(numerical_radius(mat({{0, 2}, {0, 0}})), 1.0, 1e-10);
}

TEST(NumericalRadius, TwoByTwoClosedForm) {
    // ν([[a, b], [0, a]]) = |a| + |b|/2.
    std::mt19937_64 rng(2);
    for (int t = 0; t < 30; ++t) {
        const Complex a = test::disk_point(rng, 1.0), b = test::disk_point(rng, 2.0);
        EXPECT_NEAR(numerical_radius(mat({{a, b}, {0, a}})), std::abs(a) + std::abs(b) / 2, 1e-10);
    }
}

TEST(NumericalRadius, HomogeneousAndAboveSpectralRadius) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 30; ++t) {
        const ComplexMatrix f = test::gaussian(rng, 1 + t % 5, 1 + t % 5);
        const Complex alpha = test::disk_point(rng, 3.0);
        const double nu = numerical_radius(f);
        EXPECT_NEAR(numerical_radius(alpha * f), std::abs(alpha) * nu, 1e-9 * std::max(1.0, std::abs(alpha) * nu));
        EXPECT_GE(nu, spectral_radius(f) - 1e-9);
        EXPECT_LE(nu, op_norm(f) + 1e-12);
        EXPECT_GE(nu, op_norm(f) / 2 - 1e-12);
    }
}

TEST(IsCnu, Examples) {
    EXPECT_TRUE(is_cnu(mat({{0, 2}, {0, 0}})).cnu);
    const auto v = is_cnu(ComplexMatrix::Identity(2, 2));
    EXPECT_FALSE(v.cnu);
    ASSERT_EQ(v.witnesses.size(), 1u);
    EXPECT_NEAR(std::abs(v.witnesses[0] - 1.0), 0.0, 1e-12);
    EXPECT_TRUE(is_cnu(mat({{0.5, 1}, {0, 0.5}})).cnu);
    EXPECT_THROW(is_cnu(mat({{2, 0}, {0, 0}})), InputError);
}

TEST(CnuDecompose, Examples) {
    auto d = cnu_decompose(mat({{1, 0}, {0, 0.5}}));
    ASSERT_EQ(d.unitary_eigenvalues.size(), 1u);
    EXPECT_NEAR(std::abs(d.unitary_eigenvalues[0].value - 1.0), 0.0, 1e-12);
    ASSERT_EQ(d.cnu_block.rows(), 1);
    EXPECT_NEAR(std::abs(d.cnu_block(0, 0) - 0.5), 0.0, 1e-12);

    std::mt19937_64 rng(1);
    const ComplexMatrix u = test::haar(rng, 3);
    d = cnu_decompose(u);
    EXPECT_EQ(d.unitary_dim(), 3u);
    EXPECT_EQ(d.cnu_block.rows(), 0);

    const ComplexMatrix royal = mat({{0, 2}, {0, 0}});
    d = cnu_decompose(royal);
    EXPECT_EQ(d.unitary_dim(), 0u);
    EXPECT_NEAR((d.transform * d.cnu_block * d.transform.adjoint() - royal).norm(), 0.0, 1e-12);
}

TEST(CnuDecompose, ReassemblesRandomMixtures) {
    std::mt19937_64 rng(44);
    for (int t = 0; t < 30; ++t) {
        const int r = 1 + t % 3, c = t % 3;
        ComplexMatrix block = ComplexMatrix::Zero(r + c, r + c);
        for (int i = 0; i < r; ++i) block(i, i) = std::polar(1.0, 0.4 + 1.3 * i + 0.1 * t);
        if (c > 0) {
            ComplexMatrix g = test::gaussian(rng, c, c);
            block.bottomRightCorner(c, c) = g * (0.9 / numerical_radius(g));
        }
        const ComplexMatrix v = test::haar(rng, r + c);
        const ComplexMatrix f = v * block * v.adjoint();
        const auto d = cnu_decompose(f);
        EXPECT_EQ(d.unitary_dim(), static_cast<std::size_t>(r));
        EXPECT_LE((d.transform * d.block_diagonal() * d.transform.adjoint() - f).norm(), 1e-9);
        if (d.cnu_block.rows() > 0) EXPECT_TRUE(is_cnu(d.cnu_block).cnu);
    }
}

TEST(PuCompress, Examples) {
    std::mt19937_64 rng(5);
    const ComplexMatrix u = test::haar(rng, 3);
    EXPECT_NEAR((pu_compress(ComplexMatrix::Identity(3, 3), u) - u).norm(), 0.0, 1e-14);
    EXPECT_NEAR((pu_compress(ComplexMatrix::Zero(3, 3), u) - u.adjoint()).norm(), 0.0, 1e-14);
    EXPECT_NEAR((pu_compress(mat({{1, 0}, {0, 0}}), mat({{0, 1}, {1, 0}})) - mat({{0, 2}, {0, 0}})).norm(), 0.0, 1e-15);
    EXPECT_THROW(pu_compress(mat({{1, 1}, {0, 0}}), u.topLeftCorner(2, 2)), InputError);
}

TEST(PuCompress, AlwaysNumericalContraction) {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 60; ++t) {
        const int n = 1 + t % 6;
        const ComplexMatrix v = test::haar(rng, n);
        const int k = t % (n + 1);
        const ComplexMatrix p = v.leftCols(k) * v.leftCols(k).adjoint();
        EXPECT_LE(numerical_radius(pu_compress(p, test::haar(rng, n))), 1.0 + 1e-9);
    }
}

TEST(VerifyPuReducing, Examples) {
    const ComplexMatrix p = mat({{1, 0}, {0, 0}});
    const ComplexMatrix u = mat({{0, 1}, {1, 0}});
    EXPECT_FALSE(verify_pu_reducing(p, u, {}));
    std::vector<ComplexVector> full{ComplexVector::Unit(2, 0), ComplexVector::Unit(2, 1)};
    EXPECT_TRUE(verify_pu_reducing(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2), full));
    for (double th = 0; th < 3.1; th += 0.5) {
        ComplexVector h(2);
        h << std::cos(th), std::sin(th) * Complex(0.6, 0.8);
        std::vector<ComplexVector> one{h};
        EXPECT_FALSE(verify_pu_reducing(p, u, one));
    }
    EXPECT_FALSE(find_pu_witness(p, u).has_value());
}

TEST(FindPuWitness, FindsPlantedReducingSubspace) {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 20; ++t) {
        const int n = 3;
        ComplexMatrix pb = ComplexMatrix::Zero(n, n), ub = ComplexMatrix::Zero(n, n);
        pb(0, 0) = t % 2;
        ub(0, 0) = std::polar(1.0, 0.3 + t);
        ub.bottomRightCorner(2, 2) = test::haar(rng, 2);
        const ComplexMatrix w = test::haar(rng, 2);
        pb.bottomRightCorner(2, 2) = w.leftCols(1) * w.leftCols(1).adjoint();
        const ComplexMatrix v = test::haar(rng, n);
        const ComplexMatrix p = v * pb * v.adjoint(), u = v * ub * v.adjoint();
        EXPECT_FALSE(is_cnu(pu_compress(p, u)).cnu);
        const auto h = find_pu_witness(p, u);
        ASSERT_TRUE(h.has_value());
        EXPECT_TRUE(verify_pu_reducing(p, u, *h));
    }
}
