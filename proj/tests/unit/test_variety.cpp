#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "symdisk/errors.hpp"
#include "symdisk/numrange.hpp"
#include "symdisk/variety.hpp"
#include "test_util.hpp"

using namespace symdisk;
using symdisk::test::mat;

namespace {

Complex det_pencil(const ComplexMatrix& f, Complex s, Complex p) {
    const auto n = f.rows();
    return (f.adjoint() + p * f - s * ComplexMatrix::Identity(n, n)).determinant();
}

ComplexMatrix random_contraction(std::mt19937_64& rng, int n, double nu) {
    const ComplexMatrix g = test::gaussian(rng, n, n);
    return g * (nu / numerical_radius(g));
}

}  // namespace

TEST(DefiningPoly, JordanExample) {
    const BivarPoly poly = defining_poly(PencilVariety(mat({{0.5, 1}, {0, 0.5}}))).normalized();
    // ((1+p) − 2s)² − 4p, divided by its s² coefficient 4.
    EXPECT_NEAR(std::abs(poly.coefficient(2, 0) - 1.0), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(poly.coefficient(1, 0) + 1.0), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(poly.coefficient(1, 1) + 1.0), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(poly.coefficient(0, 0) - 0.25), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(poly.coefficient(0, 1) + 0.5), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(poly.coefficient(0, 2) - 0.25), 0.0, 1e-10);
    EXPECT_EQ(poly.deg_s(), 2u);
    EXPECT_EQ(poly.deg_p(), 2u);
}

TEST(DefiningPoly, RoyalAndScalar) {
    const BivarPoly royal = defining_poly(PencilVariety(mat({{0, 2}, {0, 0}}))).normalized();
    EXPECT_NEAR(std::abs(royal.coefficient(2, 0) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(royal.coefficient(0, 1) + 4.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(royal.coefficient(1, 0)) + std::abs(royal.coefficient(0, 0)) + std::abs(royal.coefficient(1, 1)),
                0.0, 1e-12);
    EXPECT_EQ(royal.to_string(), "s^2 - 4*p");

    const Complex beta = std::polar(0.7, 0.9);
    const BivarPoly scalar = defining_poly(PencilVariety(mat({{std::conj(beta)}})));
    // F = [β̄] gives F* + pF − s = β + β̄p − s, the sheet through β.
    for (const auto& [s, p] : std::vector<std::pair<Complex, Complex>>{{0.1, 0.2}, {Complex(0.3, 1), -0.4}})
        EXPECT_NEAR(std::abs(scalar(s, p) - (beta + p * std::conj(beta) - s)), 0.0, 1e-12);
}

TEST(DefiningPoly, MatchesDeterminantRandom) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 30; ++t) {
        const int n = 1 + t % 6;
        const ComplexMatrix f = random_contraction(rng, n, 0.95);
        const BivarPoly poly = defining_poly(PencilVariety(f));
        for (int k = 0; k < 5; ++k) {
            const Complex s = test::disk_point(rng, 2.0), p = test::disk_point(rng, 1.0);
            const Complex d = det_pencil(f, s, p);
            EXPECT_LE(std::abs(poly(s, p) - d), 1e-9 * std::max(1.0, std::abs(d)));
        }
    }
}

TEST(PencilVariety, RejectsNonContraction) {
    EXPECT_THROW(PencilVariety(mat({{2, 0}, {0, 0}})), InputError);
    EXPECT_THROW(PencilVariety(mat({{1, 2, 3}})), InputError);
}

TEST(SlicePoints, Examples) {
    auto s = slice_points(PencilVariety(mat({{0, 2}, {0, 0}})), 0.25);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_NEAR(std::abs(s[0] + 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s[1] - 1.0), 0.0, 1e-12);
    s = slice_points(PencilVariety(mat({{0.5, 1}, {0, 0.5}})), 0.0);
    for (const auto& z : s) EXPECT_NEAR(std::abs(z - 0.5), 0.0, 1e-7);
}

TEST(SlicePoints, ZeroSliceIsAdjointSpectrumInClosedDisk) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix f = random_contraction(rng, 1 + t % 5, 1.0);
        const PencilVariety v(f);
        for (const auto& s : slice_points(v, 0.0)) {
            EXPECT_LE(std::abs(s), 1.0 + 1e-9);
            EXPECT_LE(membership_residual(v, {s, 0.0}), 1e-9);
        }
    }
}

TEST(MembershipResidual, Examples) {
    const PencilVariety jordan(mat({{0.5, 1}, {0, 0.5}}));
    EXPECT_GT(membership_residual(jordan, {0.0, 0.0}), 0.1);
    EXPECT_LE(membership_residual(PencilVariety(mat({{0, 2}, {0, 0}})), {1.0, 0.25}), 1e-14);
    const Complex beta = std::polar(1.0, 0.4);
    const Complex p = Complex(0.2, -0.3);
    EXPECT_LE(membership_residual(PencilVariety(mat({{std::conj(beta)}})), {beta + std::conj(beta) * p, p}), 1e-14);
}

TEST(IsDistinguished, Examples) {
    EXPECT_TRUE(is_distinguished(PencilVariety(mat({{0.5, 1}, {0, 0.5}}))).distinguished);
    EXPECT_TRUE(is_distinguished(PencilVariety(mat({{0, 2}, {0, 0}}))).distinguished);
    const auto id = is_distinguished(PencilVariety(ComplexMatrix::Identity(2, 2)));
    EXPECT_FALSE(id.distinguished);
    ASSERT_FALSE(id.witnesses.empty());
    EXPECT_NEAR(std::abs(id.witnesses[0] - 1.0), 0.0, 1e-12);
}

TEST(RegionAudit, Examples) {
    auto rep = region_audit(PencilVariety(mat({{0, 2}, {0, 0}})), disk_p_grid(0.95, 12));
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.count(Region::OpenG), rep.total());

    rep = region_audit(PencilVariety(mat({{1}})), disk_p_grid(0.95, 12));
    EXPECT_FALSE(rep.cnu);
    EXPECT_GT(rep.count(Region::R1), 0u);
    EXPECT_FALSE(rep.strict_pass);
    EXPECT_TRUE(rep.general_pass);
    for (const auto& x : rep.r1_hits) EXPECT_NEAR(std::abs(x.s - (1.0 + x.p)), 0.0, 1e-12);

    rep = region_audit(PencilVariety(mat({{0}})), default_p_grid());
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.count(Region::R1) + rep.count(Region::R2), 0u);
}

TEST(RegionAudit, NoR2ForAnyNumericalContraction) {
    std::mt19937_64 rng(13);
    const auto grid = default_p_grid();
    for (int t = 0; t < 40; ++t) {
        const int n = 1 + t % 5;
        ComplexMatrix f = random_contraction(rng, n, 0.5 + 0.5 * (t % 2));
        if (t % 3 == 0 && n > 1) {
            // Unitary summand β ⊕ (c.n.u. block), so the variety carries the sheet through β.
            f.row(0).setZero();
            f.col(0).setZero();
            f(0, 0) = std::polar(1.0, 0.2 * t);
        }
        const auto rep = region_audit(PencilVariety(f), grid);
        EXPECT_EQ(rep.count(Region::R2), 0u);
        EXPECT_EQ(rep.strict_pass, is_cnu(f).cnu);
    }
}

TEST(RoyalContainment, Examples) {
    const Complex beta = std::polar(1.0, 1.1);
    auto rc = royal_containment(PencilVariety(mat({{std::conj(beta)}})), beta);
    EXPECT_TRUE(rc.certified);
    rc = royal_containment(PencilVariety(mat({{0, 2}, {0, 0}})), 1.0);
    EXPECT_FALSE(rc.certified);
    EXPECT_FALSE(rc.det_identically_zero);
    rc = royal_containment(PencilVariety(mat({{1, 0}, {0, 0.5}})), 1.0);
    EXPECT_TRUE(rc.joint_kernel);
    EXPECT_TRUE(rc.certified);
}

TEST(DistinguishedPropertyCheck, Examples) {
    const auto grid = default_p_grid();
    EXPECT_TRUE(distinguished_property_check(PencilVariety(mat({{0, 2}, {0, 0}})), grid, PropertyScope::FullVariety));
    EXPECT_TRUE(
        distinguished_property_check(PencilVariety(ComplexMatrix::Identity(2, 2)), grid, PropertyScope::GIntersection));
    EXPECT_FALSE(distinguished_property_check(PencilVariety(mat({{1, 0}, {0, 0}})), grid, PropertyScope::FullVariety));
}

TEST(Variety, PuFamilySatisfiesAudits) {
    std::mt19937_64 rng(90);
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + t % 3;
        const ComplexMatrix v = test::haar(rng, n);
        const ComplexMatrix p = v.leftCols(1) * v.leftCols(1).adjoint();
        const ComplexMatrix f = pu_compress(p, test::haar(rng, n));
        const PencilVariety var(f);
        const auto rep = region_audit(var, default_p_grid());
        EXPECT_EQ(rep.count(Region::R2), 0u);
        EXPECT_EQ(rep.strict_pass, is_cnu(f).cnu);
    }
}
