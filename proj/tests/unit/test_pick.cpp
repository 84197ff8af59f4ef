#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "symdisk/errors.hpp"
#include "symdisk/extend.hpp"
#include "symdisk/numrange.hpp"
#include "symdisk/pick.hpp"
#include "test_util.hpp"

using namespace symdisk;
using symdisk::test::mat;

namespace {

// Disk-type kernel on the sheet {s = 0}: k((0,p),(0,q)) = 1/(1 − p q̄).
Complex sheet_kernel(const GammaPoint& x, const GammaPoint& y) { return 1.0 / (1.0 - x.p * std::conj(y.p)); }

std::vector<GammaPoint> random_g_points(std::mt19937_64& rng, int n, double r) {
    std::vector<GammaPoint> pts;
    for (int i = 0; i < n; ++i) pts.push_back(symmetrize(test::disk_point(rng, r), test::disk_point(rng, r)));
    return pts;
}

}  // namespace

TEST(PickData, Validation) {
    PickData ok{{{0.0, 0.0}, {0.0, 0.5}}, {0.0, 0.5}};
    EXPECT_NO_THROW(ok.validate());
    EXPECT_THROW((PickData{{{3.0, 0.0}}, {0.0}}.validate()), InputError);
    EXPECT_THROW((PickData{{{0.0, 0.0}}, {1.5}}.validate()), InputError);
    EXPECT_THROW((PickData{{{0.0, 0.0}, {0.0, 0.0}}, {0.0, 0.1}}.validate()), InputError);
    EXPECT_THROW((PickData{{{0.0, 0.0}}, {0.0, 0.1}}.validate()), InputError);
}

TEST(PickMatrix, Examples) {
    const PickData d10{{{0.0, 0.0}, {0.0, 0.5}}, {0.0, 0.5}};
    const ComplexMatrix p10 = pick_matrix(d10, sheet_kernel);
    EXPECT_NEAR((p10 - mat({{1, 1}, {1, 1}})).norm(), 0.0, 1e-12);

    // Royal-model kernel with u₁ = (1,0), u₂ = (2,1)/√5.
    const ExtensionModel royal = model_from_matrix(mat({{0, 2}, {0, 0}}));
    const std::vector<GammaPoint> nr{{0.0, 0.0}, {1.0, 0.25}};
    const KernelMatrix kr = KernelMatrix::from_kernel(nr, model_kernel(royal));
    const std::vector<Complex> wr{0.0, -0.5};
    const double c = 2.0 / std::sqrt(5.0);
    EXPECT_NEAR((pick_matrix(kr, wr) - mat({{1, c}, {c, 0.8}})).norm(), 0.0, 1e-12);

    EXPECT_NEAR((pick_matrix(PickData{{{0.0, 0.0}}, {0.0}}, szego()) - mat({{1}})).norm(), 0.0, 1e-15);
}

TEST(PickMatrix, SzegoOnExtremalDatum) {
    const PickData d{{{0.0, 0.0}, {1.0, 0.25}}, {0.0, 0.5}};
    EXPECT_NEAR((pick_matrix(d, szego()) - mat({{1, 1}, {1, 64.0 / 27.0}})).norm(), 0.0, 1e-12);
}

TEST(PickMatrix, RejectsNonHermitianKernel) {
    const PickData d{{{0.0, 0.0}, {0.0, 0.5}}, {0.0, 0.5}};
    const KernelFn bad = [](const GammaPoint& x, const GammaPoint& y) { return 1.0 + x.p - 2.0 * y.p; };
    EXPECT_THROW(pick_matrix(d, bad), InputError);
}

TEST(PickMatrix, HermitianAndReorderInvariant) {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + t % 4;
        PickData d{random_g_points(rng, n, 0.9), {}};
        for (int i = 0; i < n; ++i) d.targets.push_back(test::disk_point(rng, 1.0));
        const ComplexMatrix m = pick_matrix(d, szego());
        EXPECT_LE((m - m.adjoint()).norm(), 1e-12 * scale_of(m));

        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        PickData e;
        for (int i : perm) {
            e.nodes.push_back(d.nodes[i]);
            e.targets.push_back(d.targets[i]);
        }
        const ComplexMatrix mp = pick_matrix(e, szego());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) EXPECT_EQ(mp(i, j), m(perm[i], perm[j]));
    }
}

TEST(PsdReport, Examples) {
    auto r = psd_report(mat({{1, 1}, {1, 1}}));
    EXPECT_NEAR(r.min_eigenvalue, 0.0, 1e-14);
    ASSERT_TRUE(r.null_vector.has_value());
    EXPECT_NEAR(r.null_vector->norm(), 1.0, 1e-14);
    EXPECT_NEAR(std::abs((*r.null_vector)(0) + (*r.null_vector)(1)), 0.0, 1e-14);

    r = psd_report(mat({{1, 1}, {1, 4.0 / 3.0}}));
    EXPECT_GT(r.min_eigenvalue, 0.0);
    EXPECT_FALSE(r.null_vector.has_value());

    EXPECT_LT(psd_report(mat({{1, 2}, {2, 1}})).min_eigenvalue, 0.0);
    EXPECT_THROW(psd_report(mat({{1, 2}, {0, 1}})), InputError);
}

TEST(PsdReport, SzegoSolvableDataArePsd) {
    // Targets f(λ) for f = φ(α, ·) are values of a Schur function on G.
    std::mt19937_64 rng(61);
    for (int t = 0; t < 30; ++t) {
        const int n = 1 + t % 5;
        const Complex alpha = test::disk_point(rng, 1.0);
        PickData d{random_g_points(rng, n, 0.9), {}};
        for (const auto& x : d.nodes) d.targets.push_back(phi_scalar(alpha, x));
        const ComplexMatrix m = pick_matrix(d, szego());
        EXPECT_GE(psd_report(m).min_eigenvalue, -1e-10 * scale_of(m));
    }
}

TEST(KernelBasisOperators, SingleNode) {
    const auto ops = kernel_basis_operators(KernelMatrix::from_table({{0.0, 0.0}}, mat({{1}})));
    EXPECT_NEAR(ops.Ms.norm() + ops.Mp.norm(), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(ops.D(0, 0) - 1.0), 0.0, 1e-15);
}

TEST(KernelBasisOperators, DiagonalOnKernelFunctionsRandom) {
    std::mt19937_64 rng(71);
    for (int t = 0; t < 20; ++t) {
        const int n = 1 + t % 5;
        const auto pts = random_g_points(rng, n, 0.9);
        const KernelMatrix k = KernelMatrix::from_kernel(pts, szego());
        const auto ops = kernel_basis_operators(k);
        EXPECT_LE((ops.node_vectors.adjoint() * ops.node_vectors - k.gram).norm(), 1e-10 * scale_of(k.gram));
        for (int j = 0; j < n; ++j) {
            const ComplexVector kj = ops.node_vectors.col(j);
            EXPECT_LE((ops.Mp.adjoint() * kj - std::conj(pts[j].p) * kj).norm(), 1e-8 * kj.norm());
            EXPECT_LE((ops.Ms.adjoint() * kj - std::conj(pts[j].s) * kj).norm(), 1e-8 * kj.norm());
        }
        const auto m = ops.Mp.rows();
        const ComplexMatrix def = ComplexMatrix::Identity(m, m) - ops.Mp * ops.Mp.adjoint();
        EXPECT_LE((ops.D * ops.D - def).norm(), 1e-9);
    }
}

TEST(KernelBasisOperators, SheetDatumMpHasUnitNorm) {
    // Mp* has eigenvalues 0 and 1/2 here, yet ‖Mp‖ reaches 1 on this two-point space.
    const auto ops = kernel_basis_operators(
        KernelMatrix::from_table({{0.0, 0.0}, {0.0, 0.5}}, mat({{1, 1}, {1, 4.0 / 3.0}})));
    EXPECT_NEAR(op_norm(ops.Mp), 1.0, 1e-12);
    EXPECT_NEAR(spectral_radius(ops.Mp), 0.5, 1e-12);
}

TEST(KernelBasisOperators, MergedNodesRejected) {
    const auto k = KernelMatrix::from_table({{0.0, 0.0}, {0.0, 0.9}}, mat({{1, 1}, {1, 1}}));
    EXPECT_THROW(kernel_basis_operators(k), InputError);
    EXPECT_THROW(admissibility_audit(k, 200), InputError);
}

TEST(FundamentalOperator, SingleNodeIsConjugateBeta) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const GammaPoint x = symmetrize(test::disk_point(rng, 0.95), test::disk_point(rng, 0.95));
        const auto fo = fundamental_operator(KernelMatrix::from_kernel({x}, szego()));
        ASSERT_EQ(fo.F.rows(), 1);
        const Complex expected = (std::conj(x.s) - x.s * std::conj(x.p)) / (1.0 - std::norm(x.p));
        EXPECT_NEAR(std::abs(fo.F(0, 0) - expected), 0.0, 1e-10);
        EXPECT_NEAR(std::abs(fo.F(0, 0) - std::conj(beta_of(x))), 0.0, 1e-10);
    }
}

TEST(FundamentalOperator, SheetDatumIsZero) {
    const auto fo = fundamental_operator(
        KernelMatrix::from_table({{0.0, 0.0}, {0.0, 0.5}}, mat({{1, 1}, {1, 4.0 / 3.0}})));
    EXPECT_LE(fo.F.norm(), 1e-12);
}

TEST(FundamentalOperator, RoyalDatumVanishesOnRoyalVariety) {
    const ExtensionModel royal = model_from_matrix(mat({{0, 2}, {0, 0}}));
    const auto k = KernelMatrix::from_kernel({{0.0, 0.0}, {1.0, 0.25}}, model_kernel(royal));
    const auto fo = fundamental_operator(k);
    const auto n = fo.F.rows();
    for (const Complex z : {Complex(0.3, 0.1), Complex(-0.5, 0.2), Complex(0.7, -0.4)}) {
        const Complex s = 2.0 * z, p = z * z;
        const Complex d = (fo.F.adjoint() + p * fo.F - s * ComplexMatrix::Identity(n, n)).determinant();
        EXPECT_LE(std::abs(d), 1e-9);
    }
}

TEST(FundamentalOperator, SolvesDefiningEquationRandom) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
        const auto pts = random_g_points(rng, 1 + t % 4, 0.9);
        const auto fo = fundamental_operator(KernelMatrix::from_kernel(pts, szego()));
        const auto& o = fo.ops;
        const ComplexMatrix lhs = o.Ms.adjoint() - o.Ms * o.Mp.adjoint();
        const ComplexMatrix rhs = o.D * fo.defect_basis * fo.F * fo.defect_basis.adjoint() * o.D;
        EXPECT_LE((lhs - rhs).norm(), 1e-8 * std::max(1.0, op_norm(o.Ms)));
        EXPECT_LE(numerical_radius(fo.F), 1.0 + 1e-9);
    }
}

TEST(FundamentalOperator, ModelKernelsGiveNumericalContractions) {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 15; ++t) {
        const int d = 1 + t % 3;
        ComplexMatrix g = test::gaussian(rng, d, d);
        g *= 0.9 / numerical_radius(g);
        const ExtensionModel m = model_from_matrix(g);
        std::vector<GammaPoint> pts;
        for (int i = 0; i < 3; ++i) {
            const Complex p = test::disk_point(rng, 0.8);
            Eigen::ComplexEigenSolver<ComplexMatrix> es(g + std::conj(p) * g.adjoint());
            pts.push_back({std::conj(es.eigenvalues()(i % d)), p});
        }
        const auto fo = fundamental_operator(KernelMatrix::from_kernel(pts, model_kernel(m)));
        EXPECT_LE(numerical_radius(fo.F), 1.0 + 1e-9);
    }
}

TEST(AdmissibilityAudit, SzegoRandomPointsPass) {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 20; ++t) {
        const auto rep = admissibility_audit(KernelMatrix::from_kernel(random_g_points(rng, 1 + t % 4, 0.9), szego()), 200);
        EXPECT_TRUE(rep.pass) << (rep.failures.empty() ? "" : rep.failures.front());
        EXPECT_LE(rep.norm_mp, 1.0 + 1e-9);
        EXPECT_LE(rep.norm_ms, 2.0 + 1e-9);
        EXPECT_LE(rep.nu_f, 1.0 + 1e-9);
    }
}

TEST(AdmissibilityAudit, SheetDatumModelPasses) {
    const auto rep = admissibility_audit(
        KernelMatrix::from_table({{0.0, 0.0}, {0.0, 0.5}}, mat({{1, 1}, {1, 4.0 / 3.0}})), 200);
    EXPECT_TRUE(rep.pass);
}

TEST(NonextremalPerturbation, Examples) {
    const auto grid = sample_open_g(0.9, 6);
    const PickData one{{{0.0, 0.0}}, {0.0}};
    const Evaluator zero = [](const GammaPoint&) { return Complex(0.0); };
    const auto h = nonextremal_perturbation(one, zero, 1.0, 0.1, grid);
    for (const auto& x : grid) EXPECT_NEAR(std::abs(h.h(x) - 0.1 * (x.s + x.p)), 0.0, 1e-15);
    EXPECT_EQ(h.h({0.0, 0.0}), Complex(0.0));

    const auto h0 = nonextremal_perturbation(one, zero, 1.0, 0.0, grid);
    for (const auto& x : grid) EXPECT_EQ(h0.h(x), Complex(0.0));

    const PickData d{{{0.0, 0.0}, {1.0, 0.25}}, {0.0, 0.5}};
    const Evaluator half_s = [](const GammaPoint& x) { return x.s / 2.0; };
    const auto hs = nonextremal_perturbation(d, half_s, Complex(0.2, 0.3), 1e-3, grid);
    for (std::size_t j = 0; j < d.size(); ++j) EXPECT_NEAR(std::abs(hs.h(d.nodes[j]) - d.targets[j]), 0.0, 1e-15);
    EXPECT_GT(hs.sup_estimate, 0.0);

    EXPECT_THROW(nonextremal_perturbation(d, zero, 1.0, 0.1, grid), InputError);
}

TEST(AgreementLocus, Examples) {
    std::vector<GammaPoint> grid = sample_open_g(0.9, 8);
    std::vector<GammaPoint> royal;
    for (int k = 0; k < 12; ++k) {
        const Complex z = std::polar(0.08 * k, 0.7 * k);
        royal.push_back({2.0 * z, z * z});
    }
    grid.insert(grid.end(), royal.begin(), royal.end());

    const Evaluator a = [](const GammaPoint& x) { return -x.s / 2.0; };
    const Evaluator b = [](const GammaPoint& x) { return (2.0 * x.p - x.s) / (2.0 - x.s); };
    const Evaluator c = [](const GammaPoint& x) { return x.p; };

    const std::vector<Evaluator> ab{a, b}, ba{b, a}, cb{c, b}, aa{a, a};
    const auto loc = agreement_locus(ab, grid, 1e-9);
    EXPECT_GE(loc.size(), royal.size());
    for (const auto& x : loc) EXPECT_LE(std::abs(x.s * x.s - 4.0 * x.p), 1e-6);
    EXPECT_EQ(agreement_locus(ba, grid, 1e-9).size(), loc.size());

    for (const auto& x : agreement_locus(cb, grid, 1e-9)) EXPECT_LE(std::abs(x.s), 1e-6);
    EXPECT_EQ(agreement_locus(aa, grid, 0.0).size(), grid.size());

    EXPECT_LE(agreement_locus(ab, grid, 1e-3).size(), agreement_locus(ab, grid, 1e-1).size());
    const std::vector<Evaluator> lone{a};
    EXPECT_THROW(agreement_locus(lone, grid, 1e-9), InputError);
}
