#include "symdisk_cli/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "symdisk/errors.hpp"
#include "symdisk/numrange.hpp"
#include "symdisk/variety.hpp"

namespace symdisk::cli {

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Eigen::Index pick_int(Rng& rng, Eigen::Index lo, Eigen::Index hi) {
    return std::uniform_int_distribution<Eigen::Index>(lo, hi)(rng);
}

Complex unimodular(Rng& rng) { return std::polar(1.0, uniform(rng, 0.0, 2.0 * std::numbers::pi)); }

Complex disk_point(Rng& rng, double radius) {
    return std::polar(radius * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

// Orthogonal projection onto `rank` random directions.
ComplexMatrix random_projection(Rng& rng, Eigen::Index n, Eigen::Index rank) {
    const ComplexMatrix v = random_unitary(rng, n);
    return v.leftCols(rank) * v.leftCols(rank).adjoint();
}

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

// P and U that share a reducing subspace on which U is diagonal and P is a coordinate projection.
std::pair<ComplexMatrix, ComplexMatrix> reducible_pu(Rng& rng, Eigen::Index d) {
    const Eigen::Index h = pick_int(rng, 1, d);
    ComplexMatrix ph = ComplexMatrix::Zero(h, h);
    ComplexMatrix uh = ComplexMatrix::Zero(h, h);
    for (Eigen::Index i = 0; i < h; ++i) {
        ph(i, i) = uniform(rng, 0.0, 1.0) < 0.5 ? 1.0 : 0.0;
        uh(i, i) = unimodular(rng);
    }
    const Eigen::Index rest = d - h;
    ComplexMatrix pr(rest, rest), ur(rest, rest);
    if (rest > 0) {
        pr = random_projection(rng, rest, pick_int(rng, 0, rest));
        ur = random_unitary(rng, rest);
    }
    const ComplexMatrix v = random_unitary(rng, d);
    return {v * block_diag(ph, pr) * v.adjoint(), v * block_diag(uh, ur) * v.adjoint()};
}

}  // namespace

ComplexMatrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double re = g(rng);
            const double im = g(rng);
            out(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    return out;
}

ComplexMatrix random_unitary(Rng& rng, Eigen::Index n) {
    const ComplexMatrix z = random_gaussian(rng, n, n);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double a = std::abs(r(i, i));
        if (a > 0.0) q.col(i) *= r(i, i) / a;
    }
    return q;
}

ComplexMatrix random_with_radius(Rng& rng, Eigen::Index n, double nu, const Tolerances& tol) {
    const ComplexMatrix g = random_gaussian(rng, n, n);
    const double current = numerical_radius(g, tol);
    return current > 0.0 ? ComplexMatrix(g * (nu / current)) : g;
}

RealizationModel random_model(Rng& rng, Eigen::Index d, Eigen::Index state, const Tolerances&) {
    const ComplexMatrix v = random_unitary(rng, d + state);
    RealizationModel m;
    m.tau = random_unitary(rng, state);
    m.A = v.topLeftCorner(d, d);
    m.B = v.topRightCorner(d, state);
    m.C = v.bottomLeftCorner(state, d);
    m.D = v.bottomRightCorner(state, state);
    return m;
}

SweepResult equivalence_sweep(std::uint64_t seed, std::size_t count, Eigen::Index max_dim, const Tolerances& tol) {
    Rng rng(seed);
    SweepResult out;
    out.name = "equivalence";
    const auto grid = default_p_grid();
    for (std::size_t i = 0; i < count; ++i) {
        const Eigen::Index d = pick_int(rng, 1, max_dim);
        ComplexMatrix f;
        switch (i % 4) {
            case 0:
                f = random_with_radius(rng, d, uniform(rng, 0.3, 1.0), tol);
                break;
            case 1: {
                const Eigen::Index r = pick_int(rng, 1, d);
                ComplexMatrix u = ComplexMatrix::Zero(r, r);
                for (Eigen::Index k = 0; k < r; ++k) u(k, k) = unimodular(rng);
                ComplexMatrix rest = d > r ? random_with_radius(rng, d - r, uniform(rng, 0.3, 0.95), tol)
                                           : ComplexMatrix(0, 0);
                const ComplexMatrix v = random_unitary(rng, d);
                f = v * block_diag(u, rest) * v.adjoint();
                break;
            }
            case 2: {
                const ComplexMatrix p = random_projection(rng, d, pick_int(rng, 0, d));
                f = pu_compress(p, random_unitary(rng, d), tol);
                break;
            }
            default: {
                const auto [p, u] = reducible_pu(rng, d);
                f = pu_compress(p, u, tol);
                break;
            }
        }
        const PencilVariety v(f, tol);
        const bool cnu = is_cnu(f, tol).cnu;
        const RegionAuditReport audit = region_audit(v, grid, tol);
        const bool prop = distinguished_property_check(v, grid, PropertyScope::FullVariety, tol);
        ++out.instances;
        if (cnu) ++out.positives;
        out.r2_hits += audit.count(Region::R2);
        if (cnu != audit.strict_pass || cnu != prop) {
            ++out.disagreements;
            out.notes.push_back("instance " + std::to_string(i) + ": cnu=" + std::to_string(cnu) +
                                " strict=" + std::to_string(audit.strict_pass) + " property=" + std::to_string(prop));
        }
    }
    out.pass = out.disagreements == 0 && out.r2_hits == 0;
    return out;
}

SweepResult pu_sweep(std::uint64_t seed, std::size_t count, Eigen::Index max_dim, const Tolerances& tol) {
    Rng rng(seed);
    SweepResult out;
    out.name = "pu";
    for (std::size_t i = 0; i < count; ++i) {
        const Eigen::Index d = pick_int(rng, 1, max_dim);
        ComplexMatrix p, u;
        if (i % 2 == 0 && d >= 2) {
            p = random_projection(rng, d, pick_int(rng, 1, d - 1));
            u = random_unitary(rng, d);
        } else {
            std::tie(p, u) = reducible_pu(rng, d);
        }
        ++out.instances;
        const ComplexMatrix n = p * u + u.adjoint() * (ComplexMatrix::Identity(d, d) - p);
        out.worst = std::max(out.worst, numerical_radius(n, tol));
        try {
            const ComplexMatrix f = pu_compress(p, u, tol);
            const bool cnu = is_cnu(f, tol).cnu;
            const bool witness = find_pu_witness(p, u, tol).has_value();
            if (cnu) ++out.positives;
            if (cnu == witness) {
                ++out.disagreements;
                out.notes.push_back("instance " + std::to_string(i) + ": cnu=" + std::to_string(cnu) +
                                    " witness=" + std::to_string(witness));
            }
        } catch (const Error& e) {
            ++out.disagreements;
            out.notes.push_back("instance " + std::to_string(i) + ": " + e.what());
        }
    }
    out.pass = out.disagreements == 0 && out.worst <= 1.0 + tol.nu;
    return out;
}

SweepResult realization_sweep(std::uint64_t seed, std::size_t count, const Tolerances& tol) {
    Rng rng(seed);
    SweepResult out;
    out.name = "realization";
    for (std::size_t i = 0; i < count; ++i) {
        const Eigen::Index d = pick_int(rng, 1, 3);
        const Eigen::Index state = pick_int(rng, 1, 4);
        const RealizationModel m = random_model(rng, d, state, tol);
        ++out.instances;
        try {
            for (int k = 0; k < 5; ++k) {
                const GammaPoint x = symmetrize(disk_point(rng, 0.95), disk_point(rng, 0.95));
                const ComplexMatrix psi = eval_model(m, x, tol);
                if (op_norm(psi) > 1.0 + tol.op) throw NumericalError("value is not contractive");
                out.worst = std::max(out.worst, inner_defect(m, x, tol).mismatch);
            }
            const BoundaryAudit b = boundary_unitarity_audit(m, 24, tol);
            if (!b.pass) throw NumericalError("boundary defect " + std::to_string(b.max_defect));
        } catch (const Error& e) {
            ++out.disagreements;
            out.notes.push_back("model " + std::to_string(i) + ": " + e.what());
        }
    }
    out.pass = out.disagreements == 0;
    return out;
}

}  // namespace symdisk::cli
