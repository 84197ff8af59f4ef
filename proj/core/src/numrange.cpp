#include "symdisk/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "symdisk/errors.hpp"

namespace symdisk {

double support_function(const ComplexMatrix& f, double theta) {
    if (!is_square(f)) throw InputError("support_function: matrix is not square");
    if (f.rows() == 0) return 0.0;
    const Complex rot = std::polar(1.0, -theta);
    const ComplexMatrix h = 0.5 * (rot * f + std::conj(rot) * f.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(h.rows() - 1);
}

double numerical_radius(const ComplexMatrix& f, const Tolerances& tol) {
    if (!is_square(f)) throw InputError("numerical_radius: matrix is not square");
    if (f.rows() == 0) return 0.0;
    const std::size_t n = std::max<std::size_t>(tol.n_theta, 8);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    std::vector<double> h(n);
    for (std::size_t k = 0; k < n; ++k) h[k] = support_function(f, step * static_cast<double>(k));

    // Refine every local maximum of the coarse grid; keeps crossings honest.
    double best = *std::max_element(h.begin(), h.end());
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double left = h[(k + n - 1) % n];
        const double right = h[(k + 1) % n];
        if (h[k] < left || h[k] < right) continue;
        double a = step * (static_cast<double>(k) - 1.0);
        double b = step * (static_cast<double>(k) + 1.0);
        double c = b - invphi * (b - a);
        double d = a + invphi * (b - a);
        double fc = support_function(f, c);
        double fd = support_function(f, d);
        while (b - a > tol.nu_search) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - invphi * (b - a);
                fc = support_function(f, c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + invphi * (b - a);
                fd = support_function(f, d);
            }
        }
        best = std::max({best, fc, fd});
    }
    return best;
}

CnuVerdict is_cnu(const ComplexMatrix& f, const Tolerances& tol) {
    if (!is_square(f)) throw InputError("is_cnu: matrix is not square");
    const double nu = numerical_radius(f, tol);
    if (nu > 1.0 + tol.nu) throw InputError("is_cnu: not a numerical contraction (nu = " + std::to_string(nu) + ")");
    CnuVerdict out;
    Spectrum unimodular;
    for (const auto& z : spectrum(f))
        if (std::abs(std::abs(z) - 1.0) <= tol.mod) unimodular.push_back(z);
    for (const auto& c : cluster_eigenvalues(unimodular, tol.cluster * scale_of(f))) out.witnesses.push_back(c.value);
    out.cnu = out.witnesses.empty();
    return out;
}

std::size_t CnuDecomposition::unitary_dim() const {
    std::size_t r = 0;
    for (const auto& e : unitary_eigenvalues) r += e.multiplicity;
    return r;
}

ComplexMatrix CnuDecomposition::block_diagonal() const {
    const auto r = static_cast<Eigen::Index>(unitary_dim());
    const auto n = r + cnu_block.rows();
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    Eigen::Index pos = 0;
    for (const auto& e : unitary_eigenvalues)
        for (std::size_t i = 0; i < e.multiplicity; ++i, ++pos) out(pos, pos) = e.value;
    out.bottomRightCorner(cnu_block.rows(), cnu_block.cols()) = cnu_block;
    return out;
}

ComplexMatrix CnuDecomposition::unitary_basis() const {
    return transform.leftCols(static_cast<Eigen::Index>(unitary_dim()));
}

CnuDecomposition cnu_decompose(const ComplexMatrix& f, const Tolerances& tol) {
    const CnuVerdict verdict = is_cnu(f, tol);
    const auto n = f.rows();
    const double scale = scale_of(f);
    CnuDecomposition out;

    ComplexMatrix unitary_cols(n, 0);
    for (const auto& beta_raw : verdict.witnesses) {
        const Complex beta = beta_raw / std::abs(beta_raw);
        ComplexMatrix stacked(2 * n, n);
        stacked.topRows(n) = f - beta * ComplexMatrix::Identity(n, n);
        stacked.bottomRows(n) = f.adjoint() - std::conj(beta) * ComplexMatrix::Identity(n, n);
        // Joint kernel of F − β and F* − β̄: σ-threshold absolute in units of ‖F‖.
        Eigen::JacobiSVD<ComplexMatrix> svd(stacked, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double cut = std::max(tol.rank, tol.mod) * scale * 10.0;
        Eigen::Index nullity = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) <= cut) ++nullity;
        if (nullity == 0)
            throw NumericalError("cnu_decompose: unimodular eigenvalue without a reducing eigenvector");
        const ComplexMatrix basis = svd.matrixV().rightCols(nullity);
        ComplexMatrix grown(n, unitary_cols.cols() + nullity);
        grown << unitary_cols, basis;
        unitary_cols = grown;
        out.unitary_eigenvalues.push_back({beta, static_cast<std::size_t>(nullity)});
    }
    // Joint eigenvectors of distinct β are orthogonal; re-orthonormalize against rounding.
    if (unitary_cols.cols() > 0) {
        Eigen::HouseholderQR<ComplexMatrix> qr(unitary_cols);
        const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, unitary_cols.cols());
        unitary_cols = q;
    }
    const ComplexMatrix rest = orthogonal_complement(unitary_cols);
    out.transform.resize(n, n);
    out.transform << unitary_cols, rest;
    out.cnu_block = rest.adjoint() * f * rest;

    // Anything unimodular left means the peeling did not capture a full eigenspace.
    for (const auto& z : spectrum(out.cnu_block))
        if (std::abs(std::abs(z) - 1.0) <= tol.mod)
            throw NumericalError("cnu_decompose: residual unimodular eigenvalue in the c.n.u. block");

    const double reassembly = (out.transform * out.block_diagonal() * out.transform.adjoint() - f).norm();
    if (reassembly > 1e-9 * scale)
        throw NumericalError("cnu_decompose: decomposition does not reassemble F");
    return out;
}

ComplexMatrix pu_compress(const ComplexMatrix& p, const ComplexMatrix& u, const Tolerances& tol) {
    if (!is_square(p) || !is_square(u) || p.rows() != u.rows())
        throw InputError("pu_compress: P and U must be square of equal size");
    const auto n = p.rows();
    if ((p * p - p).norm() > tol.op * std::max<double>(1.0, n) || !is_hermitian(p, tol.op))
        throw InputError("pu_compress: P is not an orthogonal projection");
    if (!is_unitary(u, tol.op)) throw InputError("pu_compress: U is not unitary");
    const ComplexMatrix out = p * u + u.adjoint() * (ComplexMatrix::Identity(n, n) - p);
    const double nu = numerical_radius(out, tol);
    if (nu > 1.0 + tol.nu) throw NumericalError("pu_compress: result is not a numerical contraction");
    return out;
}

namespace {

// ‖(I − Q Q*) A Q‖ for orthonormal Q: failure of span(Q) to be A-invariant.
double invariance_defect(const ComplexMatrix& a, const ComplexMatrix& q) {
    if (q.cols() == 0) return 0.0;
    const ComplexMatrix aq = a * q;
    return (aq - q * (q.adjoint() * aq)).norm();
}

// Range of a matrix whose columns have norm at most one; rank cut is absolute so
// a block that vanishes up to rounding contributes nothing.
ComplexMatrix range_absolute(const ComplexMatrix& a, double cut) {
    if (a.cols() == 0) return ComplexMatrix(a.rows(), 0);
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU);
    Eigen::Index r = 0;
    while (r < svd.singularValues().size() && svd.singularValues()(r) > cut) ++r;
    return svd.matrixU().leftCols(r);
}

}  // namespace

bool verify_pu_reducing(const ComplexMatrix& p, const ComplexMatrix& u, std::span<const ComplexVector> h_basis,
                        const Tolerances& tol) {
    if (h_basis.empty()) return false;
    const auto n = p.rows();
    ComplexMatrix h(n, static_cast<Eigen::Index>(h_basis.size()));
    for (std::size_t j = 0; j < h_basis.size(); ++j) {
        if (h_basis[j].size() != n) throw InputError("verify_pu_reducing: basis vector has wrong dimension");
        h.col(static_cast<Eigen::Index>(j)) = h_basis[j];
    }
    const auto k = h.cols();
    if ((h.adjoint() * h - ComplexMatrix::Identity(k, k)).norm() > 1e-8)
        throw InputError("verify_pu_reducing: basis is not orthonormal");

    const double bound = tol.op * 10.0 * std::max<double>(1.0, n);
    // H must reduce P so that PH and P^⊥H are subspaces of H.
    if (invariance_defect(p, h) > bound) return false;
    if (invariance_defect(u, h) > bound || invariance_defect(u.adjoint(), h) > bound) return false;

    const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
    const ComplexMatrix ph = range_absolute(p * h, 1e-8);
    const ComplexMatrix qh = range_absolute((eye - p) * h, 1e-8);
    if (invariance_defect(u, ph) > bound || invariance_defect(u, qh) > bound) return false;
    return true;
}

std::optional<std::vector<ComplexVector>> find_pu_witness(const ComplexMatrix& p, const ComplexMatrix& u,
                                                          const Tolerances& tol) {
    const ComplexMatrix f = pu_compress(p, u, tol);
    const CnuDecomposition dec = cnu_decompose(f, tol);
    const std::size_t groups = dec.unitary_eigenvalues.size();
    if (groups == 0) return std::nullopt;
    if (groups > 16) throw InputError("find_pu_witness: too many unimodular eigenspaces to enumerate");

    // Offsets of each eigenspace inside the transform's leading columns.
    std::vector<Eigen::Index> offset(groups + 1, 0);
    for (std::size_t g = 0; g < groups; ++g)
        offset[g + 1] = offset[g] + static_cast<Eigen::Index>(dec.unitary_eigenvalues[g].multiplicity);

    for (std::size_t mask = 1; mask < (std::size_t{1} << groups); ++mask) {
        std::vector<ComplexVector> basis;
        for (std::size_t g = 0; g < groups; ++g) {
            if (!(mask & (std::size_t{1} << g))) continue;
            for (Eigen::Index c = offset[g]; c < offset[g + 1]; ++c) basis.emplace_back(dec.transform.col(c));
        }
        if (verify_pu_reducing(p, u, basis, tol)) return basis;
    }
    return std::nullopt;
}

}  // namespace symdisk
