#include "symdisk/pick.hpp"

#include <algorithm>
#include <cmath>

#include "symdisk/errors.hpp"
#include "symdisk/numrange.hpp"

namespace symdisk {

void PickData::validate(const Tolerances& tol) const {
    if (nodes.size() != targets.size()) throw InputError("PickData: nodes and targets differ in length");
    if (nodes.empty()) throw InputError("PickData: no nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (classify_region(nodes[i], tol.mod) != Region::OpenG)
            throw InputError("PickData: node " + std::to_string(i) + " is not in the open symmetrized bidisk");
        if (std::abs(targets[i]) > 1.0 + tol.op)
            throw InputError("PickData: target " + std::to_string(i) + " lies outside the closed unit disk");
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(nodes[i].s - nodes[j].s) + std::abs(nodes[i].p - nodes[j].p) <= tol.node)
                throw InputError("PickData: repeated node " + std::to_string(i));
    }
}

KernelMatrix KernelMatrix::from_kernel(std::vector<GammaPoint> nodes, const KernelFn& k, const Tolerances& tol) {
    const auto n = static_cast<Eigen::Index>(nodes.size());
    ComplexMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            g(i, j) = k(nodes[static_cast<std::size_t>(i)], nodes[static_cast<std::size_t>(j)]);
    return from_table(std::move(nodes), std::move(g), tol);
}

KernelMatrix KernelMatrix::from_table(std::vector<GammaPoint> nodes, ComplexMatrix gram, const Tolerances& tol) {
    KernelMatrix out{std::move(nodes), std::move(gram)};
    out.validate(tol);
    return out;
}

void KernelMatrix::validate(const Tolerances& tol) const {
    const auto n = static_cast<Eigen::Index>(nodes.size());
    if (gram.rows() != n || gram.cols() != n) throw InputError("KernelMatrix: Gram size does not match node count");
    if (!gram.allFinite()) throw InputError("KernelMatrix: non-finite Gram entries");
    if (!is_hermitian(gram, tol.herm * 100.0)) throw InputError("KernelMatrix: Gram matrix is not Hermitian");
    for (Eigen::Index i = 0; i < n; ++i)
        if (!(gram(i, i).real() > 0.0)) throw InputError("KernelMatrix: non-positive diagonal entry");
    if (n > 0) {
        const HermitianEig eig = hermitian_eig(gram, Tolerances{.herm = tol.herm * 100.0});
        if (eig.values(0) < -tol.psd * scale_of(gram)) throw InputError("KernelMatrix: Gram matrix is not PSD");
    }
}

KernelFn szego() {
    return [](const GammaPoint& x, const GammaPoint& y) { return szego_kernel(x, y); };
}

ComplexMatrix pick_matrix(const PickData& data, const KernelFn& k, const Tolerances& tol) {
    if (data.nodes.size() != data.targets.size()) throw InputError("pick_matrix: nodes and targets differ in length");
    const auto n = static_cast<Eigen::Index>(data.nodes.size());
    ComplexMatrix kij(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            kij(i, j) = k(data.nodes[static_cast<std::size_t>(i)], data.nodes[static_cast<std::size_t>(j)]);
    if (!is_hermitian(kij, tol.herm * 100.0)) throw InputError("pick_matrix: kernel values are not Hermitian");
    KernelMatrix km{data.nodes, kij};
    return pick_matrix(km, data.targets, tol);
}

ComplexMatrix pick_matrix(const KernelMatrix& k, std::span<const Complex> targets, const Tolerances& tol) {
    const auto n = k.gram.rows();
    if (static_cast<Eigen::Index>(targets.size()) != n) throw InputError("pick_matrix: target count mismatch");
    if (!is_hermitian(k.gram, tol.herm * 100.0)) throw InputError("pick_matrix: kernel values are not Hermitian");
    ComplexMatrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out(i, j) = (1.0 - targets[static_cast<std::size_t>(i)] * std::conj(targets[static_cast<std::size_t>(j)])) *
                        k.gram(i, j);
    return out;
}

PsdReport psd_report(const ComplexMatrix& m, const Tolerances& tol) {
    if (!is_hermitian(m, tol.herm * 100.0)) throw InputError("psd_report: matrix is not Hermitian");
    PsdReport rep;
    if (m.rows() == 0) return rep;
    const HermitianEig eig = hermitian_eig(m, Tolerances{.herm = tol.herm * 100.0});
    rep.min_eigenvalue = eig.values(0);
    if (rep.min_eigenvalue <= tol.active * scale_of(m)) rep.null_vector = normalize_phase(eig.vectors.col(0));
    return rep;
}

KernelBasisOperators kernel_basis_operators(const KernelMatrix& k, const Tolerances& tol) {
    const auto n = static_cast<Eigen::Index>(k.nodes.size());
    if (k.gram.rows() != n) throw InputError("kernel_basis_operators: Gram size does not match node count");
    KernelBasisOperators ops;
    if (n == 0) return ops;

    const HermitianEig eig = hermitian_eig(k.gram, Tolerances{.herm = tol.herm * 100.0});
    const double lmax = eig.values(n - 1);
    if (!(lmax > 0.0)) throw InputError("kernel_basis_operators: zero Gram matrix");
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < n; ++i)
        if (eig.values(i) > tol.rank * lmax) keep.push_back(i);
    const auto r = static_cast<Eigen::Index>(keep.size());

    ComplexMatrix vr(n, r);
    Eigen::VectorXd sq(r);
    for (Eigen::Index c = 0; c < r; ++c) {
        vr.col(c) = eig.vectors.col(keep[static_cast<std::size_t>(c)]);
        sq(c) = std::sqrt(eig.values(keep[static_cast<std::size_t>(c)]));
    }
    // X = Λ^{1/2} V*, X⁺ = V Λ^{-1/2}.
    const ComplexMatrix x = sq.cast<Complex>().asDiagonal() * vr.adjoint();
    const ComplexMatrix x_pinv = vr * sq.cwiseInverse().cast<Complex>().asDiagonal();

    ComplexVector s_bar(n), p_bar(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        s_bar(j) = std::conj(k.nodes[static_cast<std::size_t>(j)].s);
        p_bar(j) = std::conj(k.nodes[static_cast<std::size_t>(j)].p);
    }
    const ComplexMatrix ms_adj = x * s_bar.asDiagonal() * x_pinv;
    const ComplexMatrix mp_adj = x * p_bar.asDiagonal() * x_pinv;

    // Merged kernel functions with different coordinates cannot carry diagonal adjoints.
    const double xs = std::max(1.0, op_norm(x));
    const double res_s = (ms_adj * x - x * s_bar.asDiagonal()).norm();
    const double res_p = (mp_adj * x - x * p_bar.asDiagonal()).norm();
    if (res_s > 1e-6 * xs * 2.0 || res_p > 1e-6 * xs)
        throw InputError("kernel_basis_operators: kernel functions not distinguishing nodes");

    ops.node_vectors = x;
    ops.Ms = ms_adj.adjoint();
    ops.Mp = mp_adj.adjoint();

    ComplexMatrix defect = ComplexMatrix::Identity(r, r) - ops.Mp * mp_adj;
    defect = 0.5 * (defect + defect.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> de(defect);
    // Rank is decided on D², where rounding is O(ε); after the square root it would read as O(√ε).
    Eigen::VectorXd root = de.eigenvalues();
    for (Eigen::Index i = 0; i < r; ++i) root(i) = root(i) <= tol.rank ? 0.0 : std::sqrt(root(i));
    ops.D = de.eigenvectors() * root.cast<Complex>().asDiagonal() * de.eigenvectors().adjoint();
    return ops;
}

FundamentalOperator fundamental_operator(const KernelMatrix& k, const Tolerances& tol) {
    FundamentalOperator out;
    out.ops = kernel_basis_operators(k, tol);
    const auto& ops = out.ops;
    const double norm_mp = op_norm(ops.Mp);
    const double norm_ms = op_norm(ops.Ms);
    if (norm_mp > 1.0 + tol.op) throw NumericalError("fundamental_operator: Mp is not a contraction");
    if (norm_ms > 2.0 + tol.op) throw NumericalError("fundamental_operator: ‖Ms‖ exceeds 2");

    const ComplexMatrix lhs = ops.Ms.adjoint() - ops.Ms * ops.Mp.adjoint();
    const ComplexMatrix q = range_basis(ops.D, tol.rank);
    out.defect_basis = q;
    const auto m = q.cols();
    if (m == 0) {
        out.F = ComplexMatrix(0, 0);
        out.residual = lhs.norm();
    } else {
        ComplexMatrix dq = q.adjoint() * ops.D * q;
        dq = 0.5 * (dq + dq.adjoint());
        const ComplexMatrix dq_inv = dq.inverse();
        out.F = dq_inv * (q.adjoint() * lhs * q) * dq_inv;
        out.residual = (lhs - q * dq * out.F * dq * q.adjoint()).norm();
    }
    if (out.residual > tol.fund * std::max(1.0, norm_ms))
        throw NumericalError("fundamental_operator: residual " + std::to_string(out.residual) +
                             " exceeds tolerance (kernel not Gamma-consistent)");
    return out;
}

AdmissibilityReport admissibility_audit(const KernelMatrix& k, std::size_t trunc, const Tolerances& tol) {
    AdmissibilityReport rep;
    const FundamentalOperator fo = fundamental_operator(k, tol);
    const auto& ops = fo.ops;
    const auto r = ops.Mp.rows();
    rep.norm_mp = op_norm(ops.Mp);
    rep.norm_ms = op_norm(ops.Ms);
    rep.nu_f = fo.F.rows() ? numerical_radius(fo.F, tol) : 0.0;
    if (rep.norm_mp > 1.0 + tol.op) rep.failures.push_back("Mp is not a contraction");
    if (rep.norm_ms > 2.0 + tol.op) rep.failures.push_back("norm of Ms exceeds 2");
    if (rep.nu_f > 1.0 + tol.nu) rep.failures.push_back("fundamental operator is not a numerical contraction");

    // F' extended by zero off Ran D, so it acts on the ambient coordinates.
    const ComplexMatrix fa = fo.defect_basis * fo.F * fo.defect_basis.adjoint();
    const ComplexMatrix mp_adj = ops.Mp.adjoint();
    const ComplexMatrix ms_adj = ops.Ms.adjoint();
    const ComplexMatrix r0 = ops.D * ms_adj - fa * ops.D - fa.adjoint() * ops.D * mp_adj;

    ComplexMatrix power = ComplexMatrix::Identity(r, r);  // Mp*^n
    ComplexMatrix iso = ComplexMatrix::Zero(r, r);
    ComplexMatrix inter_s = ComplexMatrix::Zero(r, r);
    ComplexMatrix inter_p = ComplexMatrix::Zero(r, r);
    for (std::size_t n = 0; n < trunc; ++n) {
        const ComplexMatrix coef = ops.D * power;
        iso += coef.adjoint() * coef;
        const ComplexMatrix rs = r0 * power;
        inter_s += rs.adjoint() * rs;
        const ComplexMatrix rp = coef * mp_adj - ops.D * (mp_adj * power);
        inter_p += rp.adjoint() * rp;
        power = mp_adj * power;
    }
    rep.tail_bound = std::pow(op_norm(power), 2);
    rep.isometry_defect = op_norm(iso - ComplexMatrix::Identity(r, r));
    rep.intertwine_s = std::sqrt(op_norm(inter_s));
    rep.intertwine_p = std::sqrt(op_norm(inter_p));
    const double bound = tol.dil + rep.tail_bound;
    if (rep.isometry_defect > bound) rep.failures.push_back("truncated dilation is not isometric");
    if (rep.intertwine_s > bound * std::max(1.0, rep.norm_ms)) rep.failures.push_back("dilation does not intertwine Ms");
    if (rep.intertwine_p > bound) rep.failures.push_back("dilation does not intertwine Mp");
    rep.pass = rep.failures.empty();
    return rep;
}

Perturbation nonextremal_perturbation(const PickData& data, Evaluator f, Complex eta, double delta,
                                      std::span<const GammaPoint> grid, const Tolerances& tol) {
    if (data.nodes.size() != data.targets.size()) throw InputError("nonextremal_perturbation: malformed data");
    for (std::size_t r = 0; r < data.nodes.size(); ++r)
        if (std::abs(f(data.nodes[r]) - data.targets[r]) > tol.interp)
            throw InputError("nonextremal_perturbation: f does not interpolate node " + std::to_string(r));

    Perturbation out;
    out.h = [nodes = data.nodes, f = std::move(f), eta, delta](const GammaPoint& x) {
        Complex prod{1.0, 0.0};
        for (const auto& node : nodes) prod *= (x.s - node.s) + eta * (x.p - node.p);
        return f(x) + delta * prod;
    };
    for (const auto& x : grid) out.sup_estimate = std::max(out.sup_estimate, std::abs(out.h(x)));
    return out;
}

std::vector<GammaPoint> agreement_locus(std::span<const Evaluator> fs, std::span<const GammaPoint> grid, double tol) {
    if (fs.size() < 2) throw InputError("agreement_locus: need at least two evaluators");
    std::vector<GammaPoint> out;
    std::vector<Complex> values(fs.size());
    for (const auto& x : grid) {
        for (std::size_t i = 0; i < fs.size(); ++i) values[i] = fs[i](x);
        bool agree = true;
        for (std::size_t i = 0; i < fs.size() && agree; ++i)
            for (std::size_t j = i + 1; j < fs.size() && agree; ++j)
                if (std::abs(values[i] - values[j]) > tol) agree = false;
        if (agree) out.push_back(x);
    }
    return out;
}

}  // namespace symdisk
