#include "symdisk/extend.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symdisk/errors.hpp"
#include "symdisk/numrange.hpp"
#include "symdisk/parallel.hpp"

namespace symdisk {

namespace {

ComplexMatrix node_pencil(const ComplexMatrix& f, const GammaPoint& x) {
    const auto n = f.rows();
    return f + std::conj(x.p) * f.adjoint() - std::conj(x.s) * ComplexMatrix::Identity(n, n);
}

double node_distance(const GammaPoint& a, const GammaPoint& b) {
    return std::abs(a.s - b.s) + std::abs(a.p - b.p);
}

}  // namespace

ExtensionModel build_extension(const KernelMatrix& k, const Tolerances& tol) {
    const AdmissibilityReport audit = admissibility_audit(k, tol.trunc, tol);
    if (!audit.pass) {
        std::string why;
        for (const auto& f : audit.failures) why += (why.empty() ? "" : "; ") + f;
        throw NumericalError("build_extension: kernel failed the admissibility audit (" + why + ")");
    }
    const FundamentalOperator fo = fundamental_operator(k, tol);
    const auto& ops = fo.ops;
    const auto n = static_cast<Eigen::Index>(k.nodes.size());

    ExtensionModel out;
    out.nodes = k.nodes;
    out.defect_dim = static_cast<std::size_t>(fo.F.rows());
    if (fo.F.rows() == 0) throw NumericalError("build_extension: defect space is trivial");

    const CnuDecomposition dec = cnu_decompose(fo.F, tol);
    const auto ud = static_cast<Eigen::Index>(dec.unitary_dim());
    out.dropped_unitary_dim = dec.unitary_dim();
    const ComplexMatrix unit_basis = dec.transform.leftCols(ud);
    const ComplexMatrix rest = dec.transform.rightCols(fo.F.rows() - ud);
    out.F = dec.cnu_block;

    const double scale = scale_of(out.F);
    for (Eigen::Index j = 0; j < n; ++j) {
        const ComplexVector u = fo.defect_basis.adjoint() * (ops.D * ops.node_vectors.col(j));
        const double leak = ud > 0 ? (unit_basis.adjoint() * u).norm() : 0.0;
        if (leak > tol.ext * std::max(1.0, u.norm()))
            throw NumericalError("build_extension: node vector " + std::to_string(j) +
                                 " has a component in the unitary summand");
        ComplexVector uc = rest.adjoint() * u;
        const double res = (node_pencil(out.F, k.nodes[static_cast<std::size_t>(j)]) * uc).norm();
        out.max_residual = std::max(out.max_residual, res);
        out.u_nodes.push_back(std::move(uc));
    }
    if (out.max_residual > tol.ext * scale)
        throw NumericalError("build_extension: node residual " + std::to_string(out.max_residual) +
                             " exceeds tolerance");
    return out;
}

ExtensionModel model_from_matrix(const ComplexMatrix& f, const Tolerances& tol) {
    if (!is_square(f) || f.rows() == 0) throw InputError("model_from_matrix: matrix must be square and non-empty");
    if (!f.allFinite()) throw InputError("model_from_matrix: non-finite entries");
    const CnuVerdict v = is_cnu(f, tol);
    if (!v.cnu) throw InputError("model_from_matrix: matrix has a unitary part");
    ExtensionModel out;
    out.F = f;
    out.defect_dim = static_cast<std::size_t>(f.rows());
    return out;
}

ComplexVector kernel_vector_at(const ExtensionModel& m, const GammaPoint& x, const Tolerances& tol) {
    for (std::size_t j = 0; j < m.nodes.size(); ++j)
        if (node_distance(m.nodes[j], x) <= tol.node) return m.u_nodes[j];
    const ComplexMatrix pencil = node_pencil(m.F, x);
    Eigen::JacobiSVD<ComplexMatrix> svd(pencil, Eigen::ComputeFullV);
    const auto n = pencil.cols();
    const double smin = svd.singularValues()(n - 1);
    if (smin > tol.memb * scale_of(m.F))
        throw InputError("kernel_vector_at: point is off the variety (sigma_min = " + std::to_string(smin) + ")");
    return normalize_phase(svd.matrixV().col(n - 1));
}

Complex extended_kernel(const ExtensionModel& m, const GammaPoint& x, const GammaPoint& y, const Tolerances& tol) {
    const Complex den = 1.0 - x.p * std::conj(y.p);
    if (std::abs(den) <= std::numeric_limits<double>::epsilon())
        throw InputError("extended_kernel: 1 - p*conj(q) vanishes");
    const ComplexVector ux = kernel_vector_at(m, x, tol);
    const ComplexVector uy = kernel_vector_at(m, y, tol);
    return ux.dot(uy) / den;
}

KernelFn model_kernel(ExtensionModel m, const Tolerances& tol) {
    return [m = std::move(m), tol](const GammaPoint& x, const GammaPoint& y) { return extended_kernel(m, x, y, tol); };
}

namespace {

TraceStep trace_step(const ComplexMatrix& f, const ComplexVector& u, Complex target, Complex z, double eps,
                     const Tolerances& tol) {
    TraceStep st;
    st.z = z;
    const ComplexMatrix psi = f + z * f.adjoint();
    const double scale = scale_of(psi);
    const Spectrum spec = spectrum(psi);

    const SpectralProjection cluster = spectral_projection(psi, target, eps, tol.n_quad, tol);
    st.projection_rank = cluster.enclosed_count;
    st.idempotency = (cluster.matrix * cluster.matrix - cluster.matrix).norm();

    Spectrum inside;
    for (const auto& lam : spec)
        if (std::abs(lam - target) < eps) inside.push_back(lam);
    const auto groups = cluster_eigenvalues(inside, tol.cluster * scale);

    ComplexVector sum = ComplexVector::Zero(u.size());
    for (const auto& g : groups) {
        double gap = std::numeric_limits<double>::infinity();
        for (const auto& lam : spec) {
            const double d = std::abs(lam - g.value);
            if (d > tol.cluster * scale) gap = std::min(gap, d);
        }
        const double r = std::isfinite(gap) ? 0.5 * gap : eps;
        const SpectralProjection pl = spectral_projection(psi, g.value, r, tol.n_quad, tol);
        const double pn = op_norm(pl.matrix);
        st.branch_idempotency = std::max(st.branch_idempotency,
                                         (pl.matrix * pl.matrix - pl.matrix).norm() / std::max(1.0, pn * pn));
        const ComplexVector v = pl.matrix * u;
        sum += v;
        st.branch_values.push_back(g.value);
        st.branch_vectors.push_back(v);
        st.value_error = std::max(st.value_error, std::abs(g.value - target));
        const auto n = f.rows();
        const ComplexMatrix pencil = f.adjoint() + std::conj(z) * f - std::conj(g.value) * ComplexMatrix::Identity(n, n);
        st.membership = std::max(st.membership, sigma_min(pencil));
    }
    st.sum_error = (sum - u).norm();
    return st;
}

}  // namespace

SheetTrace branch_trace(const ExtensionModel& m, std::size_t node_index, double radius, std::size_t n_steps,
                        const Tolerances& tol) {
    if (node_index >= m.nodes.size()) throw InputError("branch_trace: node index out of range");
    if (!(radius > 0.0) || n_steps == 0) throw InputError("branch_trace: radius and step count must be positive");
    const GammaPoint& node = m.nodes[node_index];
    const ComplexVector& u = m.u_nodes[node_index];
    const Complex target = std::conj(node.s);
    const Complex z0 = std::conj(node.p);
    const Complex dir = std::abs(z0) > 0.0 ? -z0 / std::abs(z0) : Complex{1.0, 0.0};
    if (std::abs(z0 + radius * dir) >= 1.0) throw InputError("branch_trace: path leaves the unit disk");

    const ComplexMatrix psi0 = m.F + z0 * m.F.adjoint();
    if (sigma_min(psi0 - target * ComplexMatrix::Identity(m.F.rows(), m.F.rows())) > tol.memb * scale_of(psi0))
        throw InputError("branch_trace: node is not on the variety");

    // Half the gap from s̄_j to the rest of σ(F + p̄_j F*).
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& lam : spectrum(psi0)) {
        const double d = std::abs(lam - target);
        if (d > tol.cluster * scale_of(psi0)) gap = std::min(gap, d);
    }
    double eps = std::isfinite(gap) ? 0.5 * gap : 0.5 * scale_of(psi0);

    SheetTrace out;
    out.node_index = node_index;
    out.target = target;
    out.z_limit = z0;
    for (int attempt = 0;; ++attempt) {
        std::vector<TraceStep> steps(n_steps);
        try {
            parallel_for(n_steps, [&](std::size_t k) {
                const double rho = radius * std::pow(0.5, static_cast<double>(k));
                steps[k] = trace_step(m.F, u, target, z0 + rho * dir, eps, tol);
            });
        } catch (const NumericalError&) {
            if (attempt >= 3) throw;
            eps *= 0.5;
            continue;
        }
        out.steps = std::move(steps);
        break;
    }
    out.epsilon = eps;
    out.branch_count = out.steps.back().branch_values.size();
    return out;
}

Complex unique_value(const ExtensionModel& m, const KernelMatrix& k, const ComplexVector& gamma,
                     std::span<const Complex> targets, const GammaPoint& x, const Tolerances& tol) {
    const auto n = static_cast<Eigen::Index>(k.nodes.size());
    if (gamma.size() != n || static_cast<Eigen::Index>(targets.size()) != n)
        throw InputError("unique_value: gamma and targets must match the node count");
    if (gamma.norm() == 0.0) throw InputError("unique_value: gamma is zero");
    const ComplexMatrix pick = pick_matrix(k, targets, tol);
    if ((pick * gamma).norm() > tol.active * scale_of(pick) * gamma.norm())
        throw InputError("unique_value: gamma is not a null vector of the Pick matrix");

    Complex num{0.0, 0.0};
    Complex den{0.0, 0.0};
    double mass = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex kj = extended_kernel(m, x, k.nodes[static_cast<std::size_t>(j)], tol) * gamma(j);
        num += kj;
        den += std::conj(targets[static_cast<std::size_t>(j)]) * kj;
        mass += std::abs(kj);
    }
    if (std::abs(den) <= tol.den * std::max(mass, std::numeric_limits<double>::min()))
        throw NumericalError("unique_value: denominator vanishes, sheet inconclusive");
    const Complex w = num / den;
    if (std::abs(w) > 1.0 + tol.interp)
        throw NumericalError("unique_value: value outside the closed disk, inputs are inconsistent");
    return w;
}

}  // namespace symdisk
