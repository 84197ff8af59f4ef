#include "symdisk/realization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "symdisk/errors.hpp"
#include "symdisk/parallel.hpp"

namespace symdisk {

ComplexMatrix RealizationModel::colligation() const {
    ComplexMatrix v(A.rows() + C.rows(), A.cols() + B.cols());
    v << A, B, C, D;
    return v;
}

void RealizationModel::validate_structure(const Tolerances& tol) const {
    const auto d = A.rows();
    const auto m = tau.rows();
    if (!is_square(tau) || !is_square(A) || !is_square(D)) throw InputError("RealizationModel: tau, A, D must be square");
    if (B.rows() != d || B.cols() != m || C.rows() != m || C.cols() != d || D.rows() != m)
        throw InputError("RealizationModel: block shapes are inconsistent");
    if (!tau.allFinite() || !A.allFinite() || !B.allFinite() || !C.allFinite() || !D.allFinite())
        throw InputError("RealizationModel: non-finite entries");
    if (!is_unitary(tau, tol.op)) throw InputError("RealizationModel: tau is not unitary");
}

void RealizationModel::validate(const Tolerances& tol) const {
    validate_structure(tol);
    if (!is_unitary(colligation(), tol.op)) throw InputError("RealizationModel: colligation is not unitary");
}

namespace {

struct Resolvent {
    ComplexMatrix phi;
    ComplexMatrix inv;  // (I − Dφ)^{-1}
};

Resolvent resolvent(const RealizationModel& m, const GammaPoint& x, const Tolerances& tol) {
    Resolvent r;
    r.phi = phi_operator(m.tau, x, tol);
    const auto n = m.D.rows();
    const ComplexMatrix pencil = ComplexMatrix::Identity(n, n) - m.D * r.phi;
    if (n > 0) {
        Eigen::JacobiSVD<ComplexMatrix> svd(pencil);
        const auto& sv = svd.singularValues();
        if (sv(n - 1) <= 1e-13 * std::max(1.0, sv(0))) throw NumericalError("eval_model: I - D*phi is singular");
    }
    r.inv = pencil.partialPivLu().inverse();
    return r;
}

}  // namespace

ComplexMatrix eval_model(const RealizationModel& m, const GammaPoint& x, const Tolerances& tol) {
    m.validate(tol);
    const Resolvent r = resolvent(m, x, tol);
    const ComplexMatrix psi = m.A + m.B * r.phi * r.inv * m.C;
    if (in_open_g(x) && op_norm(psi) > 1.0 + tol.op)
        throw NumericalError("eval_model: value is not contractive inside G");
    return psi;
}

InnerDefect inner_defect(const RealizationModel& m, const GammaPoint& x, const Tolerances& tol) {
    m.validate_structure(tol);
    const Resolvent r = resolvent(m, x, tol);
    const ComplexMatrix psi = m.A + m.B * r.phi * r.inv * m.C;
    const auto d = psi.cols();
    const auto n = r.phi.rows();
    InnerDefect out;
    out.direct = ComplexMatrix::Identity(d, d) - psi.adjoint() * psi;
    const ComplexMatrix g = r.inv * m.C;
    out.identity_form = g.adjoint() * (ComplexMatrix::Identity(n, n) - r.phi.adjoint() * r.phi) * g;
    out.mismatch = op_norm(out.direct - out.identity_form);
    if (out.mismatch > tol.id * std::max(1.0, op_norm(g) * op_norm(g)))
        throw NumericalError("inner_defect: the two forms of I - Psi*Psi disagree");
    return out;
}

BoundaryAudit boundary_unitarity_audit(const RealizationModel& m, std::size_t n, const Tolerances& tol) {
    m.validate_structure(tol);
    BoundaryAudit out;
    if (n == 0) {
        out.pass = true;
        return out;
    }
    std::vector<double> defect(n * n, -1.0);
    parallel_for(n, [&](std::size_t a) {
        const double t1 = 2.0 * std::numbers::pi * (static_cast<double>(a) + 0.5) / static_cast<double>(n);
        for (std::size_t b = 0; b < n; ++b) {
            const double t2 = 2.0 * std::numbers::pi * (static_cast<double>(b) + 0.25) / static_cast<double>(n);
            const GammaPoint x = symmetrize(std::polar(1.0, t1), std::polar(1.0, t2));
            const auto k = m.tau.rows();
            const ComplexMatrix two = 2.0 * ComplexMatrix::Identity(k, k) - x.s * m.tau;
            Eigen::JacobiSVD<ComplexMatrix> s1(two);
            if (k > 0 && s1.singularValues()(0) > 1e12 * s1.singularValues()(k - 1)) continue;
            const ComplexMatrix phi = (2.0 * x.p * m.tau - x.s * ComplexMatrix::Identity(k, k)) * two.inverse();
            const ComplexMatrix pencil = ComplexMatrix::Identity(k, k) - m.D * phi;
            Eigen::JacobiSVD<ComplexMatrix> s2(pencil);
            if (k > 0 && s2.singularValues()(0) > 1e12 * s2.singularValues()(k - 1)) continue;
            const ComplexMatrix psi = m.A + m.B * phi * pencil.inverse() * m.C;
            const auto d = psi.cols();
            defect[a * n + b] = op_norm(ComplexMatrix::Identity(d, d) - psi.adjoint() * psi);
        }
    });
    for (const double v : defect) {
        if (v < 0.0) {
            ++out.skipped;
        } else {
            ++out.evaluated;
            out.max_defect = std::max(out.max_defect, v);
        }
    }
    out.pass = out.max_defect <= tol.inner;
    return out;
}

std::vector<ComplexMatrix> agler_values(const RealizationModel& m, std::span<const GammaPoint> nodes,
                                        const Tolerances& tol) {
    m.validate(tol);
    std::vector<ComplexMatrix> out;
    out.reserve(nodes.size());
    for (const auto& x : nodes) out.push_back(resolvent(m, x, tol).inv * m.C);
    return out;
}

RealizationModel lurking_isometry_interpolant(const ComplexMatrix& tau, std::span<const ComplexMatrix> f_values,
                                              std::span<const GammaPoint> nodes,
                                              std::span<const ComplexMatrix> targets, const Tolerances& tol) {
    if (!is_square(tau) || !is_unitary(tau, tol.op)) throw InputError("lurking_isometry_interpolant: tau is not unitary");
    if (nodes.empty() || f_values.size() != nodes.size() || targets.size() != nodes.size())
        throw InputError("lurking_isometry_interpolant: nodes, F values and targets differ in length");
    const auto k = tau.rows();
    const auto d = targets[0].rows();
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (targets[j].rows() != d || targets[j].cols() != d)
            throw InputError("lurking_isometry_interpolant: targets must be square of one size");
        if (f_values[j].rows() != k || f_values[j].cols() != d)
            throw InputError("lurking_isometry_interpolant: F value has the wrong shape");
    }

    std::vector<ComplexVector> dom, ran;
    const auto total = d + k;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const ComplexMatrix phi = phi_operator(tau, nodes[j], tol);
        const ComplexMatrix lifted = phi * f_values[j];
        for (Eigen::Index c = 0; c < d; ++c) {
            ComplexVector x = ComplexVector::Zero(total);
            x(c) = 1.0;
            x.tail(k) = lifted.col(c);
            ComplexVector y(total);
            y.head(d) = targets[j].col(c);
            y.tail(k) = f_values[j].col(c);
            dom.push_back(std::move(x));
            ran.push_back(std::move(y));
        }
    }

    double worst = 0.0, gscale = 1.0;
    for (std::size_t i = 0; i < dom.size(); ++i)
        for (std::size_t j = 0; j < dom.size(); ++j) {
            const Complex gx = dom[i].dot(dom[j]);
            const Complex gy = ran[i].dot(ran[j]);
            worst = std::max(worst, std::abs(gx - gy));
            gscale = std::max({gscale, std::abs(gx), std::abs(gy)});
        }
    if (worst > tol.gram * gscale)
        throw NoCertificateError("lurking_isometry_interpolant: Gram identity violated, inputs do not certify solvability");

    const ComplexMatrix v = complete_to_unitary(dom, ran, static_cast<std::size_t>(total), tol);
    RealizationModel out;
    out.tau = tau;
    out.A = v.topLeftCorner(d, d);
    out.B = v.topRightCorner(d, k);
    out.C = v.bottomLeftCorner(k, d);
    out.D = v.bottomRightCorner(k, k);

    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const ComplexMatrix w = eval_model(out, nodes[j], tol);
        if ((w - targets[j]).norm() > tol.interp)
            throw NumericalError("lurking_isometry_interpolant: model misses node " + std::to_string(j));
    }
    return out;
}

RealizationModel lurking_isometry_interpolant(const ComplexMatrix& tau, std::span<const ComplexVector> f_values,
                                              const PickData& data, const Tolerances& tol) {
    data.validate(tol);
    std::vector<ComplexMatrix> fs, ws;
    for (const auto& f : f_values) fs.emplace_back(f);
    for (const auto& w : data.targets) ws.push_back(ComplexMatrix::Constant(1, 1, w));
    return lurking_isometry_interpolant(tau, fs, data.nodes, ws, tol);
}

}  // namespace symdisk
