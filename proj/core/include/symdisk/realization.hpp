#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "symdisk/config.hpp"
#include "symdisk/gamma.hpp"
#include "symdisk/linalg.hpp"
#include "symdisk/pick.hpp"

namespace symdisk {

/**
 * @brief Ψ(s, p) = A + B φ(τ, s, p)(I − D φ(τ, s, p))^{-1} C.
 *
 * τ is unitary on the state space and [[A, B], [C, D]] is unitary.
 */
struct RealizationModel {
    ComplexMatrix tau;
    ComplexMatrix A;
    ComplexMatrix B;
    ComplexMatrix C;
    ComplexMatrix D;

    std::size_t dim() const { return static_cast<std::size_t>(A.rows()); }
    std::size_t state_dim() const { return static_cast<std::size_t>(tau.rows()); }
    ComplexMatrix colligation() const;
    /// Shapes, unitarity of τ and of the colligation; throws InputError.
    void validate(const Tolerances& tol = {}) const;
    /// validate() without the colligation unitarity check.
    void validate_structure(const Tolerances& tol = {}) const;
};

/// Ψ(x). Throws NumericalError when I − Dφ is singular or ‖Ψ(x)‖ > 1 + tol.op at x ∈ G.
ComplexMatrix eval_model(const RealizationModel& m, const GammaPoint& x, const Tolerances& tol = {});

struct InnerDefect {
    ComplexMatrix direct;         // I − Ψ*Ψ
    ComplexMatrix identity_form;  // C*(I − φ*D*)^{-1}(I − φ*φ)(I − Dφ)^{-1}C
    double mismatch = 0.0;
};

/// Both forms of I − Ψ*Ψ; throws NumericalError when they differ by more than tol.id.
/// The colligation is not required to be unitary, so a broken model surfaces as a mismatch.
InnerDefect inner_defect(const RealizationModel& m, const GammaPoint& x, const Tolerances& tol = {});

struct BoundaryAudit {
    double max_defect = 0.0;
    std::size_t evaluated = 0;
    std::size_t skipped = 0;  // points near a pole of the formula
    bool pass = false;
};

/// max ‖I − Ψ*Ψ‖ over an n×n grid of π(e^{iθ1}, e^{iθ2}). A non-unitary colligation fails rather than throws.
BoundaryAudit boundary_unitarity_audit(const RealizationModel& m, std::size_t n = 64, const Tolerances& tol = {});

/// F(x) = (I − Dφ(τ, x))^{-1} C at each node.
std::vector<ComplexMatrix> agler_values(const RealizationModel& m, std::span<const GammaPoint> nodes,
                                        const Tolerances& tol = {});

/// Unitary colligation sending [I; φ_j F_j] to [W_j; F_j] column by column.
/// Throws NoCertificateError when the two Gram matrices disagree.
RealizationModel lurking_isometry_interpolant(const ComplexMatrix& tau, std::span<const ComplexMatrix> f_values,
                                              std::span<const GammaPoint> nodes,
                                              std::span<const ComplexMatrix> targets, const Tolerances& tol = {});

/// Scalar targets; f_values[j] is the state vector F(λ_j).
RealizationModel lurking_isometry_interpolant(const ComplexMatrix& tau, std::span<const ComplexVector> f_values,
                                              const PickData& data, const Tolerances& tol = {});

}  // namespace symdisk
