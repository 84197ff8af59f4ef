#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace symdisk {

/**
 * @brief Named numerical tolerances shared by every module.
 *
 * Relative tolerances are scaled by max(1, ‖A‖) of the operand they guard
 * unless an operation states otherwise.
 */
struct Tolerances {
    double eig = 1e-10;      // eigen-residual, relative to ‖A‖
    double herm = 1e-12;     // Hermitian symmetry check
    double psd = 1e-10;      // negative-eigenvalue allowance, relative to ‖M‖
    double recon = 1e-10;    // reconstruction residuals
    double proj = 1e-8;      // ‖P²−P‖ for spectral projections
    double gram = 1e-10;     // Gram-matrix equality in unitary completion
    double rank = 1e-10;     // singular-value cutoff, relative to σ_max
    double cluster = 1e-8;   // eigenvalue clustering, relative to ‖A‖
    double mod = 1e-9;       // band around modulus one
    double op = 1e-9;        // operator-norm / unitarity checks
    double nu = 1e-9;        // numerical-contraction precondition ν ≤ 1 + nu
    double nu_search = 1e-10;  // golden-section accuracy of ν
    double memb = 1e-9;      // variety membership, relative to max(1, ‖F‖)
    double node = 1e-9;      // distinctness of interpolation nodes
    double active = 1e-9;    // singular Pick matrix threshold
    double fund = 1e-8;      // fundamental-equation residual, times max(1, ‖Ms‖)
    double dil = 1e-8;       // dilation isometry / intertwining residual
    double ext = 1e-8;       // extension-model residuals
    double den = 1e-10;      // vanishing denominator in the uniqueness formula
    double id = 1e-9;        // inner-defect identity agreement
    double inner = 1e-9;     // boundary unitarity defect
    double interp = 1e-8;    // interpolation node check

    std::size_t n_quad = 64;     // minimum trapezoid nodes on a contour
    double dist_guard = 0.1;     // eigenvalue exclusion band around a contour
    std::size_t n_theta = 257;   // coarse grid of the numerical-radius search
    std::size_t trunc = 200;     // dilation truncation in the admissibility audit

    /// Sets a real-valued tolerance by its short name ("eig", "mod", ...).
    /// Returns false when the name is unknown.
    bool set(std::string_view name, double value);
    /// Looks up a tolerance by short name.
    std::optional<double> get(std::string_view name) const;
};

}  // namespace symdisk
