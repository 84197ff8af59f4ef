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
 * @brief A c.n.u. numerical contraction F with kernel vectors at the nodes.
 *
 * u_nodes[j] lies in Ker(F + p̄_j F* − s̄_j I). Off the nodes the kernel
 * vector is the unit smallest singular vector of that pencil.
 */
struct ExtensionModel {
    ComplexMatrix F;
    std::vector<GammaPoint> nodes;
    std::vector<ComplexVector> u_nodes;
    double max_residual = 0.0;            // max_j ‖(F + p̄_j F* − s̄_j I) u_j‖
    std::size_t defect_dim = 0;           // dimension of Ran D before the unitary part is dropped
    std::size_t dropped_unitary_dim = 0;  // dimension of the unitary summand removed from F'
};

/// Extension data of an admissible kernel on its nodes. Throws NumericalError
/// when the admissibility audit fails, a residual exceeds tol.ext, or a node
/// vector leaks into the unitary summand.
ExtensionModel build_extension(const KernelMatrix& k, const Tolerances& tol = {});

/// A node-free model from a c.n.u. numerical contraction.
ExtensionModel model_from_matrix(const ComplexMatrix& f, const Tolerances& tol = {});

/// Stored u_j at a node, otherwise a unit null vector of F + p̄F* − s̄I.
/// Throws InputError when x is off the variety.
ComplexVector kernel_vector_at(const ExtensionModel& m, const GammaPoint& x, const Tolerances& tol = {});

/// ⟨u(y), u(x)⟩ / (1 − p_x · conj(p_y)).
Complex extended_kernel(const ExtensionModel& m, const GammaPoint& x, const GammaPoint& y,
                        const Tolerances& tol = {});

/// extended_kernel as a KernelFn.
KernelFn model_kernel(ExtensionModel m, const Tolerances& tol = {});

struct TraceStep {
    Complex z;
    std::vector<Complex> branch_values;        // eigenvalues of F + zF* inside the ε-disk
    std::vector<ComplexVector> branch_vectors; // P_l(z) u_j
    std::size_t projection_rank = 0;           // eigenvalues enclosed by the ε-circle
    double sum_error = 0.0;                    // ‖Σ_l v_l − u_j‖
    double value_error = 0.0;                  // max_l |α_l − s̄_j|
    double membership = 0.0;                   // max_l σ_min(F* + z̄F − ᾱ_l I)
    double idempotency = 0.0;                  // ‖P² − P‖ of the ε-disk projection
    double branch_idempotency = 0.0;           // max_l ‖P_l² − P_l‖ / max(1, ‖P_l‖²)
};

struct SheetTrace {
    std::size_t node_index = 0;
    Complex target;                 // s̄_j
    Complex z_limit;                // p̄_j
    double epsilon = 0.0;           // contour radius actually used
    std::size_t branch_count = 0;   // q_j: eigenvalue clusters inside the ε-disk at the path end
    std::vector<TraceStep> steps;
};

/// Follows z_k = p̄_j + radius·0.5^k·d, k < n_steps, with d pointing from p̄_j
/// toward the origin (d = 1 at p̄_j = 0). Shrinks ε up to three times when a
/// contour is ill-placed.
SheetTrace branch_trace(const ExtensionModel& m, std::size_t node_index, double radius, std::size_t n_steps,
                        const Tolerances& tol = {});

/// w = Σ K(x, λ_j)γ_j / Σ conj(w_j) K(x, λ_j)γ_j for a null vector γ of the Pick matrix.
Complex unique_value(const ExtensionModel& m, const KernelMatrix& k, const ComplexVector& gamma,
                     std::span<const Complex> targets, const GammaPoint& x, const Tolerances& tol = {});

}  // namespace symdisk
