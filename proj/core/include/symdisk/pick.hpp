#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symdisk/config.hpp"
#include "symdisk/gamma.hpp"
#include "symdisk/linalg.hpp"

namespace symdisk {

/// k(x, y) over point pairs. Convention: k(x, y) = ⟨k_y, k_x⟩, so Gram[i][j] = k(λ_i, λ_j).
using KernelFn = std::function<Complex(const GammaPoint&, const GammaPoint&)>;
/// A scalar function on G.
using Evaluator = std::function<Complex(const GammaPoint&)>;

/// Interpolation nodes in G with targets in the closed unit disk.
struct PickData {
    std::vector<GammaPoint> nodes;
    std::vector<Complex> targets;

    /// Throws InputError on length mismatch, nodes outside G, repeated nodes, or |w| > 1.
    void validate(const Tolerances& tol = {}) const;
    std::size_t size() const { return nodes.size(); }
};

/// A kernel's Gram matrix on a node set.
struct KernelMatrix {
    std::vector<GammaPoint> nodes;
    ComplexMatrix gram;

    /// Evaluates `k` on all node pairs and validates the result.
    static KernelMatrix from_kernel(std::vector<GammaPoint> nodes, const KernelFn& k, const Tolerances& tol = {});
    /// Wraps a user-supplied table.
    static KernelMatrix from_table(std::vector<GammaPoint> nodes, ComplexMatrix gram, const Tolerances& tol = {});

    /// Hermitian, PSD and positive diagonal; throws InputError otherwise.
    void validate(const Tolerances& tol = {}) const;
};

KernelFn szego();

/// [(1 − w_i w̄_j) k(λ_i, λ_j)].
ComplexMatrix pick_matrix(const PickData& data, const KernelFn& k, const Tolerances& tol = {});
ComplexMatrix pick_matrix(const KernelMatrix& k, std::span<const Complex> targets, const Tolerances& tol = {});

struct PsdReport {
    double min_eigenvalue = 0.0;
    std::optional<ComplexVector> null_vector;  // unit vector, present iff singular to tol.active
};

PsdReport psd_report(const ComplexMatrix& m, const Tolerances& tol = {});

/**
 * @brief Coordinate multiplication operators on H(k) in an orthonormal basis.
 *
 * Column j of `node_vectors` represents the kernel function k_j, so
 * node_vectors* · node_vectors = gram. Ms_adj and Mp_adj act diagonally on
 * those columns by s̄_j and p̄_j; D = (I − Mp·Mp*)^{1/2}.
 */
struct KernelBasisOperators {
    ComplexMatrix node_vectors;
    ComplexMatrix Ms;
    ComplexMatrix Mp;
    ComplexMatrix D;
};

KernelBasisOperators kernel_basis_operators(const KernelMatrix& k, const Tolerances& tol = {});

struct FundamentalOperator {
    ComplexMatrix F;              // on Ran D, in the basis `defect_basis`
    ComplexMatrix defect_basis;   // orthonormal columns spanning Ran D
    double residual = 0.0;        // ‖Ms* − Ms·Mp* − D F' D‖
    KernelBasisOperators ops;
};

/// Solves Ms* − Ms·Mp* = D F' D on Ran D.
FundamentalOperator fundamental_operator(const KernelMatrix& k, const Tolerances& tol = {});

struct AdmissibilityReport {
    bool pass = false;
    std::vector<std::string> failures;
    double norm_mp = 0.0;
    double norm_ms = 0.0;
    double nu_f = 0.0;
    double isometry_defect = 0.0;
    double intertwine_s = 0.0;
    double intertwine_p = 0.0;
    double tail_bound = 0.0;
};

/// Evidence that (Ms, Mp) is a Γ-contraction: norms, ν(F') and the truncated dilation.
AdmissibilityReport admissibility_audit(const KernelMatrix& k, std::size_t trunc, const Tolerances& tol = {});

struct Perturbation {
    Evaluator h;
    double sup_estimate = 0.0;  // max |h| over the sample grid
};

/// h_δ = f + δ·∏[(s − s_r) + η(p − p_r)], an interpolant differing from f off the nodes.
Perturbation nonextremal_perturbation(const PickData& data, Evaluator f, Complex eta, double delta,
                                      std::span<const GammaPoint> grid, const Tolerances& tol = {});

/// Grid points where every pair of evaluators differs by at most `tol`.
std::vector<GammaPoint> agreement_locus(std::span<const Evaluator> fs, std::span<const GammaPoint> grid, double tol);

}  // namespace symdisk
