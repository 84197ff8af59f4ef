#pragma once

#include <optional>
#include <span>
#include <vector>

#include "symdisk/config.hpp"
#include "symdisk/linalg.hpp"

namespace symdisk {

/// λ_max of (e^{−iθ}F + e^{iθ}F*)/2, the support function of W(F) in direction θ.
double support_function(const ComplexMatrix& f, double theta);

/// ν(F) = sup |⟨Fh,h⟩| by coarse θ-grid plus golden-section refinement.
double numerical_radius(const ComplexMatrix& f, const Tolerances& tol = {});

struct CnuVerdict {
    bool cnu = true;
    std::vector<Complex> witnesses;  // unimodular eigenvalues, clustered
};

/// Spectral c.n.u. test for numerical contractions: no eigenvalue within
/// tol.mod of the unit circle.
CnuVerdict is_cnu(const ComplexMatrix& f, const Tolerances& tol = {});

struct UnitaryEigenvalue {
    Complex value;
    std::size_t multiplicity = 0;
};

/**
 * @brief Unitary ⊕ completely non-unitary splitting of a numerical contraction.
 *
 * transform* · F · transform = diag(β₁I, …, β_rI, cnu_block).
 */
struct CnuDecomposition {
    ComplexMatrix transform;
    std::vector<UnitaryEigenvalue> unitary_eigenvalues;
    ComplexMatrix cnu_block;

    std::size_t unitary_dim() const;
    ComplexMatrix block_diagonal() const;
    /// Columns of `transform` spanning the unitary part.
    ComplexMatrix unitary_basis() const;
};

CnuDecomposition cnu_decompose(const ComplexMatrix& f, const Tolerances& tol = {});

/// PU + U*(I − P) for an orthogonal projection P and unitary U.
ComplexMatrix pu_compress(const ComplexMatrix& p, const ComplexMatrix& u, const Tolerances& tol = {});

/// Checks that span(h_basis) yields the three-block form PH ⊕ P^⊥H ⊕ H^⊥ for U.
/// An empty basis is never a witness.
bool verify_pu_reducing(const ComplexMatrix& p, const ComplexMatrix& u, std::span<const ComplexVector> h_basis,
                        const Tolerances& tol = {});

/// Searches unions of unimodular eigenspaces of PU + U*P^⊥ for a reducing witness.
std::optional<std::vector<ComplexVector>> find_pu_witness(const ComplexMatrix& p, const ComplexMatrix& u,
                                                          const Tolerances& tol = {});

}  // namespace symdisk
