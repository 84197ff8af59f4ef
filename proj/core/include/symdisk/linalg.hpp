#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "symdisk/config.hpp"

namespace symdisk {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Eigenvalues with algebraic multiplicity, sorted by (Re, Im).
using Spectrum = std::vector<Complex>;

struct HermitianEig {
    Eigen::VectorXd values;  // ascending
    ComplexMatrix vectors;   // orthonormal columns
};

struct SpectralProjection {
    ComplexMatrix matrix;
    std::size_t enclosed_count = 0;
    Complex center;
    double radius = 0.0;
    std::size_t nodes_used = 0;
};

struct EigenCluster {
    Complex value;  // cluster mean
    std::size_t multiplicity = 0;
};

/// Spectral (2-)norm.
double op_norm(const ComplexMatrix& a);
double scale_of(const ComplexMatrix& a);  // max(1, ‖a‖)

bool is_square(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol);
bool is_unitary(const ComplexMatrix& a, double tol);

Spectrum spectrum(const ComplexMatrix& a);
double spectral_radius(const ComplexMatrix& a);

/// Groups eigenvalues lying within `tol` of each other (single linkage).
std::vector<EigenCluster> cluster_eigenvalues(const Spectrum& values, double tol);

HermitianEig hermitian_eig(const ComplexMatrix& h, const Tolerances& tol = {});

/// Orthonormal basis of right singular vectors with σ ≤ rank_tol·σ_max.
/// A zero matrix has the whole space as null space.
std::vector<ComplexVector> null_space(const ComplexMatrix& a, double rank_tol);

/// Same basis as columns of a matrix (cols = nullity).
ComplexMatrix null_space_matrix(const ComplexMatrix& a, double rank_tol);

/// Orthonormal basis (columns) of the range, rank decided at rank_tol·σ_max.
ComplexMatrix range_basis(const ComplexMatrix& a, double rank_tol);

/// Orthonormal basis of the orthogonal complement of span(columns of q).
/// `q` must have orthonormal columns.
ComplexMatrix orthogonal_complement(const ComplexMatrix& q);

/// Moore–Penrose pseudo-inverse with singular values below rank_tol·σ_max dropped.
ComplexMatrix pseudo_inverse(const ComplexMatrix& a, double rank_tol);

/// Smallest singular value (0 for an empty matrix).
double sigma_min(const ComplexMatrix& a);

ComplexMatrix psd_sqrt(const ComplexMatrix& m, const Tolerances& tol = {});

/// Riesz projection (1/2πi)∮(ζ−A)^{-1}dζ over the circle |ζ−center| = radius,
/// trapezoid rule. Throws NumericalError("ill-placed contour") when an
/// eigenvalue lies within dist_guard·radius of the circle.
SpectralProjection spectral_projection(const ComplexMatrix& a, Complex center, double radius,
                                       std::size_t n_quad, const Tolerances& tol = {});

/// Unitary U on C^n with U·dom[i] = ran[i]. The two families must have equal
/// Gram matrices (to tol.gram).
ComplexMatrix complete_to_unitary(std::span<const ComplexVector> dom,
                                  std::span<const ComplexVector> ran, std::size_t n,
                                  const Tolerances& tol = {});

/// Unit vector scaled so its largest-modulus entry is real positive.
ComplexVector normalize_phase(const ComplexVector& v);

}  // namespace symdisk
