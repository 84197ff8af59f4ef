#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "symdisk/config.hpp"
#include "symdisk/gamma.hpp"
#include "symdisk/linalg.hpp"

namespace symdisk {

/// Bivariate polynomial Σ c[i][j] s^i p^j.
class BivarPoly {
   public:
    BivarPoly() = default;
    /// coeffs(i, j) multiplies s^i p^j. Trailing rows/columns below `trim_tol`·max|c| are dropped.
    explicit BivarPoly(ComplexMatrix coeffs, double trim_tol = 0.0);

    Complex operator()(Complex s, Complex p) const;
    Complex coefficient(std::size_t i, std::size_t j) const;
    std::size_t deg_s() const;
    std::size_t deg_p() const;
    const ComplexMatrix& coeffs() const { return coeffs_; }

    /// Coefficients divided by the s^{deg_s} p^0 coefficient (or the largest one if that vanishes).
    BivarPoly normalized() const;
    /// Human-readable form, e.g. "s^2 - s*p - s + 0.25*p^2 - 0.5*p + 0.25".
    std::string to_string(double zero_tol = 1e-12) const;

   private:
    ComplexMatrix coeffs_;
};

/// The determinantal variety W_F = {det(F* + pF − sI) = 0} of a numerical contraction.
class PencilVariety {
   public:
    explicit PencilVariety(ComplexMatrix f, const Tolerances& tol = {});

    const ComplexMatrix& matrix() const { return f_; }
    std::size_t dim() const { return static_cast<std::size_t>(f_.rows()); }
    double numerical_radius() const { return nu_; }

   private:
    ComplexMatrix f_;
    double nu_ = 0.0;
};

/// det(F* + pF − sI) by 2-D DFT interpolation on a (d+1)² grid of scaled roots of unity.
BivarPoly defining_poly(const PencilVariety& v);

/// Eigenvalues of F* + pF with multiplicity, sorted by (Re, Im).
std::vector<Complex> slice_points(const PencilVariety& v, Complex p);

/// σ_min(F* + pF − sI); zero exactly on W_F.
double membership_residual(const PencilVariety& v, const GammaPoint& x);

struct DistinguishedVerdict {
    bool distinguished = false;
    std::vector<Complex> witnesses;  // unimodular eigenvalues of F
};

DistinguishedVerdict is_distinguished(const PencilVariety& v, const Tolerances& tol = {});

struct RegionAuditReport {
    std::array<std::size_t, 5> counts{};  // indexed by Region
    std::vector<GammaPoint> r1_hits;
    std::vector<GammaPoint> r2_hits;
    bool cnu = false;
    bool strict_pass = false;   // no R1 and no R2
    bool general_pass = false;  // no R2
    bool pass = false;          // strict for c.n.u. F, general otherwise

    std::size_t count(Region r) const { return counts[static_cast<std::size_t>(r)]; }
    std::size_t total() const;
};

RegionAuditReport region_audit(const PencilVariety& v, std::span<const Complex> p_grid, const Tolerances& tol = {});

/// Polar p-grid: radii inside the disk up to 0.95, the unit circle, and outside up to 2.
std::vector<Complex> default_p_grid(std::size_t n_angles = 24);

/// Polar p-grid restricted to |p| ≤ radius (radius < 1 gives a grid inside D).
std::vector<Complex> disk_p_grid(double radius, std::size_t n);

struct RoyalContainment {
    bool joint_kernel = false;          // ker(F − β̄I) ∩ ker(F* − βI) ≠ {0}
    bool det_identically_zero = false;  // det(F* − βI + p(F − β̄I)) ≈ 0 at d+1 samples
    bool certified = false;             // both agree and |β| = 1
    double max_det = 0.0;
};

/// Whether the sheet W_β = {(β + β̄p, p)} lies inside W_F.
RoyalContainment royal_containment(const PencilVariety& v, Complex beta, const Tolerances& tol = {});

enum class PropertyScope {
    FullVariety,    // every sample of W_F
    GIntersection,  // closure of W_F ∩ G, sampled through the c.n.u. block
};

/// Among samples with max fiber modulus ≈ 1 (points of ∂Γ), both fibers must be unimodular.
bool distinguished_property_check(const PencilVariety& v, std::span<const Complex> p_grid, PropertyScope scope,
                                  const Tolerances& tol = {});

}  // namespace symdisk
