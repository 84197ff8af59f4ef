#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "symdisk/config.hpp"
#include "symdisk/linalg.hpp"

namespace symdisk {

/// A point (s, p) of C² in sum/product coordinates.
struct GammaPoint {
    Complex s;
    Complex p;
};

/// Partition of C² by the moduli of the two symmetrization fibers.
enum class Region {
    OpenG,          // π(D²)
    DistBoundary,   // π(T²), the distinguished boundary bG
    R1,             // one fiber on T, the other off T
    R2,             // one fiber in D, the other in E
    SymExterior,    // π(E²)
};

std::string_view to_string(Region r);

/// π(z1, z2) = (z1 + z2, z1·z2).
GammaPoint symmetrize(Complex z1, Complex z2);

/// Roots of λ² − sλ + p, i.e. the unordered preimage of x under π.
std::pair<Complex, Complex> fibers(const GammaPoint& x);

/// β = (s − s̄p)/(1 − |p|²). Throws InputError when |p| is within tol of 1.
Complex beta_of(const GammaPoint& x, double tol = 1e-9);

/// Modulus band for the fibers of x: tol plus the rounding error of the roots,
/// which grows like √ε when the two fibers coalesce.
double fiber_band(const GammaPoint& x, double tol);

Region classify_region(const GammaPoint& x, double tol = 1e-9);

/// Strict membership in the open symmetrized bidisk.
bool in_open_g(const GammaPoint& x);

/// (2αp − s)/(2 − αs).
Complex phi_scalar(Complex alpha, const GammaPoint& x);

/// (2τp − s)(2 − τs)^{-1} for a contraction τ.
ComplexMatrix phi_operator(const ComplexMatrix& tau, const GammaPoint& x, const Tolerances& tol = {});

/// Szegő-type kernel of G.
Complex szego_kernel(const GammaPoint& x, const GammaPoint& y);

/// Symmetrized polar grid: π(r_a e^{iθ_b}, r_c e^{iθ_d}) with every radius < max_radius.
std::vector<GammaPoint> sample_open_g(double max_radius, std::size_t n);

}  // namespace symdisk
