#include "symdisk/gamma.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "symdisk/errors.hpp"

namespace symdisk {

std::string_view to_string(Region r) {
    switch (r) {
        case Region::OpenG: return "OPEN_G";
        case Region::DistBoundary: return "DIST_BOUNDARY";
        case Region::R1: return "R1";
        case Region::R2: return "R2";
        case Region::SymExterior: return "SYM_EXTERIOR";
    }
    return "?";
}

GammaPoint symmetrize(Complex z1, Complex z2) { return {z1 + z2, z1 * z2}; }

std::pair<Complex, Complex> fibers(const GammaPoint& x) {
    const Complex disc = std::sqrt(x.s * x.s - 4.0 * x.p);
    // Pick the sign that avoids cancellation in s ± √disc.
    const Complex plus = x.s + disc;
    const Complex minus = x.s - disc;
    const Complex big = std::abs(plus) >= std::abs(minus) ? plus : minus;
    if (big == Complex{0.0, 0.0}) return {Complex{0.0, 0.0}, Complex{0.0, 0.0}};
    const Complex r1 = 0.5 * big;
    const Complex r2 = x.p / r1;
    return {r1, r2};
}

Complex beta_of(const GammaPoint& x, double tol) {
    const double denom = 1.0 - std::norm(x.p);
    if (std::abs(std::abs(x.p) - 1.0) <= tol) throw InputError("beta_of: |p| = 1");
    return (x.s - std::conj(x.s) * x.p) / denom;
}

bool in_open_g(const GammaPoint& x) {
    const double margin = (1.0 - std::norm(x.p)) - std::abs(x.s - std::conj(x.s) * x.p);
    return std::abs(x.p) < 1.0 && margin > 0.0;
}

double fiber_band(const GammaPoint& x, double tol) {
    const auto [z1, z2] = fibers(x);
    const double delta = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(x.s) + std::abs(x.p));
    const double gap = std::abs(z1 - z2);
    return tol + std::min(std::sqrt(delta), gap > 0.0 ? delta / gap : std::sqrt(delta));
}

Region classify_region(const GammaPoint& x, double tol) {
    enum class Zone { In, On, Out };
    const double band = fiber_band(x, tol);
    auto zone = [band](Complex z) {
        const double m = std::abs(z);
        if (std::abs(m - 1.0) <= band) return Zone::On;
        return m < 1.0 ? Zone::In : Zone::Out;
    };
    const auto [z1, z2] = fibers(x);
    Zone a = zone(z1);
    Zone b = zone(z2);
    if (a == Zone::In && b == Zone::In) {
        if (in_open_g(x)) return Region::OpenG;
        // Rounding disagreement: the fiber closer to T is treated as boundary.
        if (std::abs(z1) >= std::abs(z2)) a = Zone::On; else b = Zone::On;
    }
    if (a == Zone::On && b == Zone::On) return Region::DistBoundary;
    if (a == Zone::On || b == Zone::On) return Region::R1;
    if (a == Zone::Out && b == Zone::Out) return Region::SymExterior;
    return Region::R2;
}

Complex phi_scalar(Complex alpha, const GammaPoint& x) {
    const Complex denom = 2.0 - alpha * x.s;
    if (std::abs(denom) <= 1e-14 * std::max(1.0, std::abs(alpha * x.s)))
        throw InputError("phi_scalar: pole, 2 - alpha*s = 0");
    return (2.0 * alpha * x.p - x.s) / denom;
}

ComplexMatrix phi_operator(const ComplexMatrix& tau, const GammaPoint& x, const Tolerances& tol) {
    if (!is_square(tau)) throw InputError("phi_operator: tau is not square");
    const auto n = tau.rows();
    if (op_norm(tau) > 1.0 + tol.op) throw InputError("phi_operator: tau is not a contraction");
    const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
    const ComplexMatrix pencil = 2.0 * eye - x.s * tau;
    Eigen::JacobiSVD<ComplexMatrix> svd(pencil);
    const auto& sv = svd.singularValues();
    if (n > 0 && sv(n - 1) <= 1e-13 * std::max(1.0, sv(0)))
        throw InputError("phi_operator: 2I - s*tau is singular");
    return (2.0 * x.p * tau - x.s * eye) * pencil.partialPivLu().inverse();
}

Complex szego_kernel(const GammaPoint& x, const GammaPoint& y) {
    const Complex& s = x.s;
    const Complex& p = x.p;
    const Complex& t = y.s;
    const Complex& q = y.p;
    const Complex a = 1.0 - p * std::conj(q);
    const Complex denom = a * a - (s - std::conj(t) * p) * (std::conj(t) - s * std::conj(q));
    if (std::abs(denom) == 0.0) throw InputError("szego_kernel: vanishing denominator");
    return 1.0 / denom;
}

std::vector<GammaPoint> sample_open_g(double max_radius, std::size_t n) {
    std::vector<GammaPoint> out;
    if (n == 0) return out;
    const std::size_t n_r = std::max<std::size_t>(1, n / 2);
    std::vector<Complex> disk;
    for (std::size_t a = 0; a < n_r; ++a) {
        const double r = max_radius * (static_cast<double>(a) + 0.5) / static_cast<double>(n_r);
        for (std::size_t b = 0; b < n; ++b) {
            const double th = 2.0 * std::numbers::pi * (static_cast<double>(b) + 0.25 * static_cast<double>(a % 4)) /
                              static_cast<double>(n);
            disk.push_back(std::polar(r, th));
        }
    }
    for (std::size_t i = 0; i < disk.size(); ++i)
        for (std::size_t j = i; j < disk.size(); j += 3) out.push_back(symmetrize(disk[i], disk[j]));
    return out;
}

}  // namespace symdisk
