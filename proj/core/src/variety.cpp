#include "symdisk/variety.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "symdisk/errors.hpp"
#include "symdisk/numrange.hpp"

namespace symdisk {

namespace {

constexpr double kSRadius = 2.0;
constexpr double kPRadius = 1.0;

ComplexMatrix pencil(const ComplexMatrix& f, Complex s, Complex p) {
    const auto n = f.rows();
    return f.adjoint() + p * f - s * ComplexMatrix::Identity(n, n);
}

Complex det(const ComplexMatrix& a) {
    if (a.rows() == 0) return 1.0;
    return a.partialPivLu().determinant();
}

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string format_coeff(Complex c, double zero_tol) {
    if (std::abs(c.imag()) <= zero_tol) return format_real(c.real());
    if (std::abs(c.real()) <= zero_tol) return format_real(c.imag()) + "i";
    return "(" + format_real(c.real()) + (c.imag() < 0 ? "-" : "+") + format_real(std::abs(c.imag())) + "i)";
}

}  // namespace

BivarPoly::BivarPoly(ComplexMatrix coeffs, double trim_tol) : coeffs_(std::move(coeffs)) {
    const double cmax = coeffs_.size() ? coeffs_.cwiseAbs().maxCoeff() : 0.0;
    const double cut = trim_tol * cmax;
    Eigen::Index rows = coeffs_.rows();
    Eigen::Index cols = coeffs_.cols();
    while (rows > 1 && coeffs_.row(rows - 1).leftCols(cols).cwiseAbs().maxCoeff() <= cut) --rows;
    while (cols > 1 && coeffs_.col(cols - 1).topRows(rows).cwiseAbs().maxCoeff() <= cut) --cols;
    coeffs_ = coeffs_.topLeftCorner(rows, cols).eval();
}

Complex BivarPoly::operator()(Complex s, Complex p) const {
    // Horner in s over Horner-in-p rows.
    Complex acc{0.0, 0.0};
    for (Eigen::Index i = coeffs_.rows() - 1; i >= 0; --i) {
        Complex row{0.0, 0.0};
        for (Eigen::Index j = coeffs_.cols() - 1; j >= 0; --j) row = row * p + coeffs_(i, j);
        acc = acc * s + row;
    }
    return acc;
}

Complex BivarPoly::coefficient(std::size_t i, std::size_t j) const {
    const auto ii = static_cast<Eigen::Index>(i);
    const auto jj = static_cast<Eigen::Index>(j);
    if (ii >= coeffs_.rows() || jj >= coeffs_.cols()) return 0.0;
    return coeffs_(ii, jj);
}

std::size_t BivarPoly::deg_s() const { return coeffs_.rows() ? static_cast<std::size_t>(coeffs_.rows() - 1) : 0; }
std::size_t BivarPoly::deg_p() const { return coeffs_.cols() ? static_cast<std::size_t>(coeffs_.cols() - 1) : 0; }

BivarPoly BivarPoly::normalized() const {
    if (coeffs_.size() == 0) return *this;
    Complex lead = coefficient(deg_s(), 0);
    if (std::abs(lead) == 0.0) {
        Eigen::Index bi = 0, bj = 0;
        coeffs_.cwiseAbs().maxCoeff(&bi, &bj);
        lead = coeffs_(bi, bj);
    }
    if (std::abs(lead) == 0.0) return *this;
    BivarPoly out;
    out.coeffs_ = coeffs_ / lead;
    return out;
}

std::string BivarPoly::to_string(double zero_tol) const {
    std::string out;
    const double cut = zero_tol * (coeffs_.size() ? coeffs_.cwiseAbs().maxCoeff() : 0.0);
    for (Eigen::Index i = coeffs_.rows() - 1; i >= 0; --i) {
        for (Eigen::Index j = coeffs_.cols() - 1; j >= 0; --j) {
            Complex c = coeffs_(i, j);
            if (std::abs(c) <= cut) continue;
            if (std::abs(c.imag()) <= cut) c = c.real();
            std::string mono;
            if (i > 0) mono += i == 1 ? "s" : "s^" + std::to_string(i);
            if (j > 0) mono += std::string(mono.empty() ? "" : "*") + (j == 1 ? "p" : "p^" + std::to_string(j));
            const bool real_coeff = c.imag() == 0.0;
            bool negative = real_coeff && c.real() < 0.0;
            const Complex mag = negative ? -c : c;
            std::string coeff = format_coeff(mag, cut);
            if (!mono.empty() && real_coeff && std::abs(mag.real() - 1.0) <= cut) coeff.clear();
            std::string term = coeff.empty() ? mono : (mono.empty() ? coeff : coeff + "*" + mono);
            if (out.empty())
                out = (negative ? "-" : "") + term;
            else
                out += (negative ? " - " : " + ") + term;
        }
    }
    return out.empty() ? "0" : out;
}

PencilVariety::PencilVariety(ComplexMatrix f, const Tolerances& tol) : f_(std::move(f)) {
    if (!is_square(f_)) throw InputError("PencilVariety: matrix is not square");
    if (!f_.allFinite()) throw InputError("PencilVariety: matrix has non-finite entries");
    nu_ = symdisk::numerical_radius(f_, tol);
    if (nu_ > 1.0 + tol.nu) throw InputError("PencilVariety: F is not a numerical contraction");
}

BivarPoly defining_poly(const PencilVariety& v) {
    const auto& f = v.matrix();
    const auto m = static_cast<Eigen::Index>(v.dim()) + 1;
    ComplexMatrix samples(m, m);
    std::vector<Complex> root(static_cast<std::size_t>(m));
    for (Eigen::Index k = 0; k < m; ++k)
        root[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b)
            samples(a, b) = det(pencil(f, kSRadius * root[static_cast<std::size_t>(a)], kPRadius * root[static_cast<std::size_t>(b)]));

    ComplexMatrix coeffs(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            Complex acc{0.0, 0.0};
            for (Eigen::Index a = 0; a < m; ++a)
                for (Eigen::Index b = 0; b < m; ++b)
                    acc += samples(a, b) * std::conj(root[static_cast<std::size_t>((i * a) % m)] *
                                                     root[static_cast<std::size_t>((j * b) % m)]);
            coeffs(i, j) = acc / static_cast<double>(m * m) / (std::pow(kSRadius, static_cast<double>(i)) *
                                                               std::pow(kPRadius, static_cast<double>(j)));
        }
    }
    // Snap interpolation noise to zero before trimming.
    const double cmax = coeffs.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) {
            Complex& c = coeffs(i, j);
            if (std::abs(c.real()) <= 1e-13 * cmax) c.real(0.0);
            if (std::abs(c.imag()) <= 1e-13 * cmax) c.imag(0.0);
        }
    return BivarPoly(coeffs, 1e-13);
}

std::vector<Complex> slice_points(const PencilVariety& v, Complex p) {
    const auto& f = v.matrix();
    return spectrum(f.adjoint() + p * f);
}

double membership_residual(const PencilVariety& v, const GammaPoint& x) {
    return sigma_min(pencil(v.matrix(), x.s, x.p));
}

DistinguishedVerdict is_distinguished(const PencilVariety& v, const Tolerances& tol) {
    const CnuVerdict c = is_cnu(v.matrix(), tol);
    return {c.cnu, c.witnesses};
}

std::size_t RegionAuditReport::total() const {
    std::size_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

RegionAuditReport region_audit(const PencilVariety& v, std::span<const Complex> p_grid, const Tolerances& tol) {
    RegionAuditReport rep;
    rep.cnu = is_cnu(v.matrix(), tol).cnu;
    for (const Complex& p : p_grid) {
        for (const Complex& s : slice_points(v, p)) {
            const GammaPoint x{s, p};
            const Region r = classify_region(x, tol.mod);
            ++rep.counts[static_cast<std::size_t>(r)];
            if (r == Region::R1) rep.r1_hits.push_back(x);
            if (r == Region::R2) rep.r2_hits.push_back(x);
        }
    }
    rep.general_pass = rep.r2_hits.empty();
    rep.strict_pass = rep.general_pass && rep.r1_hits.empty();
    rep.pass = rep.cnu ? rep.strict_pass : rep.general_pass;
    return rep;
}

std::vector<Complex> disk_p_grid(double radius, std::size_t n) {
    std::vector<Complex> out{Complex{0.0, 0.0}};
    const std::size_t n_r = std::max<std::size_t>(1, n / 2);
    for (std::size_t a = 1; a <= n_r; ++a) {
        const double r = radius * static_cast<double>(a) / static_cast<double>(n_r);
        for (std::size_t b = 0; b < n; ++b)
            out.push_back(std::polar(r, 2.0 * std::numbers::pi * (static_cast<double>(b) + 0.5) / static_cast<double>(n)));
    }
    return out;
}

std::vector<Complex> default_p_grid(std::size_t n_angles) {
    static constexpr double radii[] = {0.0, 0.1, 0.3, 0.5, 0.7, 0.85, 0.95, 1.0, 1.05, 1.2, 1.5, 2.0};
    std::vector<Complex> out;
    for (double r : radii) {
        if (r == 0.0) {
            out.emplace_back(0.0, 0.0);
            continue;
        }
        for (std::size_t b = 0; b < n_angles; ++b)
            out.push_back(std::polar(r, 2.0 * std::numbers::pi * (static_cast<double>(b) + 0.5) / static_cast<double>(n_angles)));
    }
    return out;
}

RoyalContainment royal_containment(const PencilVariety& v, Complex beta, const Tolerances& tol) {
    const auto& f = v.matrix();
    const auto n = f.rows();
    const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
    const double scale = scale_of(f);
    RoyalContainment out;

    ComplexMatrix stacked(2 * n, n);
    stacked.topRows(n) = f - std::conj(beta) * eye;
    stacked.bottomRows(n) = f.adjoint() - beta * eye;
    out.joint_kernel = n > 0 && sigma_min(stacked) <= std::max(tol.rank, tol.mod) * 10.0 * scale;

    // det of a polynomial of degree ≤ d in p vanishes identically iff it does at d+1 points.
    const double ref = std::pow(scale + std::abs(beta) + 1.0, static_cast<double>(n));
    for (Eigen::Index k = 0; k <= n; ++k) {
        const Complex p = std::polar(0.5 + 0.1 * static_cast<double>(k), 0.7 * static_cast<double>(k) + 0.3);
        out.max_det = std::max(out.max_det, std::abs(det(f.adjoint() - beta * eye + p * (f - std::conj(beta) * eye))));
    }
    out.det_identically_zero = n > 0 && out.max_det <= 1e-9 * ref;
    out.certified = std::abs(std::abs(beta) - 1.0) <= tol.mod && out.joint_kernel && out.det_identically_zero;
    return out;
}

bool distinguished_property_check(const PencilVariety& v, std::span<const Complex> p_grid, PropertyScope scope,
                                  const Tolerances& tol) {
    ComplexMatrix f = v.matrix();
    if (scope == PropertyScope::GIntersection) f = cnu_decompose(f, tol).cnu_block;
    if (f.rows() == 0) return true;
    const ComplexMatrix fa = f.adjoint();
    for (const Complex& p : p_grid) {
        if (scope == PropertyScope::GIntersection && std::abs(p) > 1.0 + tol.mod) continue;
        for (const Complex& s : spectrum(fa + p * f)) {
            const auto [z1, z2] = fibers({s, p});
            const double band = fiber_band({s, p}, tol.mod);
            const double m1 = std::abs(z1);
            const double m2 = std::abs(z2);
            const double hi = std::max(m1, m2);
            if (std::abs(hi - 1.0) > band) continue;  // not on ∂Γ
            if (std::abs(std::min(m1, m2) - 1.0) > band) return false;
        }
    }
    return true;
}

}  // namespace symdisk
