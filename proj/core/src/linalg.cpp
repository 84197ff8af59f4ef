#include "symdisk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "symdisk/errors.hpp"

namespace symdisk {

namespace {

bool less_re_im(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

struct ToleranceEntry {
    std::string_view key;
    double Tolerances::*field;
};

constexpr ToleranceEntry kToleranceTable[] = {
    {"eig", &Tolerances::eig},       {"herm", &Tolerances::herm},
    {"psd", &Tolerances::psd},       {"recon", &Tolerances::recon},
    {"proj", &Tolerances::proj},     {"gram", &Tolerances::gram},
    {"rank", &Tolerances::rank},     {"cluster", &Tolerances::cluster},
    {"mod", &Tolerances::mod},       {"op", &Tolerances::op},
    {"nu", &Tolerances::nu},         {"nu-search", &Tolerances::nu_search},
    {"memb", &Tolerances::memb},     {"node", &Tolerances::node},
    {"active", &Tolerances::active}, {"fund", &Tolerances::fund},
    {"dil", &Tolerances::dil},       {"ext", &Tolerances::ext},
    {"den", &Tolerances::den},       {"id", &Tolerances::id},
    {"inner", &Tolerances::inner},   {"interp", &Tolerances::interp},
    {"dist-guard", &Tolerances::dist_guard},
};

struct CountEntry {
    std::string_view key;
    std::size_t Tolerances::*field;
};

constexpr CountEntry kCountTable[] = {
    {"n-quad", &Tolerances::n_quad},
    {"n-theta", &Tolerances::n_theta},
    {"trunc", &Tolerances::trunc},
};

}  // namespace

bool Tolerances::set(std::string_view name, double value) {
    if (!std::isfinite(value)) return false;
    for (const auto& e : kToleranceTable) {
        if (e.key == name) {
            if (value < 0.0) return false;
            this->*(e.field) = value;
            return true;
        }
    }
    for (const auto& e : kCountTable) {
        if (e.key == name) {
            if (value < 1.0) return false;
            this->*(e.field) = static_cast<std::size_t>(value);
            return true;
        }
    }
    return false;
}

std::optional<double> Tolerances::get(std::string_view name) const {
    for (const auto& e : kToleranceTable)
        if (e.key == name) return this->*(e.field);
    for (const auto& e : kCountTable)
        if (e.key == name) return static_cast<double>(this->*(e.field));
    return std::nullopt;
}

double op_norm(const ComplexMatrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    return svd.singularValues()(0);
}

double scale_of(const ComplexMatrix& a) { return std::max(1.0, op_norm(a)); }

bool is_square(const ComplexMatrix& a) { return a.rows() == a.cols(); }

bool is_hermitian(const ComplexMatrix& a, double tol) {
    if (!is_square(a)) return false;
    return (a - a.adjoint()).norm() <= tol * scale_of(a);
}

bool is_unitary(const ComplexMatrix& a, double tol) {
    if (!is_square(a)) return false;
    const auto n = a.rows();
    return (a.adjoint() * a - ComplexMatrix::Identity(n, n)).norm() <= tol * std::max<double>(1.0, n);
}

Spectrum spectrum(const ComplexMatrix& a) {
    if (!is_square(a)) throw InputError("spectrum: matrix is not square");
    if (a.rows() == 0) return {};
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw NumericalError("spectrum: QR iteration did not converge");
    Spectrum out(solver.eigenvalues().data(), solver.eigenvalues().data() + a.rows());
    std::sort(out.begin(), out.end(), less_re_im);
    return out;
}

double spectral_radius(const ComplexMatrix& a) {
    double r = 0.0;
    for (const auto& z : spectrum(a)) r = std::max(r, std::abs(z));
    return r;
}

std::vector<EigenCluster> cluster_eigenvalues(const Spectrum& values, double tol) {
    const std::size_t n = values.size();
    std::vector<std::size_t> label(n);
    for (std::size_t i = 0; i < n; ++i) label[i] = i;
    // Union-find over pairs closer than tol.
    auto find = [&](std::size_t i) {
        while (label[i] != i) i = label[i] = label[label[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(values[i] - values[j]) <= tol) label[find(i)] = find(j);

    std::vector<EigenCluster> out;
    std::vector<std::size_t> root_of_cluster;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        auto it = std::find(root_of_cluster.begin(), root_of_cluster.end(), r);
        if (it == root_of_cluster.end()) {
            root_of_cluster.push_back(r);
            out.push_back({values[i], 1});
        } else {
            auto& c = out[static_cast<std::size_t>(it - root_of_cluster.begin())];
            c.value = (c.value * static_cast<double>(c.multiplicity) + values[i]) /
                      static_cast<double>(c.multiplicity + 1);
            ++c.multiplicity;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const EigenCluster& a, const EigenCluster& b) { return less_re_im(a.value, b.value); });
    return out;
}

HermitianEig hermitian_eig(const ComplexMatrix& h, const Tolerances& tol) {
    if (!is_hermitian(h, tol.herm)) throw InputError("hermitian_eig: matrix is not Hermitian");
    if (h.rows() == 0) return {};
    const ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) throw NumericalError("hermitian_eig: did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix null_space_matrix(const ComplexMatrix& a, double rank_tol) {
    const auto n = a.cols();
    if (n == 0) return ComplexMatrix(0, 0);
    if (a.rows() == 0) return ComplexMatrix::Identity(n, n);
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    if (smax == 0.0) return ComplexMatrix::Identity(n, n);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rank_tol * smax) ++rank;
    return svd.matrixV().rightCols(n - rank);
}

std::vector<ComplexVector> null_space(const ComplexMatrix& a, double rank_tol) {
    const ComplexMatrix basis = null_space_matrix(a, rank_tol);
    std::vector<ComplexVector> out;
    out.reserve(static_cast<std::size_t>(basis.cols()));
    for (Eigen::Index j = 0; j < basis.cols(); ++j) out.emplace_back(basis.col(j));
    if (out.size() == 1) out[0] = normalize_phase(out[0]);
    return out;
}

ComplexMatrix range_basis(const ComplexMatrix& a, double rank_tol) {
    if (a.size() == 0) return ComplexMatrix(a.rows(), 0);
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    Eigen::Index rank = 0;
    if (smax > 0.0)
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > rank_tol * smax) ++rank;
    return svd.matrixU().leftCols(rank);
}

ComplexMatrix orthogonal_complement(const ComplexMatrix& q) {
    const auto n = q.rows();
    const auto k = q.cols();
    if (k == 0) return ComplexMatrix::Identity(n, n);
    if (k >= n) return ComplexMatrix(n, 0);
    Eigen::HouseholderQR<ComplexMatrix> qr(q);
    const ComplexMatrix full = qr.householderQ() * ComplexMatrix::Identity(n, n);
    return full.rightCols(n - k);
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& a, double rank_tol) {
    if (a.size() == 0) return ComplexMatrix::Zero(a.cols(), a.rows());
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (smax > 0.0 && sv(i) > rank_tol * smax) inv(i) = 1.0 / sv(i);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

double sigma_min(const ComplexMatrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    const auto& sv = svd.singularValues();
    // Rectangular wide matrices always have a non-trivial null space.
    if (a.cols() > a.rows()) return 0.0;
    return sv(sv.size() - 1);
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, const Tolerances& tol) {
    if (m.rows() == 0) return m;
    const HermitianEig eig = hermitian_eig(m, Tolerances{tol.eig, std::max(tol.herm, tol.psd)});
    const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
    if (eig.values(0) < -tol.psd * scale)
        throw InputError("psd_sqrt: matrix is indefinite (min eigenvalue " + std::to_string(eig.values(0)) + ")");
    const Eigen::VectorXd root = eig.values.cwiseMax(0.0).cwiseSqrt();
    ComplexMatrix out = eig.vectors * root.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    return 0.5 * (out + out.adjoint());
}

SpectralProjection spectral_projection(const ComplexMatrix& a, Complex center, double radius,
                                       std::size_t n_quad, const Tolerances& tol) {
    if (!is_square(a)) throw InputError("spectral_projection: matrix is not square");
    if (!(radius > 0.0)) throw InputError("spectral_projection: radius must be positive");
    const auto n = a.rows();
    SpectralProjection out;
    out.center = center;
    out.radius = radius;

    // Worst contraction factor of the trapezoid error over the eigenvalues:
    // inside eigenvalues at ratio a < 1 contribute ~a^N, outside ones ~(1/b)^N.
    double worst_ratio = 0.0;
    for (const auto& lambda : spectrum(a)) {
        const double dist = std::abs(lambda - center);
        if (std::abs(dist - radius) < tol.dist_guard * radius)
            throw NumericalError("spectral_projection: ill-placed contour (eigenvalue within guard band)");
        if (dist < radius) {
            ++out.enclosed_count;
            worst_ratio = std::max(worst_ratio, dist / radius);
        } else {
            worst_ratio = std::max(worst_ratio, radius / dist);
        }
    }
    std::size_t nodes = std::max<std::size_t>(n_quad, 8);
    if (worst_ratio > 0.0) {
        const double needed = std::ceil(std::log(1e-16) / std::log(worst_ratio));
        if (needed > static_cast<double>(nodes)) nodes = static_cast<std::size_t>(std::min(needed, 16384.0));
    }
    out.nodes_used = nodes;

    const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
    ComplexMatrix acc = ComplexMatrix::Zero(n, n);
    for (std::size_t k = 0; k < nodes; ++k) {
        const double theta = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(nodes);
        const Complex e = std::polar(1.0, theta);
        const Complex zeta = center + radius * e;
        // dζ/(2πi) = r e^{iθ} dθ / 2π
        acc += (radius * e) * (zeta * eye - a).partialPivLu().inverse();
    }
    out.matrix = acc / static_cast<double>(nodes);

    const double pn = op_norm(out.matrix);
    const double idem = (out.matrix * out.matrix - out.matrix).norm();
    if (idem > tol.proj * std::max(1.0, pn * pn))
        throw NumericalError("spectral_projection: quadrature result is not idempotent");
    return out;
}

ComplexMatrix complete_to_unitary(std::span<const ComplexVector> dom, std::span<const ComplexVector> ran,
                                  std::size_t n, const Tolerances& tol) {
    if (dom.size() != ran.size()) throw InputError("complete_to_unitary: families differ in length");
    const auto dim = static_cast<Eigen::Index>(n);
    const auto k = static_cast<Eigen::Index>(dom.size());
    if (k == 0) return ComplexMatrix::Identity(dim, dim);

    ComplexMatrix x(dim, k), y(dim, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        const auto& d = dom[static_cast<std::size_t>(j)];
        const auto& r = ran[static_cast<std::size_t>(j)];
        if (d.size() != dim || r.size() != dim) throw InputError("complete_to_unitary: vector dimension mismatch");
        x.col(j) = d;
        y.col(j) = r;
    }
    const ComplexMatrix gx = x.adjoint() * x;
    const ComplexMatrix gy = y.adjoint() * y;
    const double gscale = std::max({1.0, gx.cwiseAbs().maxCoeff(), gy.cwiseAbs().maxCoeff()});
    if ((gx - gy).cwiseAbs().maxCoeff() > tol.gram * gscale)
        throw InputError("complete_to_unitary: Gram matrices differ, the map is not isometric");

    const ComplexMatrix g = 0.5 * (gx + gy);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (g + g.adjoint()));
    const auto& lam = eig.eigenvalues();
    const double lmax = lam(lam.size() - 1);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < lam.size(); ++i)
        if (lmax > 0.0 && lam(i) > tol.rank * lmax) keep.push_back(i);
    const auto r = static_cast<Eigen::Index>(keep.size());
    if (r > dim) throw NumericalError("complete_to_unitary: rank exceeds ambient dimension");

    ComplexMatrix wr(k, r);
    Eigen::VectorXd inv_sqrt(r);
    for (Eigen::Index c = 0; c < r; ++c) {
        wr.col(c) = eig.eigenvectors().col(keep[static_cast<std::size_t>(c)]);
        inv_sqrt(c) = 1.0 / std::sqrt(lam(keep[static_cast<std::size_t>(c)]));
    }
    ComplexMatrix e = x * wr * inv_sqrt.cast<Complex>().asDiagonal();
    ComplexMatrix f = y * wr * inv_sqrt.cast<Complex>().asDiagonal();
    // Re-orthonormalize against rounding.
    {
        Eigen::JacobiSVD<ComplexMatrix> se(e, Eigen::ComputeThinU | Eigen::ComputeThinV);
        Eigen::JacobiSVD<ComplexMatrix> sf(f, Eigen::ComputeThinU | Eigen::ComputeThinV);
        e = se.matrixU() * se.matrixV().adjoint();
        f = sf.matrixU() * sf.matrixV().adjoint();
    }
    const ComplexMatrix ec = orthogonal_complement(e);
    const ComplexMatrix fc = orthogonal_complement(f);
    ComplexMatrix u = f * e.adjoint() + fc * ec.adjoint();

    const double map_res = (u * x - y).norm();
    if (map_res > std::sqrt(tol.gram) * std::max(1.0, x.norm()))
        throw NumericalError("complete_to_unitary: mapping residual too large");
    return u;
}

ComplexVector normalize_phase(const ComplexVector& v) {
    const double nrm = v.norm();
    if (nrm == 0.0) return v;
    ComplexVector out = v / nrm;
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        const double m = std::abs(out(i));
        if (m > best_abs * (1.0 + 1e-12) + 1e-15) {
            best_abs = m;
            best = i;
        }
    }
    const Complex ph = out(best) / std::abs(out(best));
    return out / ph;
}

}  // namespace symdisk
