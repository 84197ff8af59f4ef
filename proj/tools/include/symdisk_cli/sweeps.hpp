#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "symdisk/config.hpp"
#include "symdisk/linalg.hpp"
#include "symdisk/realization.hpp"

namespace symdisk::cli {

using Rng = std::mt19937_64;

ComplexMatrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols);
/// Haar unitary via QR with the diagonal phase fix.
ComplexMatrix random_unitary(Rng& rng, Eigen::Index n);
/// Gaussian matrix rescaled so ν equals `nu`.
ComplexMatrix random_with_radius(Rng& rng, Eigen::Index n, double nu, const Tolerances& tol = {});
/// Random unitary colligation with a random unitary τ.
RealizationModel random_model(Rng& rng, Eigen::Index d, Eigen::Index state, const Tolerances& tol = {});

struct SweepResult {
    std::string name;
    std::size_t instances = 0;
    std::size_t positives = 0;  // c.n.u. instances
    std::size_t disagreements = 0;
    std::size_t r2_hits = 0;
    double worst = 0.0;  // sweep-specific extreme value
    std::vector<std::string> notes;
    bool pass = false;
};

/// c.n.u. verdict vs strict region audit vs distinguished-property check.
SweepResult equivalence_sweep(std::uint64_t seed, std::size_t count, Eigen::Index max_dim, const Tolerances& tol = {});
/// ν(PU + U*P^⊥) ≤ 1 and c.n.u. verdict vs witness search; worst = max ν.
SweepResult pu_sweep(std::uint64_t seed, std::size_t count, Eigen::Index max_dim, const Tolerances& tol = {});
/// Contractivity inside G, inner-defect agreement and boundary unitarity; worst = max defect mismatch.
SweepResult realization_sweep(std::uint64_t seed, std::size_t count, const Tolerances& tol = {});

}  // namespace symdisk::cli
