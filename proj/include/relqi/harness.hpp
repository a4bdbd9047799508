#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "relqi/density.hpp"
#include "relqi/lorentz.hpp"
#include "relqi/partition.hpp"
#include "relqi/state.hpp"

namespace relqi {

/// Default absolute tolerance on linear entropy separating "invariant" from "varies".
inline constexpr double kInvarianceTol = 1e-9;

using Rng = std::mt19937_64;

Eigen::Vector3d random_direction(Rng& rng);

/// Boost along a uniformly random direction with rapidity uniform in
/// [0, max_rapidity], optionally preceded by a Haar-random rotation.
LorentzTransform random_boost(Rng& rng, double max_rapidity, bool with_rotation = true);

/// `n` transforms drawn from a single seeded stream.
std::vector<LorentzTransform> random_boosts(std::uint64_t seed, std::size_t n, double max_rapidity,
                                            bool with_rotation = true);

/// Random on-shell momentum: uniform direction, |p| uniform in [0, max_momentum].
MomentumLabel random_momentum(Rng& rng, double mass, double max_momentum);

/// Pure state with complex Gaussian amplitudes on every configuration over
/// `momenta_per_particle` random labels per particle.
StateVector random_state(Rng& rng, std::size_t particles, std::size_t momenta_per_particle,
                         double mass = 1.0, double max_momentum = 2.0);

enum class Verdict { invariant, varies };

struct ScanReport {
    PartitionSpec partition;
    std::size_t samples = 0;
    double baseline = 0.0;
    double max_deviation = 0.0;
    double tolerance = kInvarianceTol;
    Verdict verdict = Verdict::invariant;
};

struct ScanOptions {
    std::size_t samples = 1000;
    double max_rapidity = 3.0;
    double tolerance = kInvarianceTol;
    std::uint64_t seed = 0;
    bool with_rotation = true;
    unsigned threads = 0;  ///< 0 = hardware concurrency, 1 = serial
};

/// Baseline entropies in the frame of `s`, then the largest |ΔE| over the
/// given transforms for each partition. Samples may run concurrently; the
/// reduction is ordered, so results do not depend on `threads`.
std::vector<ScanReport> invariance_scan(const StateVector& s, std::span<const PartitionSpec> partitions,
                                        std::span<const LorentzTransform> transforms,
                                        double tolerance = kInvarianceTol, unsigned threads = 0);

/// Random-boost scan; throws InvalidArgument if samples == 0 or max_rapidity <= 0.
std::vector<ScanReport> invariance_scan(const StateVector& s, std::span<const PartitionSpec> partitions,
                                        const ScanOptions& options);

ScanReport invariance_scan(const StateVector& s, const PartitionSpec& partition, const ScanOptions& options);

struct SweepRow {
    double rapidity = 0.0;
    std::vector<double> entropies;
    double sum = 0.0;
};

struct SweepTable {
    std::vector<PartitionSpec> partitions;
    std::vector<SweepRow> rows;
};

/// Entropies of `s` boosted along `axis` at each rapidity.
SweepTable entropy_sweep(const StateVector& s, const Eigen::Vector3d& axis, std::span<const double> rapidities,
                         std::span<const PartitionSpec> partitions);

/// True iff multiplying every amplitude by e^{i phase} leaves every partition
/// entropy bit-identical.
bool phase_invariance_check(const StateVector& s, double phase, std::span<const PartitionSpec> partitions);

/// Every proper nonempty subset of the 2n factors.
std::vector<PartitionSpec> all_partitions(std::size_t particle_count);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// The numerical invariant suite run by `relqi verify`: metric preservation,
/// little-group and composition laws, SU(2) adjoint action, boost unitarity,
/// trace equivalence against a direct double loop, particle-partition
/// invariance and boost round trips.
std::vector<CheckResult> run_self_checks(std::uint64_t seed);

}  // namespace relqi
