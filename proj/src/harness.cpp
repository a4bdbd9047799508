#include "relqi/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>

#include "relqi/errors.hpp"

namespace relqi {

namespace {

Eigen::Matrix3d quaternion_matrix(const Eigen::Vector4d& q) {
    const double w = q(0), x = q(1), y = q(2), z = q(3);
    Eigen::Matrix3d r;
    r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
         2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
         2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
    return r;
}

LorentzTransform random_rotation(Rng& rng) {
    std::normal_distribution<double> gauss;
    Eigen::Vector4d q;
    do {
        for (int i = 0; i < 4; ++i) q(i) = gauss(rng);
    } while (q.norm() < 1e-12);
    q.normalize();
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m.block<3, 3>(1, 1) = quaternion_matrix(q);
    return LorentzTransform::from_matrix(m);
}

unsigned resolve_threads(unsigned requested, std::size_t work) {
    unsigned t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(work, 1)));
}

// Runs body(i) for i in [0, n) over `threads` workers; rethrows the
// lowest-index failure.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < threads; ++w) {
            workers.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < n; i += threads) body(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

// Direct double loop over all basis pairs, kept independent of partial_trace.
Eigen::MatrixXcd brute_force_trace(const DensityMatrix& rho, const PartitionSpec& keep) {
    const auto& factors = rho.factors();
    std::vector<std::size_t> kept_pos;
    for (std::size_t f = 0; f < factors.size(); ++f) {
        if (keep.contains(factors[f].factor)) kept_pos.push_back(f);
    }
    std::size_t kd = 1;
    for (auto f : kept_pos) kd *= factors[f].dimension();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
    const std::size_t dim = rho.dimension();
    for (std::size_t i = 0; i < dim; ++i) {
        const auto di = rho.basis_digits(i);
        for (std::size_t j = 0; j < dim; ++j) {
            const auto dj = rho.basis_digits(j);
            bool same_env = true;
            for (std::size_t f = 0; f < factors.size(); ++f) {
                if (!keep.contains(factors[f].factor) && di[f] != dj[f]) same_env = false;
            }
            if (!same_env) continue;
            std::size_t ri = 0, rj = 0;
            for (auto f : kept_pos) {
                ri = ri * factors[f].dimension() + di[f];
                rj = rj * factors[f].dimension() + dj[f];
            }
            out(static_cast<Eigen::Index>(ri), static_cast<Eigen::Index>(rj)) +=
                rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << v;
    return s.str();
}

}  // namespace

Eigen::Vector3d random_direction(Rng& rng) {
    std::normal_distribution<double> gauss;
    Eigen::Vector3d v;
    do {
        v = {gauss(rng), gauss(rng), gauss(rng)};
    } while (v.norm() < 1e-12);
    return v.normalized();
}

LorentzTransform random_boost(Rng& rng, double max_rapidity, bool with_rotation) {
    if (!(max_rapidity > 0.0)) throw InvalidArgument("random_boost: max_rapidity must be positive");
    const Eigen::Vector3d axis = random_direction(rng);
    const double rapidity = std::uniform_real_distribution<double>(0.0, max_rapidity)(rng);
    const LorentzTransform boost = boost_along_axis(axis, rapidity);
    if (!with_rotation) return boost;
    return compose(boost, random_rotation(rng));
}

std::vector<LorentzTransform> random_boosts(std::uint64_t seed, std::size_t n, double max_rapidity,
                                            bool with_rotation) {
    Rng rng(seed);
    std::vector<LorentzTransform> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(random_boost(rng, max_rapidity, with_rotation));
    return out;
}

MomentumLabel random_momentum(Rng& rng, double mass, double max_momentum) {
    const Eigen::Vector3d dir = random_direction(rng);
    const double size = std::uniform_real_distribution<double>(0.0, max_momentum)(rng);
    return {mass, size * dir};
}

StateVector random_state(Rng& rng, std::size_t particles, std::size_t momenta_per_particle, double mass,
                         double max_momentum) {
    if (particles == 0 || momenta_per_particle == 0) {
        throw InvalidArgument("random_state: need at least one particle and one momentum");
    }
    StateBuilder builder(particles);
    std::vector<std::vector<std::uint32_t>> labels(particles);
    for (std::size_t j = 0; j < particles; ++j) {
        while (labels[j].size() < momenta_per_particle) {
            const auto before = labels[j].size();
            const auto idx = builder.add_momentum(j, random_momentum(rng, mass, max_momentum));
            if (idx == before) labels[j].push_back(idx);
        }
    }
    std::normal_distribution<double> gauss;
    std::size_t total = 1;
    for (std::size_t j = 0; j < particles; ++j) total *= 2 * momenta_per_particle;
    BasisKey key(particles);
    for (std::size_t c = 0; c < total; ++c) {
        std::size_t rest = c;
        for (std::size_t j = particles; j-- > 0;) {
            const auto spin = static_cast<Spin>(rest % 2);
            rest /= 2;
            key[j] = {labels[j][rest % momenta_per_particle], spin};
            rest /= momenta_per_particle;
        }
        const double re = gauss(rng);
        const double im = gauss(rng);
        builder.add({re, im}, key);
    }
    return builder.build(true);
}

std::vector<ScanReport> invariance_scan(const StateVector& s, std::span<const PartitionSpec> partitions,
                                        std::span<const LorentzTransform> transforms, double tolerance,
                                        unsigned threads) {
    if (transforms.empty()) throw InvalidArgument("invariance_scan: need at least one sample");
    if (!(tolerance >= 0.0)) throw InvalidArgument("invariance_scan: tolerance must be non-negative");

    const DensityMatrix rho = from_state(s);
    std::vector<double> baseline;
    for (const auto& p : partitions) baseline.push_back(linear_entropy(partial_trace(rho, p)));

    const std::size_t np = partitions.size();
    std::vector<double> deviation(transforms.size() * np, 0.0);
    parallel_for(transforms.size(), resolve_threads(threads, transforms.size()), [&](std::size_t i) {
        const DensityMatrix moved = from_state(boost_state(s, transforms[i]));
        for (std::size_t k = 0; k < np; ++k) {
            deviation[i * np + k] = std::abs(linear_entropy(partial_trace(moved, partitions[k])) - baseline[k]);
        }
    });

    std::vector<ScanReport> out;
    for (std::size_t k = 0; k < np; ++k) {
        ScanReport r;
        r.partition = partitions[k];
        r.samples = transforms.size();
        r.baseline = baseline[k];
        r.tolerance = tolerance;
        for (std::size_t i = 0; i < transforms.size(); ++i) {
            r.max_deviation = std::max(r.max_deviation, deviation[i * np + k]);
        }
        r.verdict = r.max_deviation <= tolerance ? Verdict::invariant : Verdict::varies;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<ScanReport> invariance_scan(const StateVector& s, std::span<const PartitionSpec> partitions,
                                        const ScanOptions& options) {
    if (options.samples == 0) throw InvalidArgument("invariance_scan: samples must be at least 1");
    const auto transforms =
        random_boosts(options.seed, options.samples, options.max_rapidity, options.with_rotation);
    return invariance_scan(s, partitions, transforms, options.tolerance, options.threads);
}

ScanReport invariance_scan(const StateVector& s, const PartitionSpec& partition, const ScanOptions& options) {
    return invariance_scan(s, std::span<const PartitionSpec>(&partition, 1), options).front();
}

SweepTable entropy_sweep(const StateVector& s, const Eigen::Vector3d& axis, std::span<const double> rapidities,
                         std::span<const PartitionSpec> partitions) {
    if (rapidities.empty()) throw InvalidArgument("entropy_sweep: empty rapidity grid");
    SweepTable table;
    table.partitions.assign(partitions.begin(), partitions.end());
    for (double r : rapidities) {
        const DensityMatrix rho = from_state(boost_state(s, boost_along_axis(axis, r)));
        const EntropyReport report = partition_entropy_sum(rho, partitions);
        SweepRow row;
        row.rapidity = r;
        for (const auto& e : report.entries) row.entropies.push_back(e.entropy);
        row.sum = report.sum;
        table.rows.push_back(std::move(row));
    }
    return table;
}

bool phase_invariance_check(const StateVector& s, double phase, std::span<const PartitionSpec> partitions) {
    const DensityMatrix rho = from_state(s);
    const DensityMatrix shifted = from_state(s.with_global_phase(phase));
    for (const auto& p : partitions) {
        if (linear_entropy(partial_trace(rho, p)) != linear_entropy(partial_trace(shifted, p))) return false;
    }
    return true;
}

std::vector<PartitionSpec> all_partitions(std::size_t particle_count) {
    const std::size_t nf = 2 * particle_count;
    if (nf >= 20) throw InvalidArgument("all_partitions: too many factors to enumerate");
    std::vector<PartitionSpec> out;
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << nf); ++mask) {
        std::vector<Factor> fs;
        for (std::size_t f = 0; f < nf; ++f) {
            if (mask & (std::size_t{1} << f)) fs.push_back({f / 2, f % 2 == 0 ? Dof::momentum : Dof::spin});
        }
        out.emplace_back(std::move(fs));
    }
    return out;
}

std::vector<CheckResult> run_self_checks(std::uint64_t seed) {
    std::vector<CheckResult> results;
    Rng rng(seed);
    const Eigen::Matrix4d& eta = minkowski_metric();

    {
        double worst = 0.0;
        for (int i = 0; i < 2000; ++i) worst = std::max(worst, random_boost(rng, 3.0).metric_residual());
        results.push_back({"metric preservation", worst <= 1e-12, "max |LtL - eta| = " + fmt(worst)});
    }
    {
        double worst_fix = 0.0, worst_comp = 0.0;
        for (int i = 0; i < 500; ++i) {
            const auto l1 = random_boost(rng, 3.0);
            const auto l2 = random_boost(rng, 3.0);
            const auto p = random_momentum(rng, 1.0, 3.0);
            const Eigen::Matrix4d w4 = eta * standard_boost(apply(l1, p)).matrix() * eta * l1.matrix() *
                                       standard_boost(p).matrix();
            worst_fix = std::max(worst_fix, (w4.col(0) - Eigen::Vector4d::UnitX()).cwiseAbs().maxCoeff());
            const Eigen::Matrix3d lhs = wigner_rotation(compose(l2, l1), p).matrix();
            const Eigen::Matrix3d rhs =
                wigner_rotation(l2, apply(l1, p)).matrix() * wigner_rotation(l1, p).matrix();
            worst_comp = std::max(worst_comp, (lhs - rhs).cwiseAbs().maxCoeff());
        }
        results.push_back({"little group fixes rest momentum", worst_fix <= 1e-10, "max residual " + fmt(worst_fix)});
        results.push_back({"Wigner composition law", worst_comp <= 1e-9, "max residual " + fmt(worst_comp)});
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 500; ++i) {
            const WignerRotation r = wigner_rotation(random_boost(rng, 3.0), random_momentum(rng, 1.0, 3.0));
            const Eigen::Matrix2cd u = su2_lift(r).matrix();
            for (int k = 0; k < 3; ++k) {
                Eigen::Matrix2cd expect = Eigen::Matrix2cd::Zero();
                for (int j = 0; j < 3; ++j) expect += r.matrix()(j, k) * pauli(j);
                worst = std::max(worst, (u * pauli(k) * u.adjoint() - expect).cwiseAbs().maxCoeff());
            }
        }
        results.push_back({"SU(2) adjoint action", worst <= 1e-10, "max residual " + fmt(worst)});
    }
    {
        double worst_inner = 0.0, worst_trip = 0.0;
        for (int i = 0; i < 100; ++i) {
            // b shares a's momenta: re-draw amplitudes only.
            const StateVector a = random_state(rng, 2, 2);
            std::vector<Term> terms = a.terms();
            std::normal_distribution<double> gauss;
            for (auto& t : terms) t.amplitude = {gauss(rng), gauss(rng)};
            const StateVector b = make_state(terms);
            const auto lambda = random_boost(rng, 3.0);
            const StateVector ba = boost_state(a, lambda);
            worst_inner = std::max(worst_inner,
                                   std::abs(inner_product(ba, boost_state(b, lambda)) - inner_product(a, b)));
            worst_trip = std::max(worst_trip, amplitude_distance(boost_state(ba, inverse(lambda)), a));
        }
        results.push_back({"boost unitarity", worst_inner <= 1e-9, "max |d<a|b>| = " + fmt(worst_inner)});
        results.push_back({"boost round trip", worst_trip <= 1e-9, "max amplitude error " + fmt(worst_trip)});
    }
    {
        double worst_trace = 0.0, worst_props = 0.0;
        const auto partitions = all_partitions(2);
        for (int i = 0; i < 40; ++i) {
            const DensityMatrix rho = from_state(random_state(rng, 2, 1 + static_cast<std::size_t>(i % 2)));
            for (const auto& p : partitions) {
                const DensityMatrix reduced = partial_trace(rho, p);
                worst_trace = std::max(worst_trace,
                                       (reduced.matrix() - brute_force_trace(rho, p)).cwiseAbs().maxCoeff());
                worst_props = std::max({worst_props, reduced.hermiticity_residual(),
                                        std::abs(reduced.matrix().trace() - 1.0), -reduced.min_eigenvalue()});
            }
        }
        results.push_back({"partial trace matches double loop", worst_trace <= 1e-12,
                           "max elementwise error " + fmt(worst_trace)});
        results.push_back({"reduced states are valid", worst_props <= 1e-9, "max violation " + fmt(worst_props)});
    }
    {
        double worst = 0.0;
        const PartitionSpec particle = PartitionSpec::particle(0);
        for (int i = 0; i < 10; ++i) {
            const StateVector s = random_state(rng, 2, 2);
            const auto transforms = random_boosts(rng(), 50, 3.0);
            worst = std::max(worst, invariance_scan(s, std::span(&particle, 1), transforms).front().max_deviation);
        }
        results.push_back({"particle partition invariance", worst <= kInvarianceTol, "max |dE| = " + fmt(worst)});
    }
    return results;
}

}  // namespace relqi
