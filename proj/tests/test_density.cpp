#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "relqi/density.hpp"
#include "relqi/errors.hpp"
#include "relqi/harness.hpp"
#include "relqi/state.hpp"

namespace relqi {
namespace {

using cd = std::complex<double>;
using std::numbers::pi;

const MomentumLabel kPlus(1.0, 0.0, 0.0, 1.0);
const MomentumLabel kMinus(1.0, 0.0, 0.0, -1.0);

std::vector<bool> keep_mask(const PartitionSpec& p, std::size_t particles) {
    std::vector<bool> mask;
    for (std::size_t j = 0; j < particles; ++j) {
        mask.push_back(p.contains({j, Dof::momentum}));
        mask.push_back(p.contains({j, Dof::spin}));
    }
    return mask;
}

TEST(FromState, PureStateProperties) {
    Rng rng(1);
    const StateVector s = random_state(rng, 2, 2);
    const DensityMatrix rho = from_state(s);
    EXPECT_EQ(rho.dimension(), 16u);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_LE(rho.hermiticity_residual(), 1e-15);
    EXPECT_NEAR(purity(rho), 1.0, 1e-12);
    EXPECT_GE(rho.min_eigenvalue(), -1e-12);
}

TEST(FromState, IgnoresGlobalPhaseExactly) {
    const StateVector s = friis_state(0.3, 0.9, kPlus, kMinus);
    const DensityMatrix a = from_state(s);
    const DensityMatrix b = from_state(s.with_global_phase(2.1));
    EXPECT_TRUE(a.matrix() == b.matrix());
}

TEST(FromMatrix, Validation) {
    const std::vector<FactorSpace> spin{{{0, Dof::spin}, {}}};
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2) * 0.5;
    EXPECT_NO_THROW(DensityMatrix::from_matrix(spin, m));
    Eigen::MatrixXcd bad_trace = Eigen::MatrixXcd::Identity(2, 2);
    EXPECT_THROW(DensityMatrix::from_matrix(spin, bad_trace), NumericalDegradation);
    Eigen::MatrixXcd non_herm = m;
    non_herm(0, 1) = cd(0.0, 0.3);
    EXPECT_THROW(DensityMatrix::from_matrix(spin, non_herm), NumericalDegradation);
    EXPECT_THROW(DensityMatrix::from_matrix(spin, Eigen::MatrixXcd::Identity(3, 3) / 3.0), InvalidArgument);
}

TEST(BasisDigits, FirstFactorMostSignificant) {
    const StateVector s = friis_state(pi / 4, pi / 4, kPlus, kMinus);
    const DensityMatrix rho = from_state(s);
    const auto d = rho.basis_digits(11);  // 1011 in factors (m1, s1, m2, s2)
    ASSERT_EQ(d.size(), 4u);
    EXPECT_EQ(d[0], 1u);
    EXPECT_EQ(d[1], 0u);
    EXPECT_EQ(d[2], 1u);
    EXPECT_EQ(d[3], 1u);
}

TEST(PartialTrace, MatchesBruteForceOnRandomStates) {
    Rng rng(2);
    for (int n = 0; n < 60; ++n) {
        const std::size_t particles = 1 + static_cast<std::size_t>(n % 2);
        const StateVector s = random_state(rng, particles, 1 + static_cast<std::size_t>(n % 3 == 0 ? 1 : 2));
        std::vector<std::size_t> dims;
        const Eigen::VectorXcd psi = oracle::dense_amplitudes(s, dims);
        const Eigen::MatrixXcd rho_dense = psi * psi.adjoint();
        const DensityMatrix rho = from_state(s);
        ASSERT_LE((rho.matrix() - rho_dense).cwiseAbs().maxCoeff(), 1e-14);
        for (const auto& p : all_partitions(particles)) {
            const Eigen::MatrixXcd expect = oracle::brute_force_trace(rho_dense, dims, keep_mask(p, particles));
            const DensityMatrix got = partial_trace(rho, p);
            ASSERT_EQ(got.matrix().rows(), expect.rows()) << p.to_string();
            EXPECT_LE((got.matrix() - expect).cwiseAbs().maxCoeff(), 1e-12) << p.to_string();
            EXPECT_NEAR(linear_entropy(got), oracle::linear_entropy(expect), 1e-12) << p.to_string();
        }
    }
}

TEST(PartialTrace, OrderIndependent) {
    Rng rng(4);
    const StateVector s = random_state(rng, 2, 2);
    const DensityMatrix rho = from_state(s);
    const PartitionSpec direct = PartitionSpec::parse("p1.spin");
    // Trace p2 first, then p1.mom; or p1.mom first, then p2.
    const DensityMatrix a = partial_trace(partial_trace(rho, PartitionSpec::particle(0)), direct);
    const DensityMatrix b = partial_trace(partial_trace(rho, PartitionSpec::parse("p1.spin,p2.mom,p2.spin")), direct);
    const DensityMatrix c = partial_trace(rho, direct);
    EXPECT_LE((a.matrix() - c.matrix()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE((b.matrix() - c.matrix()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(PartialTrace, Errors) {
    const DensityMatrix rho = from_state(friis_state(0.1, 0.2, kPlus, kMinus));
    EXPECT_THROW(partial_trace(rho, PartitionSpec()), InvalidArgument);
    EXPECT_THROW(partial_trace(rho, PartitionSpec::spin(2)), InvalidArgument);
    const DensityMatrix one = partial_trace(rho, PartitionSpec::spin(0));
    EXPECT_THROW(partial_trace(one, PartitionSpec::momentum(0)), InvalidArgument);
}

TEST(PartialTrace, KeepAllIsIdentity) {
    const DensityMatrix rho = from_state(friis_state(0.4, 1.2, kPlus, kMinus));
    const DensityMatrix same = partial_trace(rho, PartitionSpec::particle(0).united(PartitionSpec::particle(1)));
    EXPECT_TRUE(same.matrix() == rho.matrix());
}

TEST(Entropy, ProductAndMaximallyMixed) {
    const std::vector<FactorSpace> spin{{{0, Dof::spin}, {}}};
    EXPECT_NEAR(linear_entropy(DensityMatrix::from_matrix(spin, Eigen::MatrixXcd::Identity(2, 2) * 0.5)), 0.5,
                1e-15);
    Eigen::MatrixXcd pure = Eigen::MatrixXcd::Zero(2, 2);
    pure(0, 0) = 1.0;
    EXPECT_EQ(linear_entropy(DensityMatrix::from_matrix(spin, pure)), 0.0);
}

TEST(Entropy, BoundsOverRandomStates) {
    Rng rng(6);
    for (int n = 0; n < 100; ++n) {
        const StateVector s = random_state(rng, 2, 2);
        const DensityMatrix rho = from_state(s);
        for (const auto& p : all_partitions(2)) {
            const DensityMatrix r = partial_trace(rho, p);
            const double e = linear_entropy(r);
            EXPECT_GE(e, -1e-12);
            EXPECT_LE(e, 1.0 - 1.0 / static_cast<double>(r.dimension()) + 1e-12);
            EXPECT_GE(r.min_eigenvalue(), -1e-10);
        }
    }
}

TEST(Entropy, ComplementaryPartitionsAgree) {
    Rng rng(8);
    for (int n = 0; n < 100; ++n) {
        const std::size_t particles = 1 + static_cast<std::size_t>(n % 3);
        const StateVector s = random_state(rng, particles, 2);
        const DensityMatrix rho = from_state(s);
        for (const auto& p : all_partitions(particles)) {
            const double a = linear_entropy(partial_trace(rho, p));
            const double b = linear_entropy(partial_trace(rho, p.complement(particles)));
            EXPECT_NEAR(a, b, 1e-12) << p.to_string();
        }
    }
}

TEST(Entropy, ComparisonStateRestFrameValues) {
    const StateVector s = friis_state(pi / 4, pi / 4, kPlus, kMinus);
    for (std::size_t j = 0; j < 2; ++j) {
        EXPECT_NEAR(state_entropy(s, PartitionSpec::spin(j)), 0.5, 1e-12);
        EXPECT_NEAR(state_entropy(s, PartitionSpec::momentum(j)), 0.5, 1e-12);
        EXPECT_NEAR(state_entropy(s, PartitionSpec::particle(j)), 0.75, 1e-12);
    }
    EXPECT_NEAR(state_entropy(s, PartitionSpec::parse("p1.spin,p2.spin")), 0.0, 1e-12);
    EXPECT_NEAR(state_entropy(s, PartitionSpec::parse("p1.mom,p2.spin")), 0.75, 1e-12);
}

TEST(Entropy, SumReport) {
    const StateVector s = friis_state(pi / 4, pi / 4, kPlus, kMinus);
    const std::vector<PartitionSpec> parts{PartitionSpec::spin(0), PartitionSpec::particle(0)};
    const EntropyReport r = partition_entropy_sum(from_state(s), parts);
    ASSERT_EQ(r.entries.size(), 2u);
    EXPECT_EQ(r.entries[0].partition, parts[0]);
    EXPECT_NEAR(r.sum, 1.25, 1e-12);
}

TEST(MomentumBlock, ConditionalSpinOfComparisonState) {
    const StateVector s = friis_state(pi / 4, 0.0, kPlus, kMinus);
    const DensityMatrix rho = partial_trace(from_state(s), PartitionSpec::particle(0));
    // Particle 1 at p+ always has spin up in this state.
    const MomentumBlock b = momentum_block(rho, 0, 0);
    EXPECT_NEAR(b.probability, 0.5, 1e-12);
    EXPECT_NEAR(b.conditional.matrix()(0, 0).real(), 1.0, 1e-12);
    EXPECT_NEAR(linear_entropy(b.conditional), 0.0, 1e-12);
    EXPECT_THROW(momentum_block(rho, 0, 5), InvalidArgument);
    EXPECT_THROW(momentum_block(rho, 1, 0), InvalidArgument);
}

TEST(MomentumBlock, BoostMixesConditionalSpinButKeepsItPure) {
    const StateVector s = friis_state(pi / 4, 0.0, kPlus, kMinus);
    const StateVector t = boost_state(s, boost_along_axis(Eigen::Vector3d::UnitX(), 2.0));
    const DensityMatrix rho = partial_trace(from_state(t), PartitionSpec::particle(0));
    const MomentumBlock b = momentum_block(rho, 0, 0);
    EXPECT_NEAR(b.probability, 0.5, 1e-12);
    EXPECT_LT(std::abs(b.conditional.matrix()(0, 0).real() - 1.0), 0.5);
    EXPECT_GT(std::abs(b.conditional.matrix()(0, 0).real() - 1.0), 1e-3);
    EXPECT_NEAR(linear_entropy(b.conditional), 0.0, 1e-12);
}

}  // namespace
}  // namespace relqi
