#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "relqi/partition.hpp"
#include "relqi/state.hpp"

namespace relqi {

/// A tensor factor together with its label set. Spin factors have dimension 2
/// (up, down); momentum factors enumerate the particle's momentum alphabet.
struct FactorSpace {
    Factor factor;
    std::vector<MomentumLabel> momenta;  ///< empty for spin factors

    std::size_t dimension() const { return factor.dof == Dof::spin ? 2 : momenta.size(); }
};

/**
 * Density matrix over the tensor product of its factors, in factor order
 * (the first factor is the most significant digit of a basis index).
 * Construction checks Hermiticity and unit trace; positivity is only checked
 * on request through `min_eigenvalue`.
 */
class DensityMatrix {
  public:
    static DensityMatrix from_matrix(std::vector<FactorSpace> factors, Eigen::MatrixXcd matrix,
                                     double tol = 1e-10);

    const std::vector<FactorSpace>& factors() const { return factors_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
    PartitionSpec partition() const;

    /// Per-factor label indices of basis element `index`.
    std::vector<std::size_t> basis_digits(std::size_t index) const;

    double min_eigenvalue() const;
    double hermiticity_residual() const;

  private:
    DensityMatrix(std::vector<FactorSpace> factors, Eigen::MatrixXcd matrix)
        : factors_(std::move(factors)), matrix_(std::move(matrix)) {}

    std::vector<FactorSpace> factors_;
    Eigen::MatrixXcd matrix_;
};

/// |ψ⟩⟨ψ| over every factor of the state. The global phase cancels and is not
/// read.
DensityMatrix from_state(const StateVector& s);

/// Traces out every factor not in `keep`. Throws InvalidArgument if `keep`
/// is empty or names a factor the matrix does not have.
DensityMatrix partial_trace(const DensityMatrix& rho, const PartitionSpec& keep);

double purity(const DensityMatrix& rho);
double linear_entropy(const DensityMatrix& rho);

struct PartitionEntropy {
    PartitionSpec partition;
    double entropy = 0.0;
};

struct EntropyReport {
    std::vector<PartitionEntropy> entries;
    double sum = 0.0;
};

EntropyReport partition_entropy_sum(const DensityMatrix& rho, std::span<const PartitionSpec> partitions);

/// Linear entropy of the reduction of |s⟩⟨s| onto `keep`.
double state_entropy(const StateVector& s, const PartitionSpec& keep);

/// ⟨r|ρ|r⟩ for one label r of a particle's momentum factor, without summing
/// spin: the frame-dependent single-momentum reduction.
struct MomentumBlock {
    double probability = 0.0;
    DensityMatrix conditional;  ///< the block divided by its trace
};

MomentumBlock momentum_block(const DensityMatrix& rho, std::size_t particle, std::size_t label_index);

}  // namespace relqi
