#include "relqi/density.hpp"

#include <algorithm>
#include <sstream>

#include "relqi/errors.hpp"

namespace relqi {

namespace {

std::size_t product_dimension(const std::vector<FactorSpace>& factors) {
    std::size_t d = 1;
    for (const auto& f : factors) d *= f.dimension();
    return d;
}

// Splits each basis index of `rho` into (kept index, traced index) given which
// factors are kept.
struct IndexSplit {
    std::vector<std::size_t> kept;
    std::vector<std::size_t> traced;
    std::size_t kept_dim = 1;
    std::size_t traced_dim = 1;
};

IndexSplit split_indices(const std::vector<FactorSpace>& factors, const std::vector<bool>& keep_mask) {
    IndexSplit out;
    for (std::size_t f = 0; f < factors.size(); ++f) {
        (keep_mask[f] ? out.kept_dim : out.traced_dim) *= factors[f].dimension();
    }
    const std::size_t dim = product_dimension(factors);
    out.kept.resize(dim);
    out.traced.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t rest = i;
        std::size_t kept = 0, kept_stride = 1;
        std::size_t traced = 0, traced_stride = 1;
        for (std::size_t f = factors.size(); f-- > 0;) {
            const std::size_t d = factors[f].dimension();
            const std::size_t digit = rest % d;
            rest /= d;
            if (keep_mask[f]) {
                kept += digit * kept_stride;
                kept_stride *= d;
            } else {
                traced += digit * traced_stride;
                traced_stride *= d;
            }
        }
        out.kept[i] = kept;
        out.traced[i] = traced;
    }
    return out;
}

}  // namespace

DensityMatrix DensityMatrix::from_matrix(std::vector<FactorSpace> factors, Eigen::MatrixXcd matrix,
                                         double tol) {
    for (const auto& f : factors) {
        if (f.factor.dof == Dof::spin && !f.momenta.empty()) {
            throw InvalidArgument("spin factor must not carry momentum labels");
        }
        if (f.dimension() == 0) throw InvalidArgument("density factor has dimension 0");
    }
    const std::size_t dim = product_dimension(factors);
    if (static_cast<std::size_t>(matrix.rows()) != dim || static_cast<std::size_t>(matrix.cols()) != dim) {
        std::ostringstream msg;
        msg << "density matrix is " << matrix.rows() << "x" << matrix.cols() << " but its factors span " << dim;
        throw InvalidArgument(msg.str());
    }
    DensityMatrix out(std::move(factors), std::move(matrix));
    const double herm = out.hermiticity_residual();
    if (herm > tol) {
        std::ostringstream msg;
        msg << "density matrix is not Hermitian (residual " << herm << ")";
        throw NumericalDegradation(msg.str());
    }
    const std::complex<double> trace = out.matrix_.trace();
    if (std::abs(trace - 1.0) > tol) {
        std::ostringstream msg;
        msg << "density matrix trace is " << trace << ", expected 1";
        throw NumericalDegradation(msg.str());
    }
    return out;
}

PartitionSpec DensityMatrix::partition() const {
    std::vector<Factor> fs;
    for (const auto& f : factors_) fs.push_back(f.factor);
    return PartitionSpec(std::move(fs));
}

std::vector<std::size_t> DensityMatrix::basis_digits(std::size_t index) const {
    if (index >= dimension()) throw InvalidArgument("basis index out of range");
    std::vector<std::size_t> digits(factors_.size());
    for (std::size_t f = factors_.size(); f-- > 0;) {
        digits[f] = index % factors_[f].dimension();
        index /= factors_[f].dimension();
    }
    return digits;
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double DensityMatrix::hermiticity_residual() const {
    if (matrix_.size() == 0) return 0.0;
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix from_state(const StateVector& s) {
    std::vector<FactorSpace> factors;
    for (std::size_t j = 0; j < s.particle_count(); ++j) {
        factors.push_back({{j, Dof::momentum}, s.momenta(j)});
        factors.push_back({{j, Dof::spin}, {}});
    }
    const std::size_t dim = product_dimension(factors);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    for (const auto& e : s.entries()) {
        std::size_t index = 0;
        for (std::size_t j = 0; j < e.key.size(); ++j) {
            index = index * s.momenta(j).size() + e.key[j].momentum;
            index = index * 2 + static_cast<std::size_t>(e.key[j].spin);
        }
        psi(static_cast<Eigen::Index>(index)) = e.amplitude;
    }
    Eigen::MatrixXcd rho = psi * psi.adjoint();
    return DensityMatrix::from_matrix(std::move(factors), std::move(rho));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const PartitionSpec& keep) {
    if (keep.empty()) throw InvalidArgument("partial_trace: nothing to keep");
    const auto& factors = rho.factors();
    std::vector<bool> mask(factors.size(), false);
    for (const Factor& want : keep.factors()) {
        auto it = std::find_if(factors.begin(), factors.end(),
                               [&](const FactorSpace& f) { return f.factor == want; });
        if (it == factors.end()) {
            throw InvalidArgument("partial_trace: factor " + PartitionSpec({want}).to_string() +
                                  " is not present in the density matrix");
        }
        mask[static_cast<std::size_t>(it - factors.begin())] = true;
    }

    const IndexSplit split = split_indices(factors, mask);
    std::vector<std::vector<std::size_t>> groups(split.traced_dim);
    for (std::size_t i = 0; i < split.kept.size(); ++i) groups[split.traced[i]].push_back(i);

    const auto kd = static_cast<Eigen::Index>(split.kept_dim);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kd, kd);
    const Eigen::MatrixXcd& m = rho.matrix();
    for (const auto& group : groups) {
        for (std::size_t a : group) {
            for (std::size_t b : group) {
                out(static_cast<Eigen::Index>(split.kept[a]), static_cast<Eigen::Index>(split.kept[b])) +=
                    m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            }
        }
    }

    std::vector<FactorSpace> kept;
    for (std::size_t f = 0; f < factors.size(); ++f) {
        if (mask[f]) kept.push_back(factors[f]);
    }
    return DensityMatrix::from_matrix(std::move(kept), std::move(out));
}

double purity(const DensityMatrix& rho) { return rho.matrix().cwiseAbs2().sum(); }

double linear_entropy(const DensityMatrix& rho) { return 1.0 - purity(rho); }

EntropyReport partition_entropy_sum(const DensityMatrix& rho, std::span<const PartitionSpec> partitions) {
    EntropyReport report;
    for (const auto& p : partitions) {
        const double e = linear_entropy(partial_trace(rho, p));
        report.entries.push_back({p, e});
        report.sum += e;
    }
    return report;
}

double state_entropy(const StateVector& s, const PartitionSpec& keep) {
    return linear_entropy(partial_trace(from_state(s), keep));
}

MomentumBlock momentum_block(const DensityMatrix& rho, std::size_t particle, std::size_t label_index) {
    const auto& factors = rho.factors();
    auto it = std::find_if(factors.begin(), factors.end(), [&](const FactorSpace& f) {
        return f.factor == Factor{particle, Dof::momentum};
    });
    if (it == factors.end()) throw InvalidArgument("momentum_block: particle momentum factor not present");
    if (label_index >= it->dimension()) throw InvalidArgument("momentum_block: label index out of range");
    const std::size_t pos = static_cast<std::size_t>(it - factors.begin());

    std::vector<bool> mask(factors.size(), true);
    mask[pos] = false;
    const IndexSplit split = split_indices(factors, mask);
    const auto kd = static_cast<Eigen::Index>(split.kept_dim);
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(kd, kd);
    for (std::size_t a = 0; a < split.kept.size(); ++a) {
        if (split.traced[a] != label_index) continue;
        for (std::size_t b = 0; b < split.kept.size(); ++b) {
            if (split.traced[b] != label_index) continue;
            block(static_cast<Eigen::Index>(split.kept[a]), static_cast<Eigen::Index>(split.kept[b])) =
                rho.matrix()(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        }
    }
    const double p = block.trace().real();
    if (!(p > 1e-300)) throw InvalidArgument("momentum_block: label has zero probability");

    std::vector<FactorSpace> rest;
    for (std::size_t f = 0; f < factors.size(); ++f) {
        if (mask[f]) rest.push_back(factors[f]);
    }
    return {p, DensityMatrix::from_matrix(std::move(rest), block / p)};
}

}  // namespace relqi
