#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "relqi/lorentz.hpp"

namespace relqi {

enum class Spin : std::uint8_t { up = 0, down = 1 };

struct ParticleLabel {
    MomentumLabel momentum;
    Spin spin;
};

/// One basis ket |p1,s1; p2,s2; ...⟩.
using Configuration = std::vector<ParticleLabel>;

struct Term {
    std::complex<double> amplitude;
    Configuration configuration;
};

/// Position of one particle in the state's basis: an index into that
/// particle's momentum alphabet plus the spin.
struct SlotIndex {
    std::uint32_t momentum = 0;
    Spin spin = Spin::up;

    friend auto operator<=>(const SlotIndex&, const SlotIndex&) = default;
};

using BasisKey = std::vector<SlotIndex>;

/**
 * Normalized n-particle ket over discrete momentum labels.
 *
 * Each particle owns an ordered momentum alphabet (insertion order of first
 * use). Entries are kept sorted by their basis key, which orders by particle,
 * then momentum label, then spin. A unit-modulus global phase is carried
 * separately from the entry amplitudes; `amplitude()` includes it.
 */
class StateVector {
  public:
    struct Entry {
        BasisKey key;
        std::complex<double> amplitude;  ///< without the global phase
    };

    std::size_t particle_count() const { return alphabets_.size(); }
    const std::vector<MomentumLabel>& momenta(std::size_t particle) const;
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    std::complex<double> global_phase() const { return phase_; }
    std::complex<double> amplitude(std::size_t i) const { return phase_ * entries_.at(i).amplitude; }
    Configuration configuration(std::size_t i) const;
    std::vector<Term> terms() const;

    double norm() const;

    /// The same ket multiplied by e^{iφ}.
    StateVector with_global_phase(double phi) const;
    /// The same ket multiplied by a unit complex number.
    StateVector with_global_phase(std::complex<double> unit) const;

  private:
    friend class StateBuilder;
    std::vector<std::vector<MomentumLabel>> alphabets_;
    std::vector<Entry> entries_;
    std::complex<double> phase_{1.0, 0.0};
};

/// Accumulates amplitudes on basis keys, merging momenta under the label
/// tolerance. Used by the state constructors and by boosts.
class StateBuilder {
  public:
    explicit StateBuilder(std::size_t particles);

    /// Index of `label` in the particle's alphabet, appending it if new.
    std::uint32_t add_momentum(std::size_t particle, const MomentumLabel& label);
    void add(std::complex<double> amplitude, const BasisKey& key);

    /// Drops exactly-zero amplitudes and unused labels (order preserved).
    /// Throws InvalidArgument when nothing with nonzero norm remains.
    StateVector build(bool normalize);

  private:
    std::vector<std::vector<MomentumLabel>> alphabets_;
    std::vector<std::pair<BasisKey, std::complex<double>>> pending_;
};

StateVector make_state(std::span<const Term> terms);

/// (cos α |p₊,p₋⟩ + sin α |p₋,p₊⟩) ⊗ (cos β |↑↓⟩ + sin β |↓↑⟩).
StateVector friis_state(double alpha, double beta, const MomentumLabel& p_plus,
                        const MomentumLabel& p_minus);

/// Active spin-momentum action: every |σ,p⟩ goes to Σ_λ D_λσ[W(Λ,p)] |λ,Λp⟩.
/// Throws NumericalDegradation if the result is not unit norm within 1e-10.
StateVector boost_state(const StateVector& s, const LorentzTransform& lambda);

std::complex<double> inner_product(const StateVector& a, const StateVector& b);

/// max over the union of basis kets of |⟨c|a⟩ - ⟨c|b⟩|, momenta matched under tolerance.
double amplitude_distance(const StateVector& a, const StateVector& b);

}  // namespace relqi
