#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace relqi {

enum class Dof : std::uint8_t { momentum = 0, spin = 1 };

/// One tensor factor of the n-particle space. `particle` is 0-based.
struct Factor {
    std::size_t particle = 0;
    Dof dof = Dof::spin;

    friend auto operator<=>(const Factor&, const Factor&) = default;
};

/**
 * The set of factors kept by a partial trace, stored sorted and unique.
 *
 * Text form (1-based particle numbers): `p<k>.spin`, `p<k>.mom`,
 * `particle<k>` (both factors of particle k), joined with commas. Printing
 * is canonical: factors sorted by particle, and a particle whose spin and
 * momentum are both kept prints as `particle<k>`.
 */
class PartitionSpec {
  public:
    PartitionSpec() = default;
    explicit PartitionSpec(std::vector<Factor> factors);

    static PartitionSpec particle(std::size_t k);
    static PartitionSpec spin(std::size_t k);
    static PartitionSpec momentum(std::size_t k);

    /// Throws InvalidArgument on grammar errors.
    static PartitionSpec parse(std::string_view selector);
    std::string to_string() const;

    const std::vector<Factor>& factors() const { return factors_; }
    bool empty() const { return factors_.empty(); }
    bool contains(const Factor& f) const;

    /// All 2n factors not in this set.
    PartitionSpec complement(std::size_t particle_count) const;
    PartitionSpec united(const PartitionSpec& other) const;

    friend bool operator==(const PartitionSpec&, const PartitionSpec&) = default;

  private:
    std::vector<Factor> factors_;
};

}  // namespace relqi
