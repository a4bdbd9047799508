#include "relqi/state.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "relqi/errors.hpp"

namespace relqi {

namespace {

constexpr double kUnitarityTol = 1e-10;

using KeyMap = std::map<BasisKey, std::complex<double>>;

// For each particle, the index in `to`'s alphabet of every label of `from`.
std::vector<std::vector<std::optional<std::uint32_t>>> match_alphabets(const StateVector& from,
                                                                       const StateVector& to) {
    std::vector<std::vector<std::optional<std::uint32_t>>> out(from.particle_count());
    for (std::size_t j = 0; j < from.particle_count(); ++j) {
        for (const auto& label : from.momenta(j)) {
            std::optional<std::uint32_t> hit;
            const auto& target = to.momenta(j);
            for (std::uint32_t k = 0; k < target.size(); ++k) {
                if (target[k].matches(label)) {
                    hit = k;
                    break;
                }
            }
            out[j].push_back(hit);
        }
    }
    return out;
}

std::optional<BasisKey> translate(const BasisKey& key,
                                  const std::vector<std::vector<std::optional<std::uint32_t>>>& map) {
    BasisKey out = key;
    for (std::size_t j = 0; j < key.size(); ++j) {
        const auto& hit = map[j][key[j].momentum];
        if (!hit) return std::nullopt;
        out[j].momentum = *hit;
    }
    return out;
}

void require_same_particles(const StateVector& a, const StateVector& b, const char* what) {
    if (a.particle_count() != b.particle_count()) {
        std::ostringstream msg;
        msg << what << ": particle counts differ (" << a.particle_count() << " vs "
            << b.particle_count() << ")";
        throw InvalidArgument(msg.str());
    }
}

}  // namespace

// ------------------------------------------------------------------ StateVector

const std::vector<MomentumLabel>& StateVector::momenta(std::size_t particle) const {
    if (particle >= alphabets_.size()) throw InvalidArgument("particle index out of range");
    return alphabets_[particle];
}

Configuration StateVector::configuration(std::size_t i) const {
    const auto& key = entries_.at(i).key;
    Configuration out;
    out.reserve(key.size());
    for (std::size_t j = 0; j < key.size(); ++j) {
        out.push_back({alphabets_[j][key[j].momentum], key[j].spin});
    }
    return out;
}

std::vector<Term> StateVector::terms() const {
    std::vector<Term> out;
    out.reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) out.push_back({amplitude(i), configuration(i)});
    return out;
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const auto& e : entries_) sum += std::norm(e.amplitude);
    return std::sqrt(sum);
}

StateVector StateVector::with_global_phase(double phi) const {
    return with_global_phase(std::polar(1.0, phi));
}

StateVector StateVector::with_global_phase(std::complex<double> unit) const {
    if (std::abs(std::abs(unit) - 1.0) > 1e-12) throw InvalidArgument("global phase must have unit modulus");
    StateVector out = *this;
    out.phase_ *= unit;
    return out;
}

// ----------------------------------------------------------------- StateBuilder

StateBuilder::StateBuilder(std::size_t particles) : alphabets_(particles) {
    if (particles == 0) throw InvalidArgument("a state needs at least one particle");
}

std::uint32_t StateBuilder::add_momentum(std::size_t particle, const MomentumLabel& label) {
    auto& alphabet = alphabets_.at(particle);
    for (std::uint32_t k = 0; k < alphabet.size(); ++k) {
        if (alphabet[k].matches(label)) return k;
    }
    alphabet.push_back(label);
    return static_cast<std::uint32_t>(alphabet.size() - 1);
}

void StateBuilder::add(std::complex<double> amplitude, const BasisKey& key) {
    if (key.size() != alphabets_.size()) {
        throw InvalidArgument("configuration particle count does not match the state");
    }
    for (std::size_t j = 0; j < key.size(); ++j) {
        if (key[j].momentum >= alphabets_[j].size()) throw InvalidArgument("momentum index out of range");
    }
    if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag())) {
        throw InvalidArgument("non-finite amplitude");
    }
    pending_.emplace_back(key, amplitude);
}

StateVector StateBuilder::build(bool normalize) {
    KeyMap merged;
    for (const auto& [key, amp] : pending_) merged[key] += amp;

    const std::size_t n = alphabets_.size();
    std::vector<std::vector<bool>> used(n);
    for (std::size_t j = 0; j < n; ++j) used[j].assign(alphabets_[j].size(), false);
    double norm2 = 0.0;
    for (auto it = merged.begin(); it != merged.end();) {
        if (it->second == std::complex<double>(0.0, 0.0)) {
            it = merged.erase(it);
            continue;
        }
        norm2 += std::norm(it->second);
        for (std::size_t j = 0; j < n; ++j) used[j][it->first[j].momentum] = true;
        ++it;
    }
    if (merged.empty() || !(norm2 > 0.0)) throw InvalidArgument("state has zero norm");

    StateVector out;
    out.alphabets_.resize(n);
    std::vector<std::vector<std::uint32_t>> remap(n);
    for (std::size_t j = 0; j < n; ++j) {
        remap[j].resize(alphabets_[j].size());
        for (std::size_t k = 0; k < alphabets_[j].size(); ++k) {
            if (!used[j][k]) continue;
            remap[j][k] = static_cast<std::uint32_t>(out.alphabets_[j].size());
            out.alphabets_[j].push_back(alphabets_[j][k]);
        }
    }
    const double scale = normalize ? 1.0 / std::sqrt(norm2) : 1.0;
    out.entries_.reserve(merged.size());
    for (auto& [key, amp] : merged) {
        BasisKey k = key;
        for (std::size_t j = 0; j < n; ++j) k[j].momentum = remap[j][k[j].momentum];
        out.entries_.push_back({std::move(k), amp * scale});
    }
    pending_.clear();
    return out;
}

// ------------------------------------------------------------------- operations

StateVector make_state(std::span<const Term> terms) {
    if (terms.empty()) throw InvalidArgument("make_state: empty term list");
    const std::size_t n = terms.front().configuration.size();
    StateBuilder builder(n);
    for (const auto& term : terms) {
        if (term.configuration.size() != n) {
            throw InvalidArgument("make_state: configurations have different particle counts");
        }
        BasisKey key(n);
        for (std::size_t j = 0; j < n; ++j) {
            key[j] = {builder.add_momentum(j, term.configuration[j].momentum), term.configuration[j].spin};
        }
        builder.add(term.amplitude, key);
    }
    return builder.build(true);
}

StateVector friis_state(double alpha, double beta, const MomentumLabel& p_plus,
                        const MomentumLabel& p_minus) {
    if (p_plus.matches(p_minus)) {
        throw InvalidArgument("friis_state: p_plus and p_minus coincide");
    }
    StateBuilder builder(2);
    std::uint32_t plus[2], minus[2];
    for (std::size_t j = 0; j < 2; ++j) {
        plus[j] = builder.add_momentum(j, p_plus);
        minus[j] = builder.add_momentum(j, p_minus);
    }
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double cb = std::cos(beta), sb = std::sin(beta);
    builder.add(ca * cb, {{plus[0], Spin::up}, {minus[1], Spin::down}});
    builder.add(ca * sb, {{plus[0], Spin::down}, {minus[1], Spin::up}});
    builder.add(sa * cb, {{minus[0], Spin::up}, {plus[1], Spin::down}});
    builder.add(sa * sb, {{minus[0], Spin::down}, {plus[1], Spin::up}});
    return builder.build(true);
}

StateVector boost_state(const StateVector& s, const LorentzTransform& lambda) {
    const std::size_t n = s.particle_count();
    StateBuilder builder(n);

    // Per particle and label: where the label goes and the spin matrix it picks up.
    std::vector<std::vector<std::uint32_t>> moved(n);
    std::vector<std::vector<Eigen::Matrix2cd>> spin_ops(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (const auto& label : s.momenta(j)) {
            moved[j].push_back(builder.add_momentum(j, apply(lambda, label)));
            spin_ops[j].push_back(su2_lift(wigner_rotation(lambda, label)).matrix());
        }
    }

    BasisKey key(n);
    for (const auto& entry : s.entries()) {
        // Expand the product over particles of Σ_λ D_λσ, skipping exact zeros.
        auto expand = [&](auto&& self, std::size_t j, std::complex<double> amp) -> void {
            if (j == n) {
                builder.add(amp, key);
                return;
            }
            const auto& slot = entry.key[j];
            const auto& d = spin_ops[j][slot.momentum];
            const int sigma = static_cast<int>(slot.spin);
            for (int lam = 0; lam < 2; ++lam) {
                const std::complex<double> c = d(lam, sigma);
                if (c == std::complex<double>(0.0, 0.0)) continue;
                key[j] = {moved[j][slot.momentum], static_cast<Spin>(lam)};
                self(self, j + 1, amp * c);
            }
        };
        expand(expand, 0, entry.amplitude);
    }

    StateVector out = builder.build(false).with_global_phase(s.global_phase());
    const double norm = out.norm();
    if (std::abs(norm - s.norm()) > kUnitarityTol) {
        std::ostringstream msg;
        msg << "boost_state: norm changed from " << s.norm() << " to " << norm;
        throw NumericalDegradation(msg.str());
    }
    return out;
}

std::complex<double> inner_product(const StateVector& a, const StateVector& b) {
    require_same_particles(a, b, "inner_product");
    const auto map = match_alphabets(b, a);
    KeyMap lookup;
    for (const auto& e : a.entries()) lookup.emplace(e.key, e.amplitude);
    std::complex<double> sum = 0.0;
    for (const auto& e : b.entries()) {
        const auto key = translate(e.key, map);
        if (!key) continue;
        if (auto it = lookup.find(*key); it != lookup.end()) sum += std::conj(it->second) * e.amplitude;
    }
    return std::conj(a.global_phase()) * b.global_phase() * sum;
}

double amplitude_distance(const StateVector& a, const StateVector& b) {
    require_same_particles(a, b, "amplitude_distance");
    const auto map = match_alphabets(b, a);
    KeyMap remaining;
    for (std::size_t i = 0; i < a.size(); ++i) remaining.emplace(a.entries()[i].key, a.amplitude(i));
    double worst = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const auto key = translate(b.entries()[i].key, map);
        std::complex<double> other = 0.0;
        if (key) {
            if (auto it = remaining.find(*key); it != remaining.end()) {
                other = it->second;
                remaining.erase(it);
            }
        }
        worst = std::max(worst, std::abs(b.amplitude(i) - other));
    }
    for (const auto& [key, amp] : remaining) worst = std::max(worst, std::abs(amp));
    return worst;
}

}  // namespace relqi
