#include "relqi/partition.hpp"

#include <algorithm>
#include <charconv>

#include "relqi/errors.hpp"

namespace relqi {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::size_t parse_particle_number(std::string_view digits, std::string_view token) {
    std::size_t k = 0;
    const auto* end = digits.data() + digits.size();
    const auto [ptr, ec] = std::from_chars(digits.data(), end, k);
    if (digits.empty() || ec != std::errc() || ptr != end || k == 0) {
        throw InvalidArgument("partition selector: bad particle number in '" + std::string(token) + "'");
    }
    return k - 1;
}

}  // namespace

PartitionSpec::PartitionSpec(std::vector<Factor> factors) : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end());
    factors_.erase(std::unique(factors_.begin(), factors_.end()), factors_.end());
}

PartitionSpec PartitionSpec::particle(std::size_t k) {
    return PartitionSpec({{k, Dof::momentum}, {k, Dof::spin}});
}

PartitionSpec PartitionSpec::spin(std::size_t k) { return PartitionSpec({{k, Dof::spin}}); }

PartitionSpec PartitionSpec::momentum(std::size_t k) { return PartitionSpec({{k, Dof::momentum}}); }

PartitionSpec PartitionSpec::parse(std::string_view selector) {
    std::vector<Factor> factors;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = selector.find(',', start);
        const std::string_view token =
            trim(selector.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (token.empty()) throw InvalidArgument("partition selector: empty factor in '" + std::string(selector) + "'");

        if (token.starts_with("particle")) {
            const std::size_t k = parse_particle_number(token.substr(8), token);
            factors.push_back({k, Dof::momentum});
            factors.push_back({k, Dof::spin});
        } else if (token.starts_with("p")) {
            const std::size_t dot = token.find('.');
            if (dot == std::string_view::npos) {
                throw InvalidArgument("partition selector: expected p<k>.spin or p<k>.mom, got '" +
                                      std::string(token) + "'");
            }
            const std::size_t k = parse_particle_number(token.substr(1, dot - 1), token);
            const std::string_view dof = token.substr(dot + 1);
            if (dof == "spin") {
                factors.push_back({k, Dof::spin});
            } else if (dof == "mom") {
                factors.push_back({k, Dof::momentum});
            } else {
                throw InvalidArgument("partition selector: unknown degree of freedom '" + std::string(dof) + "'");
            }
        } else {
            throw InvalidArgument("partition selector: unrecognized factor '" + std::string(token) + "'");
        }

        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return PartitionSpec(std::move(factors));
}

std::string PartitionSpec::to_string() const {
    std::string out;
    auto append = [&](const std::string& piece) {
        if (!out.empty()) out += ',';
        out += piece;
    };
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const Factor& f = factors_[i];
        const std::string k = std::to_string(f.particle + 1);
        // Sorted order puts momentum right before spin for the same particle.
        if (f.dof == Dof::momentum && i + 1 < factors_.size() &&
            factors_[i + 1] == Factor{f.particle, Dof::spin}) {
            append("particle" + k);
            ++i;
        } else {
            append("p" + k + (f.dof == Dof::spin ? ".spin" : ".mom"));
        }
    }
    return out;
}

bool PartitionSpec::contains(const Factor& f) const {
    return std::binary_search(factors_.begin(), factors_.end(), f);
}

PartitionSpec PartitionSpec::complement(std::size_t particle_count) const {
    std::vector<Factor> out;
    for (std::size_t k = 0; k < particle_count; ++k) {
        for (Dof d : {Dof::momentum, Dof::spin}) {
            if (!contains({k, d})) out.push_back({k, d});
        }
    }
    return PartitionSpec(std::move(out));
}

PartitionSpec PartitionSpec::united(const PartitionSpec& other) const {
    std::vector<Factor> all = factors_;
    all.insert(all.end(), other.factors_.begin(), other.factors_.end());
    return PartitionSpec(std::move(all));
}

}  // namespace relqi
