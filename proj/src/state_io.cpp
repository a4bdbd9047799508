#include "relqi/state_io.hpp"

#include <fstream>

#include "relqi/errors.hpp"

namespace relqi {

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* name, const char* where) {
    if (!obj.is_object() || !obj.contains(name)) {
        throw InvalidArgument(std::string(where) + ": missing field '" + name + "'");
    }
    return obj.at(name);
}

double number(const json& v, const char* what) {
    if (!v.is_number()) throw InvalidArgument(std::string(what) + " must be a number");
    return v.get<double>();
}

MomentumLabel momentum_from_json(const json& m) {
    const json& p = field(m, "p", "momentum");
    if (!p.is_array() || p.size() != 3) throw InvalidArgument("momentum: 'p' must be [px, py, pz]");
    return {number(field(m, "mass", "momentum"), "mass"), number(p[0], "px"), number(p[1], "py"),
            number(p[2], "pz")};
}

Spin spin_from_json(const json& v) {
    if (v == "up") return Spin::up;
    if (v == "down") return Spin::down;
    throw InvalidArgument("spin must be \"up\" or \"down\"");
}

json momentum_to_json(const MomentumLabel& m) {
    return {{"mass", m.mass()}, {"p", {m.momentum().x(), m.momentum().y(), m.momentum().z()}}};
}

}  // namespace

StateVector state_from_json(const json& doc) {
    if (!doc.is_object()) throw InvalidArgument("state document must be a JSON object");
    if (doc.contains("friis")) {
        const json& f = doc.at("friis");
        return friis_state(number(field(f, "alpha", "friis"), "alpha"), number(field(f, "beta", "friis"), "beta"),
                           momentum_from_json(field(f, "p_plus", "friis")),
                           momentum_from_json(field(f, "p_minus", "friis")));
    }

    const json& n_field = field(doc, "particles", "state");
    if (!n_field.is_number_integer() || n_field.get<long long>() < 1) {
        throw InvalidArgument("state: 'particles' must be a positive integer");
    }
    const auto n = n_field.get<std::size_t>();

    const json& ms = field(doc, "momenta", "state");
    if (!ms.is_array() || ms.empty()) throw InvalidArgument("state: 'momenta' must be a nonempty array");
    std::vector<MomentumLabel> momenta;
    for (const auto& m : ms) momenta.push_back(momentum_from_json(m));

    const json& ts = field(doc, "terms", "state");
    if (!ts.is_array() || ts.empty()) throw InvalidArgument("state: 'terms' must be a nonempty array");
    std::vector<Term> terms;
    for (const auto& t : ts) {
        const json& amp = field(t, "amplitude", "term");
        if (!amp.is_array() || amp.size() != 2) throw InvalidArgument("term: 'amplitude' must be [re, im]");
        const json& cfg = field(t, "config", "term");
        if (!cfg.is_array() || cfg.size() != n) {
            throw InvalidArgument("term: 'config' must list one (momentum, spin) pair per particle");
        }
        Configuration c;
        for (const auto& slot : cfg) {
            if (!slot.is_array() || slot.size() != 2 || !slot[0].is_number_integer()) {
                throw InvalidArgument("term: config entries must be [momentum index, spin]");
            }
            const auto idx = slot[0].get<long long>();
            if (idx < 0 || static_cast<std::size_t>(idx) >= momenta.size()) {
                throw InvalidArgument("term: momentum index out of range");
            }
            c.push_back({momenta[static_cast<std::size_t>(idx)], spin_from_json(slot[1])});
        }
        terms.push_back({{number(amp[0], "amplitude re"), number(amp[1], "amplitude im")}, std::move(c)});
    }
    return make_state(terms);
}

StateVector load_state_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open state file '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidArgument("state file '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return state_from_json(doc);
}

json state_to_json(const StateVector& s) {
    std::vector<MomentumLabel> shared;
    auto index_of = [&](const MomentumLabel& m) {
        for (std::size_t k = 0; k < shared.size(); ++k) {
            if (shared[k].matches(m)) return k;
        }
        shared.push_back(m);
        return shared.size() - 1;
    };
    json terms = json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        json cfg = json::array();
        for (const auto& slot : s.configuration(i)) {
            cfg.push_back({index_of(slot.momentum), slot.spin == Spin::up ? "up" : "down"});
        }
        const auto a = s.amplitude(i);
        terms.push_back({{"amplitude", {a.real(), a.imag()}}, {"config", cfg}});
    }
    json momenta = json::array();
    for (const auto& m : shared) momenta.push_back(momentum_to_json(m));
    return {{"particles", s.particle_count()}, {"momenta", momenta}, {"terms", terms}};
}

}  // namespace relqi
