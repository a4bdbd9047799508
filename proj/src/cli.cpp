#include "relqi/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"

#include "relqi/density.hpp"
#include "relqi/errors.hpp"
#include "relqi/harness.hpp"
#include "relqi/report.hpp"
#include "relqi/state_io.hpp"

namespace relqi::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double plain_number(std::string_view s, std::string_view whole) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw InvalidArgument("not a number: '" + std::string(whole) + "'");
    }
    return v;
}

// Splits on commas that are not inside <...>, (...) or [...].
std::vector<std::string_view> split_top_level(std::string_view s) {
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '<' || c == '(' || c == '[') ++depth;
        if (c == '>' || c == ')' || c == ']') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

std::pair<std::string_view, std::string_view> key_value(std::string_view item) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw InvalidArgument("expected key=value, got '" + std::string(item) + "'");
    return {trim(item.substr(0, eq)), trim(item.substr(eq + 1))};
}

std::vector<PartitionSpec> default_partitions(std::size_t particles) {
    std::vector<PartitionSpec> out;
    for (std::size_t k = 0; k < particles; ++k) {
        out.push_back(PartitionSpec::momentum(k));
        out.push_back(PartitionSpec::spin(k));
    }
    for (std::size_t k = 0; k < particles; ++k) out.push_back(PartitionSpec::particle(k));
    return out;
}

StateVector load_state(const RunConfig& cfg) {
    if (cfg.state_path.has_value() == cfg.friis.has_value()) {
        throw InvalidArgument("give exactly one of --state or --friis");
    }
    if (cfg.state_path) return load_state_file(*cfg.state_path);
    const FriisParams& f = *cfg.friis;
    return friis_state(f.alpha, f.beta, MomentumLabel(f.mass, 0.0, 0.0, f.pz), MomentumLabel(f.mass, 0.0, 0.0, -f.pz));
}

class Output {
  public:
    Output(const RunConfig& cfg, std::ostream& fallback) {
        if (cfg.out_path) {
            file_.open(*cfg.out_path);
            if (!file_) throw InvalidArgument("cannot open output file '" + *cfg.out_path + "'");
            stream_ = &file_;
        } else {
            stream_ = &fallback;
        }
    }
    std::ostream& operator*() { return *stream_; }

  private:
    std::ofstream file_;
    std::ostream* stream_ = nullptr;
};

template <class Report>
void emit(const RunConfig& cfg, std::ostream& fallback, const Report& report) {
    Output out(cfg, fallback);
    switch (cfg.format) {
        case Format::json: *out << to_json(report).dump(2) << '\n'; break;
        case Format::csv: write_csv(*out, report); break;
        case Format::text: write_text(*out, report); break;
    }
}

int cmd_entropy(const RunConfig& cfg, std::ostream& out) {
    StateVector s = load_state(cfg);
    if (cfg.boost) {
        if (!cfg.boost->rapidity) throw InvalidArgument("--boost needs rapidity=<r> for this command");
        s = boost_state(s, boost_along_axis(cfg.boost->axis, *cfg.boost->rapidity));
    }
    const auto partitions = cfg.partitions.empty() ? default_partitions(s.particle_count()) : cfg.partitions;
    emit(cfg, out, partition_entropy_sum(from_state(s), partitions));
    return kOk;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
    const StateVector s = load_state(cfg);
    if (cfg.samples == 0) throw InvalidArgument("--samples must be at least 1");
    const auto partitions = cfg.partitions.empty() ? default_partitions(s.particle_count()) : cfg.partitions;
    ScanOptions options;
    options.samples = cfg.samples;
    options.seed = cfg.seed;
    options.max_rapidity = cfg.max_rapidity;
    options.tolerance = cfg.tolerance;
    emit(cfg, out, invariance_scan(s, partitions, options));
    return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    const StateVector s = load_state(cfg);
    std::vector<double> grid = cfg.rapidities;
    const Eigen::Vector3d axis = cfg.boost ? cfg.boost->axis : Eigen::Vector3d::UnitX();
    if (grid.empty() && cfg.boost && cfg.boost->rapidity) grid.push_back(*cfg.boost->rapidity);
    if (grid.empty()) throw InvalidArgument("sweep needs --rapidities or --grid");
    const auto partitions = cfg.partitions.empty() ? default_partitions(s.particle_count()) : cfg.partitions;
    emit(cfg, out, entropy_sweep(s, axis, grid, partitions));
    return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const auto checks = run_self_checks(cfg.seed);
    bool all = true;
    Output sink(cfg, out);
    if (cfg.format == Format::json) {
        *sink << to_json(checks).dump(2) << '\n';
        for (const auto& c : checks) all = all && c.passed;
    } else {
        for (const auto& c : checks) {
            *sink << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  (" << c.detail << ")\n";
            all = all && c.passed;
        }
        *sink << (all ? "all checks passed" : "some checks FAILED") << '\n';
    }
    return all ? kOk : kNumerical;
}

}  // namespace

double parse_real(std::string_view text) {
    const std::string_view s = trim(text);
    const auto pi_pos = s.find("pi");
    if (pi_pos == std::string_view::npos) return plain_number(s, text);

    double factor = 1.0;
    std::string_view head = trim(s.substr(0, pi_pos));
    if (!head.empty()) {
        if (head == "-") {
            factor = -1.0;
        } else if (head.back() == '*') {
            factor = plain_number(head.substr(0, head.size() - 1), text);
        } else {
            throw InvalidArgument("bad pi expression: '" + std::string(text) + "'");
        }
    }
    double divisor = 1.0;
    std::string_view tail = trim(s.substr(pi_pos + 2));
    if (!tail.empty()) {
        if (tail.front() != '/') throw InvalidArgument("bad pi expression: '" + std::string(text) + "'");
        divisor = plain_number(tail.substr(1), text);
        if (divisor == 0.0) throw InvalidArgument("division by zero in '" + std::string(text) + "'");
    }
    return factor * std::numbers::pi / divisor;
}

FriisParams parse_friis(std::string_view text) {
    FriisParams p;
    bool have_alpha = false, have_beta = false;
    for (auto item : split_top_level(text)) {
        const auto [k, v] = key_value(item);
        if (k == "alpha") {
            p.alpha = parse_real(v);
            have_alpha = true;
        } else if (k == "beta") {
            p.beta = parse_real(v);
            have_beta = true;
        } else if (k == "pz") {
            p.pz = parse_real(v);
        } else if (k == "mass") {
            p.mass = parse_real(v);
        } else {
            throw InvalidArgument("--friis: unknown key '" + std::string(k) + "'");
        }
    }
    if (!have_alpha || !have_beta) throw InvalidArgument("--friis needs alpha and beta");
    return p;
}

BoostParams parse_boost(std::string_view text) {
    BoostParams b;
    bool have_axis = false;
    for (auto item : split_top_level(text)) {
        const auto [k, v] = key_value(item);
        if (k == "axis") {
            have_axis = true;
            if (v == "x") {
                b.axis = Eigen::Vector3d::UnitX();
            } else if (v == "y") {
                b.axis = Eigen::Vector3d::UnitY();
            } else if (v == "z") {
                b.axis = Eigen::Vector3d::UnitZ();
            } else {
                std::string_view inner = v;
                if (inner.size() >= 2 && (inner.front() == '<' || inner.front() == '(' || inner.front() == '[')) {
                    inner = inner.substr(1, inner.size() - 2);
                }
                const auto parts = split_top_level(inner);
                if (parts.size() != 3) throw InvalidArgument("--boost: axis must be x, y, z or <nx,ny,nz>");
                const Eigen::Vector3d n(parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]));
                if (!(n.norm() > 0.0)) throw InvalidArgument("--boost: axis vector is zero");
                b.axis = n.normalized();
            }
        } else if (k == "rapidity") {
            b.rapidity = parse_real(v);
        } else {
            throw InvalidArgument("--boost: unknown key '" + std::string(k) + "'");
        }
    }
    if (!have_axis) throw InvalidArgument("--boost needs axis=...");
    return b;
}

std::vector<double> parse_grid(std::string_view text) {
    const std::string_view s = trim(text);
    if (s.find(':') != std::string_view::npos) {
        const auto a = s.find(':');
        const auto b = s.find(':', a + 1);
        if (b == std::string_view::npos) throw InvalidArgument("--grid must be start:stop:count");
        const double start = parse_real(s.substr(0, a));
        const double stop = parse_real(s.substr(a + 1, b - a - 1));
        const double count = plain_number(s.substr(b + 1), text);
        if (count < 1 || count != std::floor(count)) throw InvalidArgument("--grid count must be a positive integer");
        const auto n = static_cast<std::size_t>(count);
        std::vector<double> out;
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(n == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(n - 1));
        }
        return out;
    }
    std::vector<double> out;
    for (auto item : split_top_level(s)) out.push_back(parse_real(item));
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lorentz boosts of spin-1/2 qubits and partition-dependent linear entropies"};
    app.name("relqi");
    app.require_subcommand(1);

    RunConfig cfg;
    std::string state_path, friis, boost, grid_list, grid_range, out_path, format = "text";
    std::vector<std::string> partitions;

    auto add_state_options = [&](CLI::App* sub) {
        sub->add_option("--state", state_path, "State specification JSON file");
        sub->add_option("--friis", friis, "Comparison state: alpha=..,beta=..[,pz=..][,mass=..]");
        sub->add_option("--partition", partitions, "Kept factors, e.g. p1.spin, p2.mom, particle1, p1.mom,p2.spin (repeatable)");
        sub->add_option("--boost", boost, "axis=x|y|z|<nx,ny,nz>,rapidity=<r>");
    };
    auto add_output_options = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "Output file (default stdout)");
        sub->add_option("--format", format, "text, csv or json")
            ->check(CLI::IsMember({"text", "csv", "json"}));
    };

    auto* entropy = app.add_subcommand("entropy", "Per-partition linear entropies and their sum");
    add_state_options(entropy);
    add_output_options(entropy);

    auto* scan = app.add_subcommand("scan", "Random-boost invariance scan per partition");
    add_state_options(scan);
    add_output_options(scan);
    scan->add_option("--samples", cfg.samples, "Number of random boosts");
    scan->add_option("--seed", cfg.seed, "64-bit seed");
    scan->add_option("--max-rapidity", cfg.max_rapidity, "Upper bound of the rapidity distribution");
    scan->add_option("--tol", cfg.tolerance, "Invariance tolerance on linear entropy");

    auto* sweep = app.add_subcommand("sweep", "Entropies along a rapidity grid for a fixed boost axis");
    add_state_options(sweep);
    add_output_options(sweep);
    sweep->add_option("--rapidities", grid_list, "Comma-separated rapidities");
    sweep->add_option("--grid", grid_range, "start:stop:count");

    auto* verify = app.add_subcommand("verify", "Run the numerical invariant suite");
    add_output_options(verify);
    verify->add_option("--seed", cfg.seed, "64-bit seed");

    std::vector<const char*> argv{"relqi"};
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "relqi: " << e.what() << '\n';
        return kUsage;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        if (!state_path.empty()) cfg.state_path = state_path;
        if (!friis.empty()) cfg.friis = parse_friis(friis);
        if (!boost.empty()) cfg.boost = parse_boost(boost);
        for (const auto& p : partitions) cfg.partitions.push_back(PartitionSpec::parse(p));
        if (!grid_list.empty() && !grid_range.empty()) throw InvalidArgument("give only one of --rapidities, --grid");
        if (!grid_list.empty()) cfg.rapidities = parse_grid(grid_list);
        if (!grid_range.empty()) cfg.rapidities = parse_grid(grid_range);
        if (!out_path.empty()) cfg.out_path = out_path;
        cfg.format = format == "csv" ? Format::csv : format == "json" ? Format::json : Format::text;

        if (cfg.command == "entropy") return cmd_entropy(cfg, out);
        if (cfg.command == "scan") return cmd_scan(cfg, out);
        if (cfg.command == "sweep") return cmd_sweep(cfg, out);
        return cmd_verify(cfg, out);
    } catch (const InvalidArgument& e) {
        err << "relqi: " << e.what() << '\n';
        return kUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "relqi: " << e.what() << '\n';
        return kUsage;
    } catch (const NumericalError& e) {
        err << "relqi: numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        err << "relqi: " << e.what() << '\n';
        return kNumerical;
    }
}

}  // namespace relqi::cli
