#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relqi/cli.hpp"
#include "relqi/density.hpp"
#include "relqi/errors.hpp"
#include "relqi/harness.hpp"
#include "relqi/lorentz.hpp"
#include "relqi/partition.hpp"
#include "relqi/report.hpp"
#include "relqi/state.hpp"
#include "relqi/state_io.hpp"

namespace py = pybind11;
using namespace relqi;

namespace {

using SlotList = std::vector<std::pair<MomentumLabel, Spin>>;
using PyTerm = std::pair<std::complex<double>, SlotList>;

std::vector<PartitionSpec> specs(const std::vector<std::string>& selectors) {
    std::vector<PartitionSpec> out;
    for (const auto& s : selectors) out.push_back(PartitionSpec::parse(s));
    return out;
}

py::dict scan_dict(const ScanReport& r) {
    py::dict d;
    d["partition"] = r.partition.to_string();
    d["samples"] = r.samples;
    d["baseline"] = r.baseline;
    d["max_deviation"] = r.max_deviation;
    d["tolerance"] = r.tolerance;
    d["verdict"] = to_string(r.verdict);
    return d;
}

}  // namespace

PYBIND11_MODULE(_relqi, m) {
    m.doc() = "Lorentz boosts of spin-1/2 particles and partition-dependent linear entropies.";

    // InvalidArgument derives from std::invalid_argument and surfaces as ValueError.
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    py::enum_<Spin>(m, "Spin").value("up", Spin::up).value("down", Spin::down);

    py::class_<MomentumLabel>(m, "MomentumLabel")
        .def(py::init([](double mass, const Eigen::Vector3d& p) { return MomentumLabel(mass, p); }),
             py::arg("mass"), py::arg("p"))
        .def_static("at_rest", &MomentumLabel::at_rest, py::arg("mass"))
        .def_property_readonly("mass", &MomentumLabel::mass)
        .def_property_readonly("momentum", [](const MomentumLabel& l) { return Eigen::Vector3d(l.momentum()); })
        .def_property_readonly("energy", &MomentumLabel::energy)
        .def("matches", &MomentumLabel::matches)
        .def("__repr__", [](const MomentumLabel& l) {
            std::ostringstream s;
            s << "MomentumLabel(mass=" << l.mass() << ", p=[" << l.momentum().x() << ", " << l.momentum().y() << ", "
              << l.momentum().z() << "])";
            return s.str();
        });

    py::class_<LorentzTransform>(m, "LorentzTransform")
        .def(py::init<>())
        .def_static("from_matrix", &LorentzTransform::from_matrix, py::arg("matrix"), py::arg("tol") = 1e-10)
        .def_property_readonly("matrix", [](const LorentzTransform& l) { return Eigen::Matrix4d(l.matrix()); })
        .def("metric_residual", &LorentzTransform::metric_residual)
        .def("__matmul__", [](const LorentzTransform& a, const LorentzTransform& b) { return compose(a, b); });

    m.def("boost_along_axis", &boost_along_axis, py::arg("axis"), py::arg("rapidity"));
    m.def("rotation_about_axis", &rotation_about_axis, py::arg("axis"), py::arg("angle"));
    m.def("compose", &compose, py::arg("a"), py::arg("b"));
    m.def("inverse", &inverse, py::arg("transform"));
    m.def("standard_boost", &standard_boost, py::arg("p"));
    m.def("apply", py::overload_cast<const LorentzTransform&, const MomentumLabel&>(&apply), py::arg("transform"),
          py::arg("p"));
    m.def(
        "wigner_rotation",
        [](const LorentzTransform& l, const MomentumLabel& p) { return Eigen::Matrix3d(wigner_rotation(l, p).matrix()); },
        py::arg("transform"), py::arg("p"));
    m.def(
        "su2_lift",
        [](const Eigen::Matrix3d& r) { return Eigen::Matrix2cd(su2_lift(WignerRotation::from_matrix(r, 1e-10)).matrix()); },
        py::arg("rotation"));
    m.def(
        "axis_angle",
        [](const Eigen::Matrix3d& r) {
            const AxisAngle a = axis_angle(WignerRotation::from_matrix(r, 1e-10));
            return py::make_tuple(Eigen::Vector3d(a.axis), a.angle);
        },
        py::arg("rotation"));

    py::class_<StateVector>(m, "StateVector")
        .def_property_readonly("particle_count", &StateVector::particle_count)
        .def("__len__", &StateVector::size)
        .def("momenta", &StateVector::momenta, py::arg("particle"))
        .def("terms",
             [](const StateVector& s) {
                 std::vector<PyTerm> out;
                 for (const auto& t : s.terms()) {
                     SlotList c;
                     for (const auto& slot : t.configuration) c.emplace_back(slot.momentum, slot.spin);
                     out.emplace_back(t.amplitude, std::move(c));
                 }
                 return out;
             })
        .def_property_readonly("norm", &StateVector::norm)
        .def("with_global_phase", py::overload_cast<double>(&StateVector::with_global_phase, py::const_),
             py::arg("phi"));

    m.def(
        "make_state",
        [](const std::vector<PyTerm>& terms) {
            std::vector<Term> ts;
            for (const auto& [amp, cfg] : terms) {
                Configuration c;
                for (const auto& [label, spin] : cfg) c.push_back({label, spin});
                ts.push_back({amp, std::move(c)});
            }
            return make_state(ts);
        },
        py::arg("terms"));
    m.def("friis_state", &friis_state, py::arg("alpha"), py::arg("beta"), py::arg("p_plus"), py::arg("p_minus"));
    m.def("boost_state", &boost_state, py::arg("state"), py::arg("transform"));
    m.def("inner_product", &inner_product, py::arg("a"), py::arg("b"));
    m.def("amplitude_distance", &amplitude_distance, py::arg("a"), py::arg("b"));
    m.def("state_from_json", [](const std::string& text) { return state_from_json(nlohmann::json::parse(text)); },
          py::arg("text"));
    m.def("state_to_json", [](const StateVector& s) { return state_to_json(s).dump(); }, py::arg("state"));

    py::class_<PartitionSpec>(m, "PartitionSpec")
        .def_static("parse", &PartitionSpec::parse, py::arg("selector"))
        .def_static("particle", &PartitionSpec::particle, py::arg("index"))
        .def_static("spin", &PartitionSpec::spin, py::arg("index"))
        .def_static("momentum", &PartitionSpec::momentum, py::arg("index"))
        .def("complement", &PartitionSpec::complement, py::arg("particle_count"))
        .def("__str__", &PartitionSpec::to_string)
        .def("__repr__", [](const PartitionSpec& p) { return "PartitionSpec('" + p.to_string() + "')"; })
        .def("__eq__", [](const PartitionSpec& a, const PartitionSpec& b) { return a == b; });
    m.def(
        "all_partitions",
        [](std::size_t n) {
            std::vector<std::string> out;
            for (const auto& p : all_partitions(n)) out.push_back(p.to_string());
            return out;
        },
        py::arg("particle_count"));

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def_property_readonly("matrix", [](const DensityMatrix& r) { return Eigen::MatrixXcd(r.matrix()); })
        .def_property_readonly("dimension", &DensityMatrix::dimension)
        .def_property_readonly("partition", [](const DensityMatrix& r) { return r.partition().to_string(); })
        .def("min_eigenvalue", &DensityMatrix::min_eigenvalue);
    m.def("from_state", &from_state, py::arg("state"));
    m.def(
        "partial_trace",
        [](const DensityMatrix& rho, const std::string& keep) { return partial_trace(rho, PartitionSpec::parse(keep)); },
        py::arg("rho"), py::arg("keep"));
    m.def("purity", &purity, py::arg("rho"));
    m.def("linear_entropy", py::overload_cast<const DensityMatrix&>(&linear_entropy), py::arg("rho"));
    m.def(
        "state_entropy",
        [](const StateVector& s, const std::string& keep) { return state_entropy(s, PartitionSpec::parse(keep)); },
        py::arg("state"), py::arg("keep"));

    m.def(
        "invariance_scan",
        [](const StateVector& s, const std::vector<std::string>& partitions, std::size_t samples, std::uint64_t seed,
           double max_rapidity, double tolerance, bool with_rotation) {
            ScanOptions o;
            o.samples = samples;
            o.seed = seed;
            o.max_rapidity = max_rapidity;
            o.tolerance = tolerance;
            o.with_rotation = with_rotation;
            const auto parts = specs(partitions);
            std::vector<ScanReport> reports;
            {
                py::gil_scoped_release release;
                reports = invariance_scan(s, parts, o);
            }
            py::list out;
            for (const auto& r : reports) out.append(scan_dict(r));
            return out;
        },
        py::arg("state"), py::arg("partitions"), py::arg("samples") = 1000, py::arg("seed") = 0,
        py::arg("max_rapidity") = 3.0, py::arg("tolerance") = kInvarianceTol, py::arg("with_rotation") = true);
    m.def(
        "entropy_sweep",
        [](const StateVector& s, const Eigen::Vector3d& axis, const std::vector<double>& rapidities,
           const std::vector<std::string>& partitions) {
            const SweepTable t = entropy_sweep(s, axis, rapidities, specs(partitions));
            py::dict d;
            std::vector<std::vector<double>> rows;
            std::vector<double> sums;
            for (const auto& r : t.rows) {
                rows.push_back(r.entropies);
                sums.push_back(r.sum);
            }
            d["partitions"] = partitions;
            d["rapidities"] = rapidities;
            d["entropies"] = rows;
            d["sum"] = sums;
            return d;
        },
        py::arg("state"), py::arg("axis"), py::arg("rapidities"), py::arg("partitions"));
    m.def(
        "run_self_checks",
        [](std::uint64_t seed) {
            py::list out;
            for (const auto& c : run_self_checks(seed)) out.append(py::make_tuple(c.name, c.passed, c.detail));
            return out;
        },
        py::arg("seed") = 0);

    m.def(
        "cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
