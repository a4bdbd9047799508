#include "relqi/lorentz.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "relqi/errors.hpp"

namespace relqi {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kIdentityAngle = 1e-9;
constexpr double kTimeMixingLimit = 1e-8;

void require_unit(const Eigen::Vector3d& axis, const char* what) {
    if (!axis.allFinite() || std::abs(axis.norm() - 1.0) > kUnitTol) {
        std::ostringstream msg;
        msg << what << ": axis must be a unit vector, got |n| = " << axis.norm();
        throw InvalidArgument(msg.str());
    }
}

Eigen::Matrix3d rodrigues(const Eigen::Vector3d& n, double angle) {
    Eigen::Matrix3d k;
    k << 0.0, -n.z(), n.y(),
         n.z(), 0.0, -n.x(),
         -n.y(), n.x(), 0.0;
    return Eigen::Matrix3d::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * k * k;
}

// Unit quaternion (w, x, y, z) with w >= 0 for a rotation matrix, via the
// largest-pivot (Shepperd) extraction.
Eigen::Vector4d rotation_quaternion(const Eigen::Matrix3d& r) {
    const double tr = r.trace();
    const std::array<double, 4> pivots = {tr, r(0, 0), r(1, 1), r(2, 2)};
    const auto k = std::distance(pivots.begin(), std::max_element(pivots.begin(), pivots.end()));
    double w, x, y, z;
    switch (k) {
        case 0: {
            w = 0.5 * std::sqrt(std::max(0.0, 1.0 + tr));
            const double s = 0.25 / w;
            x = (r(2, 1) - r(1, 2)) * s;
            y = (r(0, 2) - r(2, 0)) * s;
            z = (r(1, 0) - r(0, 1)) * s;
            break;
        }
        case 1: {
            x = 0.5 * std::sqrt(std::max(0.0, 1.0 + r(0, 0) - r(1, 1) - r(2, 2)));
            const double s = 0.25 / x;
            w = (r(2, 1) - r(1, 2)) * s;
            y = (r(0, 1) + r(1, 0)) * s;
            z = (r(0, 2) + r(2, 0)) * s;
            break;
        }
        case 2: {
            y = 0.5 * std::sqrt(std::max(0.0, 1.0 - r(0, 0) + r(1, 1) - r(2, 2)));
            const double s = 0.25 / y;
            w = (r(0, 2) - r(2, 0)) * s;
            x = (r(0, 1) + r(1, 0)) * s;
            z = (r(1, 2) + r(2, 1)) * s;
            break;
        }
        default: {
            z = 0.5 * std::sqrt(std::max(0.0, 1.0 - r(0, 0) - r(1, 1) + r(2, 2)));
            const double s = 0.25 / z;
            w = (r(1, 0) - r(0, 1)) * s;
            x = (r(0, 2) + r(2, 0)) * s;
            y = (r(1, 2) + r(2, 1)) * s;
            break;
        }
    }
    Eigen::Vector4d q(w, x, y, z);
    q.normalize();
    if (q(0) < 0.0) q = -q;
    return q;
}

Eigen::Matrix3d nearest_rotation(const Eigen::Matrix3d& m) {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d u = svd.matrixU();
    const Eigen::Matrix3d v = svd.matrixV();
    if ((u * v.transpose()).determinant() < 0.0) u.col(2) = -u.col(2);
    return u * v.transpose();
}

}  // namespace

// ---------------------------------------------------------------- MomentumLabel

MomentumLabel::MomentumLabel(double mass, const Eigen::Vector3d& p) : mass_(mass), p_(p) {
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        std::ostringstream msg;
        msg << "momentum label: mass must be positive and finite, got " << mass;
        throw InvalidArgument(msg.str());
    }
    if (!p.allFinite()) throw InvalidArgument("momentum label: non-finite 3-momentum");
}

double MomentumLabel::energy() const { return std::sqrt(mass_ * mass_ + p_.squaredNorm()); }

FourVector MomentumLabel::four_momentum() const { return {energy(), p_.x(), p_.y(), p_.z()}; }

bool MomentumLabel::matches(const MomentumLabel& other) const {
    if (std::abs(mass_ - other.mass_) > 1e-12) return false;
    const double scale = std::max({1.0, p_.norm(), other.p_.norm()});
    return (p_ - other.p_).norm() <= 1e-9 * scale;
}

// ------------------------------------------------------------- LorentzTransform

LorentzTransform LorentzTransform::from_matrix(const Eigen::Matrix4d& m, double tol) {
    if (!m.allFinite()) throw NumericalDegradation("Lorentz transform has non-finite entries");
    const double scale = std::max(1.0, m(0, 0) * m(0, 0));
    const LorentzTransform out(m);
    const double residual = out.metric_residual();
    if (residual > tol * scale) {
        std::ostringstream msg;
        msg << "Lorentz transform violates metric preservation: residual " << residual;
        throw NumericalDegradation(msg.str());
    }
    const double det = m.determinant();
    if (std::abs(det - 1.0) > tol * scale) {
        std::ostringstream msg;
        msg << "Lorentz transform is not proper: det = " << det;
        throw NumericalDegradation(msg.str());
    }
    if (m(0, 0) < 1.0 - tol * scale) {
        std::ostringstream msg;
        msg << "Lorentz transform is not orthochronous: L00 = " << m(0, 0);
        throw NumericalDegradation(msg.str());
    }
    return out;
}

double LorentzTransform::metric_residual() const {
    const Eigen::Matrix4d& eta = minkowski_metric();
    return (m_.transpose() * eta * m_ - eta).cwiseAbs().maxCoeff();
}

WignerRotation WignerRotation::from_matrix(const Eigen::Matrix3d& r, double tol) {
    if (!r.allFinite() ||
        (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > tol ||
        std::abs(r.determinant() - 1.0) > tol) {
        throw InvalidArgument("matrix is not a proper rotation");
    }
    return WignerRotation(r);
}

SpinHalfOperator SpinHalfOperator::from_matrix(const Eigen::Matrix2cd& u, double tol) {
    if (!u.allFinite() ||
        (u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > tol ||
        std::abs(u.determinant() - 1.0) > tol) {
        throw InvalidArgument("matrix is not in SU(2)");
    }
    return SpinHalfOperator(u);
}

// ------------------------------------------------------------------ generators

LorentzTransform boost_along_axis(const Eigen::Vector3d& axis, double rapidity) {
    require_unit(axis, "boost_along_axis");
    if (!std::isfinite(rapidity)) throw InvalidArgument("boost_along_axis: non-finite rapidity");
    if (std::abs(rapidity) > kRapidityWarnLimit) {
        std::ostringstream msg;
        msg << "boost rapidity " << rapidity << " exceeds " << kRapidityWarnLimit
            << "; expect loss of precision";
        warn(msg.str());
    }
    const double ch = std::cosh(rapidity);
    const double sh = std::sinh(rapidity);
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m(0, 0) = ch;
    m.block<1, 3>(0, 1) = sh * axis.transpose();
    m.block<3, 1>(1, 0) = sh * axis;
    m.block<3, 3>(1, 1) += (ch - 1.0) * axis * axis.transpose();
    return LorentzTransform::from_matrix(m);
}

LorentzTransform rotation_about_axis(const Eigen::Vector3d& axis, double angle) {
    require_unit(axis, "rotation_about_axis");
    if (!std::isfinite(angle)) throw InvalidArgument("rotation_about_axis: non-finite angle");
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m.block<3, 3>(1, 1) = rodrigues(axis, angle);
    return LorentzTransform::from_matrix(m);
}

LorentzTransform compose(const LorentzTransform& a, const LorentzTransform& b) {
    return LorentzTransform::from_matrix(a.matrix() * b.matrix());
}

LorentzTransform inverse(const LorentzTransform& a) {
    const Eigen::Matrix4d& eta = minkowski_metric();
    return LorentzTransform::from_matrix(eta * a.matrix().transpose() * eta);
}

FourVector apply(const LorentzTransform& a, const FourVector& v) {
    return FourVector::from(a.matrix() * v.vec());
}

MomentumLabel apply(const LorentzTransform& a, const MomentumLabel& p) {
    const Eigen::Vector4d moved = a.matrix() * p.four_momentum().vec();
    return {p.mass(), moved.tail<3>()};
}

LorentzTransform standard_boost(const MomentumLabel& p) {
    const double m = p.mass();
    const double e = p.energy();
    const Eigen::Vector3d& k = p.momentum();
    if (std::asinh(k.norm() / m) > kRapidityWarnLimit) {
        warn("standard boost rapidity exceeds the precision warning limit");
    }
    Eigen::Matrix4d l = Eigen::Matrix4d::Identity();
    l(0, 0) = e / m;
    l.block<1, 3>(0, 1) = k.transpose() / m;
    l.block<3, 1>(1, 0) = k / m;
    l.block<3, 3>(1, 1) += k * k.transpose() / (m * (e + m));
    return LorentzTransform::from_matrix(l);
}

WignerRotation wigner_rotation(const LorentzTransform& lambda, const MomentumLabel& p) {
    const MomentumLabel moved = apply(lambda, p);
    const Eigen::Matrix4d& eta = minkowski_metric();
    // L(Λp) is symmetric, so its inverse is ηL(Λp)η.
    const Eigen::Matrix4d w =
        eta * standard_boost(moved).matrix() * eta * lambda.matrix() * standard_boost(p).matrix();

    double mixing = std::abs(w(0, 0) - 1.0);
    for (int i = 1; i < 4; ++i) mixing = std::max({mixing, std::abs(w(0, i)), std::abs(w(i, 0))});
    if (mixing > kTimeMixingLimit) {
        std::ostringstream msg;
        msg << "Wigner rotation mixes time and space by " << mixing;
        throw LittleGroupViolation(msg.str());
    }
    return WignerRotation::from_matrix(nearest_rotation(w.block<3, 3>(1, 1)));
}

AxisAngle axis_angle(const WignerRotation& r) {
    const Eigen::Vector4d q = rotation_quaternion(r.matrix());
    const Eigen::Vector3d v = q.tail<3>();
    const double angle = 2.0 * std::atan2(v.norm(), q(0));
    if (angle < kIdentityAngle) return {};
    return {v.normalized(), angle};
}

SpinHalfOperator su2_lift(const WignerRotation& r) {
    const Eigen::Vector4d q = rotation_quaternion(r.matrix());
    if (2.0 * std::atan2(q.tail<3>().norm(), q(0)) < kIdentityAngle) return {};
    using cd = std::complex<double>;
    const cd i(0.0, 1.0);
    const Eigen::Matrix2cd u = q(0) * Eigen::Matrix2cd::Identity() -
                               i * (q(1) * pauli(0) + q(2) * pauli(1) + q(3) * pauli(2));
    return SpinHalfOperator::from_matrix(u, 1e-10);
}

const Eigen::Matrix2cd& pauli(int k) {
    using cd = std::complex<double>;
    static const std::array<Eigen::Matrix2cd, 3> sigma = [] {
        std::array<Eigen::Matrix2cd, 3> s;
        s[0] << cd(0, 0), cd(1, 0), cd(1, 0), cd(0, 0);
        s[1] << cd(0, 0), cd(0, -1), cd(0, 1), cd(0, 0);
        s[2] << cd(1, 0), cd(0, 0), cd(0, 0), cd(-1, 0);
        return s;
    }();
    if (k < 0 || k > 2) throw InvalidArgument("pauli index must be 0, 1 or 2");
    return sigma[static_cast<std::size_t>(k)];
}

}  // namespace relqi
