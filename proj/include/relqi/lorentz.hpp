#pragma once

#include <complex>

#include <Eigen/Dense>

namespace relqi {

/// Metric signature (+,-,-,-), natural units.
inline const Eigen::Matrix4d& minkowski_metric() {
    static const Eigen::Matrix4d eta = Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal();
    return eta;
}

/// Rapidities beyond this trigger a precision warning (not an error).
inline constexpr double kRapidityWarnLimit = 20.0;

struct FourVector {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Eigen::Vector4d vec() const { return {t, x, y, z}; }
    Eigen::Vector3d spatial() const { return {x, y, z}; }
    static FourVector from(const Eigen::Vector4d& v) { return {v(0), v(1), v(2), v(3)}; }

    /// p·p with the (+,-,-,-) metric.
    double minkowski_norm2() const { return t * t - x * x - y * y - z * z; }
};

/**
 * On-shell positive-energy momentum of a particle of mass m > 0. Only the mass
 * and 3-momentum are stored; the energy is always +sqrt(m² + |p|²).
 */
class MomentumLabel {
  public:
    MomentumLabel(double mass, const Eigen::Vector3d& p);
    MomentumLabel(double mass, double px, double py, double pz)
        : MomentumLabel(mass, Eigen::Vector3d(px, py, pz)) {}

    /// Particle of mass m at rest.
    static MomentumLabel at_rest(double mass) { return {mass, Eigen::Vector3d::Zero()}; }

    double mass() const { return mass_; }
    const Eigen::Vector3d& momentum() const { return p_; }
    double energy() const;
    FourVector four_momentum() const;

    /// Equality under the merge tolerance: masses within 1e-12 and
    /// |p1 - p2| <= 1e-9 * max(1, |p1|, |p2|).
    bool matches(const MomentumLabel& other) const;

  private:
    double mass_;
    Eigen::Vector3d p_;
};

/// Proper orthochronous Lorentz transform. Every instance satisfies the
/// metric, determinant and orthochronous checks at construction.
class LorentzTransform {
  public:
    /// Identity.
    LorentzTransform() : m_(Eigen::Matrix4d::Identity()) {}

    /// Validates `m`; throws NumericalDegradation if it is not a proper
    /// orthochronous Lorentz matrix. Residuals are measured relative to
    /// max(1, (Λ⁰⁰)²), so large boosts are judged by their own scale.
    static LorentzTransform from_matrix(const Eigen::Matrix4d& m, double tol = 1e-10);

    const Eigen::Matrix4d& matrix() const { return m_; }

    /// max |ΛᵀηΛ - η| elementwise (absolute).
    double metric_residual() const;

  private:
    explicit LorentzTransform(const Eigen::Matrix4d& m) : m_(m) {}
    Eigen::Matrix4d m_;
};

/// Spatial block of a little-group element for a massive particle.
class WignerRotation {
  public:
    WignerRotation() : r_(Eigen::Matrix3d::Identity()) {}
    /// Throws InvalidArgument if `r` is not in SO(3) within `tol`.
    static WignerRotation from_matrix(const Eigen::Matrix3d& r, double tol = 1e-12);
    const Eigen::Matrix3d& matrix() const { return r_; }

  private:
    explicit WignerRotation(const Eigen::Matrix3d& r) : r_(r) {}
    Eigen::Matrix3d r_;
};

/// Element of SU(2) acting on the (up, down) spin basis.
class SpinHalfOperator {
  public:
    SpinHalfOperator() : u_(Eigen::Matrix2cd::Identity()) {}
    static SpinHalfOperator from_matrix(const Eigen::Matrix2cd& u, double tol = 1e-12);
    const Eigen::Matrix2cd& matrix() const { return u_; }
    bool is_identity() const { return u_ == Eigen::Matrix2cd::Identity(); }

  private:
    explicit SpinHalfOperator(const Eigen::Matrix2cd& u) : u_(u) {}
    Eigen::Matrix2cd u_;
};

struct AxisAngle {
    Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
    double angle = 0.0;  ///< in [0, pi]
};

LorentzTransform boost_along_axis(const Eigen::Vector3d& axis, double rapidity);
LorentzTransform rotation_about_axis(const Eigen::Vector3d& axis, double angle);

LorentzTransform compose(const LorentzTransform& a, const LorentzTransform& b);  ///< a ∘ b
LorentzTransform inverse(const LorentzTransform& a);
FourVector apply(const LorentzTransform& a, const FourVector& v);
/// Λp kept on shell: the 3-momentum of Λp with the original mass.
MomentumLabel apply(const LorentzTransform& a, const MomentumLabel& p);

/// Pure (rotation-free) boost L(p) taking (m,0,0,0) to p.
LorentzTransform standard_boost(const MomentumLabel& p);

/// W(Λ,p) = L(Λp)⁻¹ Λ L(p), returned as its 3×3 spatial block.
WignerRotation wigner_rotation(const LorentzTransform& lambda, const MomentumLabel& p);

/// Axis-angle form with angle in [0, pi]. Angles below 1e-9 are reported as
/// exactly zero about ẑ. At angle pi the axis has its largest component positive.
AxisAngle axis_angle(const WignerRotation& r);

/// cos(θ/2) I - i sin(θ/2) n·σ for the axis-angle form of `r`.
SpinHalfOperator su2_lift(const WignerRotation& r);

/// Pauli matrices, index 0..2 for x, y, z.
const Eigen::Matrix2cd& pauli(int k);

}  // namespace relqi
