#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <optional>

namespace motslam {

/// Rigid transform in SE(3). Rotation is kept as an orthonormal matrix;
/// twist increments are only used as optimizer updates (exp(dx) * T).
struct Pose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static Pose identity() { return {}; }

  Eigen::Vector3d operator*(const Eigen::Vector3d& p) const {
    return rotation * p + translation;
  }
};

struct Twist {
  Eigen::Vector3d rotational = Eigen::Vector3d::Zero();     // radians
  Eigen::Vector3d translational = Eigen::Vector3d::Zero();  // meters
};

struct Intrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
};

Pose compose(const Pose& a, const Pose& b);
inline Pose operator*(const Pose& a, const Pose& b) { return compose(a, b); }
Pose inverse(const Pose& p);

/// True when R is orthonormal with det +1 within tol.
bool is_valid_rotation(const Eigen::Matrix3d& r, double tol = 1e-9);

Eigen::Matrix3d skew(const Eigen::Vector3d& v);

/// Rodrigues exponential. Closed form, stable for small angles.
Pose exp_se3(const Twist& xi);

/// Inverse of exp_se3. Throws std::domain_error when the rotation angle is
/// within 1e-6 of pi (axis is not recoverable there).
Twist log_se3(const Pose& p);

/// Rotation angle of R in [0, pi].
double rotation_angle(const Eigen::Matrix3d& r);

/// Pinhole projection of a camera-frame point. Throws std::domain_error for
/// non-positive depth; callers on hot paths check p_cam.z() themselves.
Eigen::Vector2d project(const Intrinsics& k, const Eigen::Vector3d& p_cam);

/// Inverse pinhole: pixel + depth -> camera-frame point. depth must be > 0.
Eigen::Vector3d backproject(const Intrinsics& k, const Eigen::Vector2d& z,
                            double depth);

struct TriangulationResult {
  enum class Status { ok, low_parallax, behind_camera };
  Status status = Status::low_parallax;
  Eigen::Vector3d point = Eigen::Vector3d::Zero();

  bool ok() const { return status == Status::ok; }
};

/// Two-view linear (DLT) triangulation. Poses are world-to-camera (T_cw).
/// Refuses rays closer than min_parallax_rad and points behind either camera.
TriangulationResult triangulate(const Intrinsics& k, const Pose& cam_a,
                                const Pose& cam_b, const Eigen::Vector2d& za,
                                const Eigen::Vector2d& zb,
                                double min_parallax_rad = 1.0 * M_PI / 180.0);

}  // namespace motslam
