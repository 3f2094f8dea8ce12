#include "motslam/geometry.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace motslam {

Pose compose(const Pose& a, const Pose& b) {
  Pose out;
  out.rotation = a.rotation * b.rotation;
  out.translation = a.rotation * b.translation + a.translation;
  return out;
}

Pose inverse(const Pose& p) {
  Pose out;
  out.rotation = p.rotation.transpose();
  out.translation = -(p.rotation.transpose() * p.translation);
  return out;
}

bool is_valid_rotation(const Eigen::Matrix3d& r, double tol) {
  const Eigen::Matrix3d rtr = r.transpose() * r;
  return (rtr - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= tol &&
         std::abs(r.determinant() - 1.0) <= tol;
}

Eigen::Matrix3d skew(const Eigen::Vector3d& v) {
  Eigen::Matrix3d m;
  m << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return m;
}

Pose exp_se3(const Twist& xi) {
  const Eigen::Vector3d& w = xi.rotational;
  const double theta2 = w.squaredNorm();
  const double theta = std::sqrt(theta2);
  const Eigen::Matrix3d wx = skew(w);

  double a;  // sin(t)/t
  double b;  // (1-cos(t))/t^2
  double c;  // (t-sin(t))/t^3
  if (theta < 1e-6) {
    a = 1.0 - theta2 / 6.0;
    b = 0.5 - theta2 / 24.0;
    c = 1.0 / 6.0 - theta2 / 120.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / theta2;
    c = (theta - std::sin(theta)) / (theta2 * theta);
  }

  Pose out;
  out.rotation = Eigen::Matrix3d::Identity() + a * wx + b * wx * wx;
  const Eigen::Matrix3d j = Eigen::Matrix3d::Identity() + b * wx + c * wx * wx;
  out.translation = j * xi.translational;
  return out;
}

Twist log_se3(const Pose& p) {
  const Eigen::Matrix3d& r = p.rotation;
  const double cos_theta =
      std::clamp((r.trace() - 1.0) * 0.5, -1.0, 1.0);
  const double theta = std::acos(cos_theta);
  if (theta > M_PI - 1e-6) {
    throw std::domain_error("log_se3: rotation angle too close to pi");
  }

  const Eigen::Vector3d vex(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0),
                            r(1, 0) - r(0, 1));
  Twist xi;
  if (theta < 1e-6) {
    xi.rotational = 0.5 * (1.0 + theta * theta / 6.0) * vex;
  } else {
    xi.rotational = theta / (2.0 * std::sin(theta)) * vex;
  }

  const Eigen::Matrix3d wx = skew(xi.rotational);
  double c;  // 1/t^2 - (1+cos t)/(2 t sin t)
  if (theta < 1e-4) {
    c = 1.0 / 12.0 + theta * theta / 720.0;
  } else {
    c = 1.0 / (theta * theta) -
        (1.0 + std::cos(theta)) / (2.0 * theta * std::sin(theta));
  }
  const Eigen::Matrix3d j_inv =
      Eigen::Matrix3d::Identity() - 0.5 * wx + c * wx * wx;
  xi.translational = j_inv * p.translation;
  return xi;
}

double rotation_angle(const Eigen::Matrix3d& r) {
  return std::acos(std::clamp((r.trace() - 1.0) * 0.5, -1.0, 1.0));
}

Eigen::Vector2d project(const Intrinsics& k, const Eigen::Vector3d& p_cam) {
  if (p_cam.z() <= 0.0) {
    throw std::domain_error("project: point behind camera");
  }
  const double inv_z = 1.0 / p_cam.z();
  return {k.fx * p_cam.x() * inv_z + k.cx, k.fy * p_cam.y() * inv_z + k.cy};
}

Eigen::Vector3d backproject(const Intrinsics& k, const Eigen::Vector2d& z,
                            double depth) {
  if (depth <= 0.0) {
    throw std::domain_error("backproject: non-positive depth");
  }
  return {(z.x() - k.cx) * depth / k.fx, (z.y() - k.cy) * depth / k.fy, depth};
}

TriangulationResult triangulate(const Intrinsics& k, const Pose& cam_a,
                                const Pose& cam_b, const Eigen::Vector2d& za,
                                const Eigen::Vector2d& zb,
                                double min_parallax_rad) {
  TriangulationResult res;

  // Parallax between the two viewing rays in the world frame.
  const Eigen::Vector3d ray_a_cam((za.x() - k.cx) / k.fx,
                                  (za.y() - k.cy) / k.fy, 1.0);
  const Eigen::Vector3d ray_b_cam((zb.x() - k.cx) / k.fx,
                                  (zb.y() - k.cy) / k.fy, 1.0);
  const Eigen::Vector3d ray_a =
      (cam_a.rotation.transpose() * ray_a_cam).normalized();
  const Eigen::Vector3d ray_b =
      (cam_b.rotation.transpose() * ray_b_cam).normalized();
  const double cos_parallax = std::clamp(ray_a.dot(ray_b), -1.0, 1.0);
  if (std::acos(cos_parallax) < min_parallax_rad) {
    res.status = TriangulationResult::Status::low_parallax;
    return res;
  }

  // DLT on the two projection matrices P = K [R | t].
  Eigen::Matrix<double, 3, 4> pa;
  pa.leftCols<3>() = cam_a.rotation;
  pa.col(3) = cam_a.translation;
  Eigen::Matrix<double, 3, 4> pb;
  pb.leftCols<3>() = cam_b.rotation;
  pb.col(3) = cam_b.translation;

  Eigen::Matrix3d kmat;
  kmat << k.fx, 0.0, k.cx, 0.0, k.fy, k.cy, 0.0, 0.0, 1.0;
  pa = kmat * pa;
  pb = kmat * pb;

  Eigen::Matrix4d a;
  a.row(0) = za.x() * pa.row(2) - pa.row(0);
  a.row(1) = za.y() * pa.row(2) - pa.row(1);
  a.row(2) = zb.x() * pb.row(2) - pb.row(0);
  a.row(3) = zb.y() * pb.row(2) - pb.row(1);

  const Eigen::JacobiSVD<Eigen::Matrix4d> svd(a, Eigen::ComputeFullV);
  const Eigen::Vector4d h = svd.matrixV().col(3);
  if (std::abs(h(3)) < 1e-15) {
    res.status = TriangulationResult::Status::low_parallax;
    return res;
  }
  const Eigen::Vector3d point = h.head<3>() / h(3);

  if ((cam_a * point).z() <= 0.0 || (cam_b * point).z() <= 0.0) {
    res.status = TriangulationResult::Status::behind_camera;
    return res;
  }
  res.status = TriangulationResult::Status::ok;
  res.point = point;
  return res;
}

}  // namespace motslam
