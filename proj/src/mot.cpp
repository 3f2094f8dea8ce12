#include "motslam/mot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace motslam {

namespace {

Eigen::Matrix<double, 7, 7> transition() {
  Eigen::Matrix<double, 7, 7> f = Eigen::Matrix<double, 7, 7>::Identity();
  f(0, 4) = 1.0;
  f(1, 5) = 1.0;
  f(2, 6) = 1.0;
  return f;
}

Eigen::Matrix<double, 4, 7> measurement_model() {
  Eigen::Matrix<double, 4, 7> h = Eigen::Matrix<double, 4, 7>::Zero();
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;
  h(2, 2) = 1.0;
  h(3, 3) = 1.0;
  return h;
}

}  // namespace

Eigen::Vector4d box_to_state(const Box2D& b) {
  const double w = b.width();
  const double h = b.height();
  return {b.x1 + w * 0.5, b.y1 + h * 0.5, w * h, w / h};
}

Box2D state_to_box(const Eigen::Vector4d& uvsr) {
  const double w = std::sqrt(std::max(uvsr(2) * uvsr(3), 0.0));
  const double h = uvsr(3) > 0.0 ? w / uvsr(3) : 0.0;
  return {uvsr(0) - w * 0.5, uvsr(1) - h * 0.5, uvsr(0) + w * 0.5,
          uvsr(1) + h * 0.5};
}

TrackRecord make_track(int id, const Box2D& b, const KalmanNoise& noise) {
  TrackRecord t;
  t.id = id;
  t.kalman.mean.head<4>() = box_to_state(b);
  t.kalman.covariance = noise.initial.asDiagonal();
  return t;
}

Box2D kalman_predict(TrackRecord& t, const KalmanNoise& noise) {
  const auto f = transition();
  t.kalman.mean = f * t.kalman.mean;
  if (t.kalman.mean(2) <= 0.0) {
    t.kalman.mean(2) = 1.0;  // minimum area 1 px^2
    t.kalman.mean(6) = 0.0;
    t.predict_clamped = true;
  } else {
    t.predict_clamped = false;
  }
  t.kalman.covariance = f * t.kalman.covariance * f.transpose() +
                        Eigen::Matrix<double, 7, 7>(noise.process.asDiagonal());
  return state_to_box(t.kalman.mean.head<4>());
}

TrackRecord kalman_update(const TrackRecord& t, const Box2D& det,
                          const KalmanNoise& noise) {
  const auto h = measurement_model();
  const Eigen::Vector4d z = box_to_state(det);
  const Eigen::Vector4d innovation = z - h * t.kalman.mean;
  const Eigen::Matrix4d s = h * t.kalman.covariance * h.transpose() +
                            Eigen::Matrix4d(noise.measurement.asDiagonal());
  const Eigen::Matrix<double, 7, 4> gain =
      t.kalman.covariance * h.transpose() * s.inverse();

  TrackRecord out = t;
  out.kalman.mean += gain * innovation;
  const Eigen::Matrix<double, 7, 7> ikh =
      Eigen::Matrix<double, 7, 7>::Identity() - gain * h;
  // Joseph form keeps the covariance symmetric PSD.
  out.kalman.covariance =
      ikh * t.kalman.covariance * ikh.transpose() +
      gain * Eigen::Matrix4d(noise.measurement.asDiagonal()) *
          gain.transpose();
  out.age = 0;
  out.hits = t.hits + 1;
  return out;
}

double iou_2d(const Box2D& a, const Box2D& b) {
  const double ix = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double iy = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  return inter / (a.area() + b.area() - inter);
}

std::vector<std::pair<int, int>> hungarian(const Eigen::MatrixXd& cost) {
  const int m = static_cast<int>(cost.rows());
  const int n = static_cast<int>(cost.cols());
  if (m == 0 || n == 0) return {};
  if (!cost.allFinite()) {
    throw std::invalid_argument("hungarian: cost matrix must be finite");
  }

  // Pad to square with zero-cost dummy rows/columns; dummies contribute a
  // constant so the real assignment stays optimal.
  const int dim = std::max(m, n);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(dim, dim);
  c.topLeftCorner(m, n) = cost;

  // Shortest augmenting path with potentials (Jonker-Volgenant flavor),
  // 1-indexed internals.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(dim + 1, 0.0), v(dim + 1, 0.0);
  std::vector<int> match(dim + 1, 0);  // column -> row
  for (int i = 1; i <= dim; ++i) {
    std::vector<double> minv(dim + 1, inf);
    std::vector<int> way(dim + 1, 0);
    std::vector<bool> used(dim + 1, false);
    int j0 = 0;
    match[0] = i;
    while (match[j0] != 0) {
      used[j0] = true;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= dim; ++j) {
        if (used[j]) continue;
        const double cur = c(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= dim; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    }
    while (j0 != 0) {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    }
  }

  std::vector<std::pair<int, int>> out;
  for (int j = 1; j <= dim; ++j) {
    const int i = match[j] - 1;
    if (i < m && j - 1 < n) {
      out.emplace_back(i, j - 1);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

const TrackRecord* MotTracker::find(int id) const {
  for (const auto& t : tracks_) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

MotStepResult MotTracker::step(const std::vector<Box2D>& detections) {
  MotStepResult res;

  std::vector<Box2D> predicted(tracks_.size());
  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    predicted[i] = kalman_predict(tracks_[i], params_.noise);
  }

  std::vector<bool> track_matched(tracks_.size(), false);
  std::vector<bool> det_matched(detections.size(), false);

  if (!tracks_.empty() && !detections.empty()) {
    Eigen::MatrixXd cost(tracks_.size(), detections.size());
    for (std::size_t i = 0; i < tracks_.size(); ++i) {
      for (std::size_t j = 0; j < detections.size(); ++j) {
        cost(i, j) = 1.0 - iou_2d(predicted[i], detections[j]);
      }
    }
    for (const auto& [ti, dj] : hungarian(cost)) {
      if (iou_2d(predicted[ti], detections[dj]) < params_.iou_gate) {
        continue;  // assigned but implausible; treat both as unmatched
      }
      tracks_[ti] = kalman_update(tracks_[ti], detections[dj], params_.noise);
      track_matched[ti] = true;
      det_matched[dj] = true;
      res.matches.emplace_back(tracks_[ti].id, static_cast<int>(dj));
    }
  }

  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    if (!track_matched[i]) {
      tracks_[i].age += 1;
      res.unmatched_tracks.push_back(tracks_[i].id);
    }
  }

  for (std::size_t j = 0; j < detections.size(); ++j) {
    if (!det_matched[j]) {
      tracks_.push_back(make_track(next_id_, detections[j], params_.noise));
      res.new_tracks.emplace_back(next_id_, static_cast<int>(j));
      ++next_id_;
    }
  }

  std::vector<TrackRecord> alive;
  alive.reserve(tracks_.size());
  for (auto& t : tracks_) {
    if (t.age > params_.max_age) {
      res.erased.push_back(t.id);
    } else {
      alive.push_back(std::move(t));
    }
  }
  tracks_ = std::move(alive);
  return res;
}

}  // namespace motslam
