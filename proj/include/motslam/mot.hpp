#pragma once

#include <Eigen/Core>

#include <utility>
#include <vector>

namespace motslam {

struct Box2D {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  double area() const { return width() * height(); }
  bool valid() const { return x2 > x1 && y2 > y1; }
};

/// SORT-style box filter state: [u, v, s, r, du, dv, ds] with u,v the box
/// center, s the area and r the aspect ratio (constant over time).
struct KalmanBoxState {
  Eigen::Matrix<double, 7, 1> mean = Eigen::Matrix<double, 7, 1>::Zero();
  Eigen::Matrix<double, 7, 7> covariance =
      Eigen::Matrix<double, 7, 7>::Zero();
};

struct KalmanNoise {
  Eigen::Vector4d measurement{1.0, 1.0, 10.0, 10.0};
  Eigen::Matrix<double, 7, 1> process{
      (Eigen::Matrix<double, 7, 1>() << 1.0, 1.0, 1.0, 1.0, 0.01, 0.01, 1e-4)
          .finished()};
  Eigen::Matrix<double, 7, 1> initial{
      (Eigen::Matrix<double, 7, 1>() << 10.0, 10.0, 10.0, 10.0, 1000.0,
       1000.0, 10000.0)
          .finished()};
};

struct TrackRecord {
  int id = 0;
  KalmanBoxState kalman;
  int age = 0;   // consecutive unmatched frames
  int hits = 0;  // total matched frames
  bool predict_clamped = false;
};

Eigen::Vector4d box_to_state(const Box2D& b);
Box2D state_to_box(const Eigen::Vector4d& uvsr);

TrackRecord make_track(int id, const Box2D& b, const KalmanNoise& noise);

/// Constant-velocity prediction on (u, v, s); r has no dynamics. Returns the
/// predicted box; s <= 0 is clamped to 1 px^2 and flagged on the track.
Box2D kalman_predict(TrackRecord& t, const KalmanNoise& noise);

/// Standard Kalman correction with measurement [u, v, s, r]; resets age and
/// increments hits.
TrackRecord kalman_update(const TrackRecord& t, const Box2D& det,
                          const KalmanNoise& noise);

double iou_2d(const Box2D& a, const Box2D& b);

/// Optimal assignment of min(m, n) pairs minimizing total cost.
/// Deterministic: rows are processed in ascending index order.
std::vector<std::pair<int, int>> hungarian(const Eigen::MatrixXd& cost);

struct MotParams {
  double iou_gate = 0.3;  // assigned pairs below this IoU are rejected
  int max_age = 3;        // delta: erased once age exceeds this
  KalmanNoise noise;
};

struct MotStepResult {
  std::vector<std::pair<int, int>> matches;     // (track id, detection index)
  std::vector<int> unmatched_tracks;            // track ids aged this step
  std::vector<std::pair<int, int>> new_tracks;  // (id, detection index)
  std::vector<int> erased;                      // ids erased this step
};

/// 2D multi-object tracker. Single writer; ids are monotone and never reused.
class MotTracker {
 public:
  explicit MotTracker(MotParams params = {}) : params_(std::move(params)) {}

  MotStepResult step(const std::vector<Box2D>& detections);

  const std::vector<TrackRecord>& tracks() const { return tracks_; }
  const TrackRecord* find(int id) const;

 private:
  MotParams params_;
  std::vector<TrackRecord> tracks_;
  int next_id_ = 1;  // 0 is reserved for the background label
};

}  // namespace motslam
