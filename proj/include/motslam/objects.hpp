#pragma once

#include "motslam/geometry.hpp"
#include "motslam/mot.hpp"

#include <map>
#include <optional>
#include <vector>

namespace motslam {

/// Yaw-oriented 3D box. `pose` maps object frame to world (T_wi); center is
/// pose applied to the origin.
struct OrientedBox3D {
  Pose pose;
  Eigen::Vector3d dimensions = Eigen::Vector3d::Zero();  // x, y, z extents

  Eigen::Vector3d center() const { return pose.translation; }
};

struct Detection {
  Box2D box2d;
  double confidence = 0.0;
  std::optional<Box2D> mask;  // projected instance silhouette, inside box2d
  std::optional<OrientedBox3D> box3d;
};

/// One tracked object. Per-frame 3D poses come from merged detections and
/// are overwritten by bundle adjustment for keyframes.
struct ObjectState {
  int id = 0;  // MOT track id
  Eigen::Vector3d dimensions = Eigen::Vector3d::Zero();
  std::map<int, Pose> pose_per_frame;  // frame id -> T_wi
  bool has_3d = false;
};

std::vector<Detection> filter_detections(const std::vector<Detection>& dets,
                                         double conf_min);

/// Greedy 2D/3D merge: each 2D detection takes the highest-IoU unclaimed 3D
/// detection with IoU > iou_min. 3D detections carry their projected 2D box.
std::vector<Detection> merge_2d_3d(const std::vector<Detection>& dets2d,
                                   const std::vector<Detection>& dets3d,
                                   double iou_min);

struct MaskRegion {
  int object_id = 0;
  Box2D region;
};

/// Labels each observation with the id of the mask containing it (closed
/// regions, boundary included); 0 when in no mask. Overlaps resolve to the
/// smallest-area mask.
std::vector<int> label_features(const std::vector<Eigen::Vector2d>& pixels,
                                const std::vector<MaskRegion>& masks);

/// Creates the object state from a merged detection. The detection's box3d
/// must already be lifted to the world frame. Returns nullopt when no 3D
/// detection is available (object stays 2D-only until one arrives).
std::optional<ObjectState> init_object(const Detection& det, int track_id,
                                       int frame_id);

}  // namespace motslam
