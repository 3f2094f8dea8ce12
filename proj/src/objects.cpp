#include "motslam/objects.hpp"

#include <algorithm>
#include <limits>

namespace motslam {

std::vector<Detection> filter_detections(const std::vector<Detection>& dets,
                                         double conf_min) {
  std::vector<Detection> out;
  out.reserve(dets.size());
  for (const auto& d : dets) {
    if (d.confidence >= conf_min) out.push_back(d);
  }
  return out;
}

std::vector<Detection> merge_2d_3d(const std::vector<Detection>& dets2d,
                                   const std::vector<Detection>& dets3d,
                                   double iou_min) {
  // Candidate pairs sorted by IoU descending, then greedy one-to-one.
  struct Pair {
    double iou;
    int i2d;
    int i3d;
  };
  std::vector<Pair> pairs;
  for (int i = 0; i < static_cast<int>(dets2d.size()); ++i) {
    for (int j = 0; j < static_cast<int>(dets3d.size()); ++j) {
      const double iou = iou_2d(dets2d[i].box2d, dets3d[j].box2d);
      if (iou > iou_min) pairs.push_back({iou, i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    if (a.i2d != b.i2d) return a.i2d < b.i2d;
    return a.i3d < b.i3d;
  });

  std::vector<Detection> out = dets2d;
  std::vector<bool> used2d(dets2d.size(), false);
  std::vector<bool> used3d(dets3d.size(), false);
  for (const auto& p : pairs) {
    if (used2d[p.i2d] || used3d[p.i3d]) continue;
    out[p.i2d].box3d = dets3d[p.i3d].box3d;
    used2d[p.i2d] = true;
    used3d[p.i3d] = true;
  }
  return out;
}

std::vector<int> label_features(const std::vector<Eigen::Vector2d>& pixels,
                                const std::vector<MaskRegion>& masks) {
  std::vector<int> labels(pixels.size(), 0);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const auto& z = pixels[i];
    double best_area = std::numeric_limits<double>::infinity();
    for (const auto& m : masks) {
      const bool inside = z.x() >= m.region.x1 && z.x() <= m.region.x2 &&
                          z.y() >= m.region.y1 && z.y() <= m.region.y2;
      if (inside && m.region.area() < best_area) {
        best_area = m.region.area();
        labels[i] = m.object_id;
      }
    }
  }
  return labels;
}

std::optional<ObjectState> init_object(const Detection& det, int track_id,
                                       int frame_id) {
  if (!det.box3d.has_value()) return std::nullopt;
  ObjectState obj;
  obj.id = track_id;
  obj.dimensions = det.box3d->dimensions;
  obj.pose_per_frame[frame_id] = det.box3d->pose;
  obj.has_3d = true;
  return obj;
}

}  // namespace motslam
