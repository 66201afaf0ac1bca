#include <algorithm>
#include <map>

#include "docforge/pipeline.hpp"

namespace docforge {

namespace {

constexpr double kMaxCaptionDistance = 48.0;
constexpr double kMinHorizontalOverlap = 0.30;

bool horizontally_related(const BoundingBox& a, const BoundingBox& b) {
  const double overlap = interval_overlap(a.l, a.r, b.l, b.r);
  const double min_width = std::min(a.width(), b.width());
  return min_width > 0 && overlap >= kMinHorizontalOverlap * min_width;
}

}  // namespace

std::map<int, int> match_captions(const std::vector<LayoutCluster>& ordered) {
  struct Candidate {
    int caption_id = 0;
    int target_id = 0;
    bool caption_below = false;  // caption sits below its target
    double distance = 0.0;
  };

  std::vector<Candidate> choices;
  for (const LayoutCluster& caption : ordered) {
    if (caption.label != ItemLabel::Caption) continue;

    std::optional<Candidate> best;
    for (const LayoutCluster& target : ordered) {
      if (target.label != ItemLabel::Table && target.label != ItemLabel::Picture) continue;
      if (!horizontally_related(caption.bbox, target.bbox)) continue;

      // Caption below the target (searched first), else above.
      Candidate candidate;
      candidate.caption_id = caption.id;
      candidate.target_id = target.id;
      if (caption.bbox.t >= target.bbox.b) {
        candidate.caption_below = true;
        candidate.distance = caption.bbox.t - target.bbox.b;
      } else if (caption.bbox.b <= target.bbox.t) {
        candidate.caption_below = false;
        candidate.distance = target.bbox.t - caption.bbox.b;
      } else {
        continue;  // overlapping vertically; not an edge relation
      }
      if (candidate.distance > kMaxCaptionDistance) continue;

      const bool better =
          !best ||
          (candidate.caption_below && !best->caption_below) ||
          (candidate.caption_below == best->caption_below &&
           (candidate.distance < best->distance ||
            (candidate.distance == best->distance && candidate.target_id < best->target_id)));
      if (better) best = candidate;
    }
    if (best) choices.push_back(*best);
  }

  // A target takes at most one caption: nearest wins, ties to the smaller
  // caption id; losers stay standalone.
  std::sort(choices.begin(), choices.end(), [](const Candidate& a, const Candidate& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.caption_id < b.caption_id;
  });

  std::map<int, int> assignment;  // caption id -> target id
  std::map<int, bool> target_taken;
  for (const Candidate& candidate : choices) {
    if (target_taken[candidate.target_id]) continue;
    target_taken[candidate.target_id] = true;
    assignment[candidate.caption_id] = candidate.target_id;
  }
  return assignment;
}

}  // namespace docforge
