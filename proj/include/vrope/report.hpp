#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vrope/attention_lab.hpp"

namespace vrope {

/// Fixed six-decimal rendering; negative zero prints as "0.000000".
std::string format_fixed6(double value);

// heatmap: "w,h,value", rows h-major
void write_heatmap_csv(std::ostream& out, const ScoreGrid& grid);
// decay: "delta,value"
void write_decay_csv(std::ostream& out, const DecayCurve& curve);
// boundary: "scheme,target,mean_score", target in {video, text}
void write_boundary_csv(std::ostream& out, const std::vector<BoundaryScores>& rows);

/// Grayscale cell grid, black at the minimum value and white at the maximum,
/// each cell labelled with its (w,h).
std::string heatmap_svg(const ScoreGrid& grid);

}  // namespace vrope
