#include "vrope/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace vrope {

std::string format_fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

void write_heatmap_csv(std::ostream& out, const ScoreGrid& grid) {
  out << "w,h,value\n";
  for (int h = 0; h < grid.height; ++h) {
    for (int w = 0; w < grid.width; ++w) out << w << ',' << h << ',' << format_fixed6(grid.at(w, h)) << '\n';
  }
}

void write_decay_csv(std::ostream& out, const DecayCurve& curve) {
  out << "delta,value\n";
  for (const DecayPoint& p : curve) out << p.delta << ',' << format_fixed6(p.value) << '\n';
}

void write_boundary_csv(std::ostream& out, const std::vector<BoundaryScores>& rows) {
  out << "scheme,target,mean_score\n";
  for (const BoundaryScores& r : rows) {
    out << scheme_name(r.scheme) << ",video," << format_fixed6(r.to_video) << '\n';
    if (r.to_text) out << scheme_name(r.scheme) << ",text," << format_fixed6(*r.to_text) << '\n';
  }
}

std::string heatmap_svg(const ScoreGrid& grid) {
  constexpr int kCell = 40;
  constexpr int kMargin = 10;
  const int width = grid.width * kCell + 2 * kMargin;
  const int height = grid.height * kCell + 2 * kMargin;

  double lo = 0.0;
  double hi = 0.0;
  if (!grid.values.empty()) {
    const auto [mn, mx] = std::minmax_element(grid.values.begin(), grid.values.end());
    lo = *mn;
    hi = *mx;
  }
  const double span = hi - lo;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<title>" << scheme_name(grid.scheme) << " frame " << grid.frame << " min " << format_fixed6(lo) << " max "
     << format_fixed6(hi) << "</title>\n";
  for (int h = 0; h < grid.height; ++h) {
    for (int w = 0; w < grid.width; ++w) {
      const double v = grid.at(w, h);
      const double level = span > 0.0 ? (v - lo) / span : 1.0;
      const int gray = static_cast<int>(std::lround(255.0 * level));
      const int x = kMargin + w * kCell;
      const int y = kMargin + h * kCell;
      os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCell << "\" height=\"" << kCell
         << "\" fill=\"rgb(" << gray << ',' << gray << ',' << gray << ")\" stroke=\"#888\" stroke-width=\"0.5\">"
         << "<title>" << format_fixed6(v) << "</title></rect>\n";
      const char* ink = gray > 127 ? "#000" : "#fff";
      os << "<text x=\"" << x + kCell / 2 << "\" y=\"" << y + kCell / 2 + 4
         << "\" font-family=\"monospace\" font-size=\"9\" text-anchor=\"middle\" fill=\"" << ink << "\">" << w << ','
         << h << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace vrope
