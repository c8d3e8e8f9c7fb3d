#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vrope/attention_lab.hpp"
#include "vrope/error.hpp"
#include "vrope/layout.hpp"
#include "vrope/report.hpp"
#include "vrope/selfcheck.hpp"

namespace vrope::cli {
namespace {

struct Options {
  std::string scheme;
  std::string layout;
  std::string video;
  std::string out;
  std::string svg;
  std::string partition;
  int d = 64;
  double base = 10000.0;
  int frame = 0;
  int query_gap = 1;
  int query_offset = 0;
  int max_delta = 256;
  bool mc = false;
  bool softmax = false;
  std::uint64_t seed = 0;
  int trials = 10000;
  int threads = 0;
};

VideoGrid parse_video(const std::string& text) {
  try {
    const auto segs = parse_layout_spec("video:" + text);
    if (segs.size() != 1) throw ConfigError("expected a single WxHxT grid");
    return std::get<VideoSegment>(segs[0]).grid;
  } catch (const ParseError&) {
    throw ConfigError("--video expects WxHxT with positive integers, got '" + text + "'");
  }
}

std::optional<std::vector<int>> parse_partition(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::vector<int> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      sizes.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--partition expects colon-separated pair counts, got '" + text + "'");
    }
  }
  return sizes;
}

SchemeConfig make_scheme(SchemeId id, const Options& o) {
  return SchemeConfig(id, o.d, o.base, parse_partition(o.partition));
}

void emit(const Options& o, const std::string& content, std::ostream& out) {
  if (o.out.empty()) {
    out << content;
    return;
  }
  std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + o.out + "' for writing");
  file << content;
  file.close();
  if (!file) throw IoError("failed writing '" + o.out + "'");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << content;
  file.close();
  if (!file) throw IoError("failed writing '" + path + "'");
}

int cmd_positions(const Options& o, std::ostream& out) {
  const SchemeConfig scheme = make_scheme(parse_scheme(o.scheme), o);
  emit(o, layout_csv(build_layout(parse_layout_spec(o.layout), scheme)), out);
  return kOk;
}

int cmd_heatmap(const Options& o, std::ostream& out) {
  const SchemeConfig scheme = make_scheme(parse_scheme(o.scheme), o);
  const VideoGrid grid = parse_video(o.video);
  if (o.query_gap < 1) throw InvalidParameter("--query-gap must be >= 1");
  // The query is the G-th text token after a video that starts at position 0.
  const std::vector<Segment> segs{VideoSegment{grid}, TextSegment{o.query_gap}};
  const PositionVector query = build_layout(segs, scheme).tokens.back().position;

  ScoreGrid map;
  if (o.mc) {
    const TrialConfig cfg{o.seed, o.trials, o.d, o.base, o.threads};
    map = monte_carlo_heatmap(scheme, grid, o.frame, query, cfg);
  } else {
    map = heatmap(scheme, grid, o.frame, query);
  }
  if (o.softmax) map = softmax_over_frame(map);

  std::ostringstream csv;
  write_heatmap_csv(csv, map);
  emit(o, csv.str(), out);
  if (!o.svg.empty()) write_file(o.svg, heatmap_svg(map));
  return kOk;
}

int cmd_decay(const Options& o, std::ostream& out) {
  std::ostringstream csv;
  write_decay_csv(csv, decay_curve(FrequencySchedule(o.base, o.d), o.max_delta));
  emit(o, csv.str(), out);
  return kOk;
}

int cmd_boundary(const Options& o, std::ostream& out) {
  const VideoGrid grid = parse_video(o.video);
  std::vector<SchemeId> ids;
  if (o.scheme == "all") {
    ids.assign(kAllSchemes.begin(), kAllSchemes.end());
  } else {
    ids.push_back(parse_scheme(o.scheme));
  }
  const std::vector<Segment> segs =
      o.layout.empty() ? std::vector<Segment>{TextSegment{1}, VideoSegment{grid}, TextSegment{1}}
                       : parse_layout_spec(o.layout);

  std::vector<BoundaryScores> rows;
  for (SchemeId id : ids) {
    const SchemeConfig scheme = make_scheme(id, o);
    if (auto scores = boundary_score_table(build_layout(segs, scheme), scheme, o.query_offset)) {
      rows.push_back(*scores);
    }
  }
  std::ostringstream csv;
  write_boundary_csv(csv, rows);
  emit(o, csv.str(), out);
  return kOk;
}

int cmd_selfcheck(std::ostream& out) {
  const auto results = run_selfcheck();
  int failed = 0;
  for (const auto& r : results) {
    if (r.passed) {
      out << "ok    " << r.name << '\n';
    } else {
      out << "FAIL  " << r.name << ": " << r.detail << '\n';
      ++failed;
    }
  }
  out << (results.size() - static_cast<std::size_t>(failed)) << '/' << results.size() << " checks passed\n";
  return failed == 0 ? kOk : kCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Rotary positional-encoding schemes for video-text sequences, with attention diagnostics"};
  app.require_subcommand(1);

  auto add_schedule = [&](CLI::App* sub) {
    sub->add_option("--d", o.d, "Head dimension (even)")->capture_default_str();
    sub->add_option("--base", o.base, "Frequency base")->capture_default_str();
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Output file (stdout if omitted)"); };

  auto* positions = app.add_subcommand("positions", "Write per-token positions of a layout as CSV");
  positions->add_option("--scheme", o.scheme, "rope1d|rope2d|rope3d|rope_share|rope_compact|vrope")->required();
  positions->add_option("--layout", o.layout, "e.g. text:2,video:2x2x1,text:1")->required();
  positions->add_option("--partition", o.partition, "Channel-pair counts per coordinate, e.g. 12:10:10 (t:h:w)");
  add_schedule(positions);
  add_out(positions);

  auto* heat = app.add_subcommand("heatmap", "Expected self-score from a post-video text query to one frame");
  heat->add_option("--scheme", o.scheme, "Encoding scheme")->required();
  heat->add_option("--video", o.video, "WxHxT")->required();
  heat->add_option("--frame", o.frame, "Frame index (0-based)")->capture_default_str();
  heat->add_option("--query-gap", o.query_gap, "Query is the G-th text token after the video")->capture_default_str();
  heat->add_option("--partition", o.partition, "Channel-pair counts per coordinate");
  heat->add_option("--svg", o.svg, "Also write an SVG rendering");
  heat->add_flag("--mc", o.mc, "Monte-Carlo estimate instead of the closed form");
  heat->add_option("--seed", o.seed, "Monte-Carlo seed")->capture_default_str();
  heat->add_option("--trials", o.trials, "Monte-Carlo trials")->capture_default_str();
  heat->add_option("--threads", o.threads, "Monte-Carlo worker threads (0 = auto)")->capture_default_str();
  heat->add_flag("--softmax", o.softmax, "Softmax over the frame before writing");
  add_schedule(heat);
  add_out(heat);

  auto* decay = app.add_subcommand("decay", "Closed-form expected self-score against relative distance");
  decay->add_option("--max-delta", o.max_delta, "Largest distance")->capture_default_str();
  add_schedule(decay);
  add_out(decay);

  auto* boundary = app.add_subcommand("boundary", "Mean scores from the first post-video text token");
  boundary->add_option("--scheme", o.scheme, "Encoding scheme or 'all'")->required();
  boundary->add_option("--video", o.video, "WxHxT")->required();
  boundary->add_option("--layout", o.layout, "Override the default text:1,video:WxHxT,text:1 layout");
  boundary->add_option("--query-offset", o.query_offset, "Which post-video text token is the query")
      ->capture_default_str();
  boundary->add_option("--partition", o.partition, "Channel-pair counts per coordinate");
  add_schedule(boundary);
  add_out(boundary);

  auto* selfcheck = app.add_subcommand("selfcheck", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*positions) return cmd_positions(o, out);
    if (*heat) return cmd_heatmap(o, out);
    if (*decay) return cmd_decay(o, out);
    if (*boundary) return cmd_boundary(o, out);
    if (*selfcheck) return cmd_selfcheck(out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace vrope::cli
