#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "vrope/layout.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<const char*> args) {
  args.insert(args.begin(), "vrope");
  std::ostringstream out, err;
  const int code = vrope::cli::run(static_cast<int>(args.size()), args.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::filesystem::path temp_path(const char* name) { return std::filesystem::temp_directory_path() / name; }

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("positions writes the layout csv") {
    const auto r = run({"positions", "--scheme", "vrope", "--layout", "text:2,video:2x2x1,text:1"});
    CHECK(r.code == 0);
    CHECK(count_lines(r.out) == 8);
    CHECK(r.out.ends_with("6,text,2,,,,5,5,5,5\n"));

    const auto path = temp_path("vrope_cli_positions.csv");
    const std::string p = path.string();
    CHECK(run({"positions", "--scheme", "vrope", "--layout", "text:2,video:2x2x1,text:1", "--out", p.c_str()}).code == 0);
    CHECK(slurp(path) == r.out);
    CHECK(vrope::parse_layout_csv(slurp(path), vrope::SchemeId::vrope) ==
          vrope::build_layout(vrope::parse_layout_spec("text:2,video:2x2x1,text:1"),
                              vrope::SchemeConfig(vrope::SchemeId::vrope, 64)));
  }

  TEST_CASE("positions respects a rope3d partition") {
    const auto r = run({"positions", "--scheme", "rope3d", "--layout", "video:2x2x1", "--d", "16", "--partition", "2:3:3"});
    CHECK(r.code == 0);
    CHECK(run({"positions", "--scheme", "rope3d", "--layout", "video:2x2x1", "--d", "16", "--partition", "2:3"}).code == 2);
    CHECK(run({"positions", "--scheme", "rope3d", "--layout", "video:2x2x1", "--partition", "a:b:c"}).code == 2);
  }

  TEST_CASE("decay output") {
    const auto r = run({"decay", "--d", "2", "--base", "10000", "--max-delta", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "delta,value\n0,1.000000\n1,0.540302\n2,-0.416147\n3,-0.989992\n");
  }

  TEST_CASE("heatmap closed form, svg and monte carlo") {
    const auto r = run({"heatmap", "--scheme", "vrope", "--video", "3x3x1", "--frame", "0", "--query-gap", "1", "--d", "8"});
    CHECK(r.code == 0);
    CHECK(count_lines(r.out) == 10);
    CHECK(r.out.find("\n1,1,0.491222\n") != std::string::npos);
    CHECK(r.out.find("\n0,0,0.809736\n") != std::string::npos);

    const auto svg = temp_path("vrope_cli_heatmap.svg");
    const std::string s = svg.string();
    CHECK(run({"heatmap", "--scheme", "rope3d", "--video", "4x4x2", "--frame", "1", "--svg", s.c_str()}).code == 0);
    CHECK(slurp(svg).find("<svg") == 0);

    std::vector<const char*> mc{"heatmap", "--scheme", "rope3d", "--video", "4x4x2", "--mc", "--seed", "3", "--trials", "500"};
    const auto a = run(mc);
    mc.insert(mc.end(), {"--threads", "4"});
    const auto b = run(mc);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    CHECK(run({"heatmap", "--scheme", "vrope", "--video", "3x3x1", "--frame", "1"}).code == 2);
    CHECK(run({"heatmap", "--scheme", "vrope", "--video", "3x3"}).code == 2);
    CHECK(run({"heatmap", "--scheme", "vrope", "--video", "3x3x1", "--query-gap", "0"}).code == 2);
  }

  TEST_CASE("boundary output") {
    const auto all = run({"boundary", "--scheme", "all", "--video", "4x4x4"});
    CHECK(all.code == 0);
    CHECK(all.out.starts_with("scheme,target,mean_score\n"));
    CHECK(count_lines(all.out) == 13);
    const auto one = run({"boundary", "--scheme", "vrope", "--video", "1x1x1", "--layout", "video:1x1x1,text:2", "--query-offset", "1"});
    CHECK(one.code == 0);
    // C(2) and C(1) at d=64 from the numpy oracle
    CHECK(one.out == "scheme,target,mean_score\nvrope,video,0.884496\nvrope,text,0.966151\n");
  }

  TEST_CASE("errors map to exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"positions", "--scheme", "vrope"}).code == 2);
    const auto bad = run({"positions", "--scheme", "vrope", "--layout", "video:0x2x2"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("offset 6") != std::string::npos);
    CHECK(run({"positions", "--scheme", "vrope", "--layout", "text:1", "--d", "12"}).code == 2);
    CHECK(run({"positions", "--scheme", "vrope", "--layout", "text:1", "--out", "/nonexistent-dir/x.csv"}).code == 3);
    CHECK(run({"--help"}).code == 0);
  }
}
