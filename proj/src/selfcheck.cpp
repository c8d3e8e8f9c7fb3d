#include "vrope/selfcheck.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "vrope/attention_lab.hpp"
#include "vrope/kernels.hpp"
#include "vrope/layout.hpp"
#include "vrope/rotary.hpp"
#include "vrope/schemes.hpp"

namespace vrope {
namespace {

// A check returns an empty string on success, otherwise a short reason.
using Check = std::function<std::string()>;

std::vector<double> normal_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> dist;
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

std::string fmt(const char* what, double got) {
  std::ostringstream os;
  os << what << " (" << got << ")";
  return os.str();
}

template <class F>
void for_each_grid(int max_extent, F&& f) {
  for (int W = 1; W <= max_extent; ++W)
    for (int H = 1; H <= max_extent; ++H)
      for (int T = 1; T <= max_extent; ++T) f(VideoGrid{W, H, T});
}

std::string text_compatibility() {
  std::mt19937_64 rng(0x7e57u);
  std::uniform_int_distribution<Position> pos(0, 100000);
  for (int d : {8, 64}) {
    const SchemeConfig flat(SchemeId::rope1d, d);
    const SchemeConfig r3(SchemeId::rope3d, d);
    const SchemeConfig vr(SchemeId::vrope, d);
    for (int i = 0; i < 500; ++i) {
      const auto x = normal_vector(rng, static_cast<std::size_t>(d));
      const Position m = pos(rng);
      const auto ref = rotate(x, pair_angles(flat, text_position(m, flat)));
      for (const SchemeConfig* s : {&r3, &vr}) {
        const auto got = rotate(x, pair_angles(*s, text_position(m, *s)));
        for (std::size_t k = 0; k < ref.size(); ++k) {
          if (std::abs(got[k] - ref[k]) > 1e-9) return fmt("rotation differs from rope1d", got[k] - ref[k]);
        }
      }
    }
  }
  return {};
}

std::string oracle_equivalence() {
  std::mt19937_64 rng(0x0dacu);
  std::uniform_real_distribution<double> pos(-500.0, 500.0);
  for (int d : {2, 8, 64}) {
    const FrequencySchedule sched(10000.0, d);
    const auto pairs = static_cast<std::size_t>(sched.pairs());
    for (int i = 0; i < 400; ++i) {
      const auto q = normal_vector(rng, static_cast<std::size_t>(d));
      const auto k = normal_vector(rng, static_cast<std::size_t>(d));
      std::vector<double> qp(pairs), kp(pairs), qa(pairs), ka(pairs);
      for (std::size_t j = 0; j < pairs; ++j) {
        qp[j] = std::round(pos(rng));
        kp[j] = std::round(pos(rng));
        qa[j] = qp[j] * sched.theta()[j];
        ka[j] = kp[j] * sched.theta()[j];
      }
      const double a = attention_score(q, qa, k, ka);
      const double b = attention_score_oracle(q, qp, k, kp, sched);
      if (std::abs(a - b) > 1e-10) return fmt("kernel and complex oracle disagree", a - b);
    }
  }
  return {};
}

std::string norm_and_shift() {
  std::mt19937_64 rng(0x5417u);
  std::uniform_real_distribution<double> angle(-100.0, 100.0);
  std::uniform_int_distribution<int> shift(-1000, 1000);
  const int d = 64;
  const FrequencySchedule sched(10000.0, d);
  for (int i = 0; i < 1000; ++i) {
    const auto x = normal_vector(rng, d);
    std::vector<double> a(d / 2);
    for (double& v : a) v = angle(rng);
    const auto y = rotate(x, a);
    const double nx = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    const double ny = std::sqrt(std::inner_product(y.begin(), y.end(), y.begin(), 0.0));
    if (std::abs(nx - ny) > 1e-9) return fmt("norm changed", nx - ny);

    const auto q = normal_vector(rng, d);
    const int m = shift(rng), n = shift(rng), c = shift(rng);
    std::vector<double> qa(d / 2), ka(d / 2), qs(d / 2), ks(d / 2);
    for (int j = 0; j < d / 2; ++j) {
      qa[j] = m * sched[j];
      ka[j] = n * sched[j];
      qs[j] = (m + c) * sched[j];
      ks[j] = (n + c) * sched[j];
    }
    const double s0 = attention_score(q, qa, x, ka);
    const double s1 = attention_score(q, qs, x, ks);
    if (std::abs(s0 - s1) > 1e-9) return fmt("score not shift invariant", s0 - s1);
  }
  return {};
}

std::string simd_equivalence() {
  std::mt19937_64 rng(0x51dau);
  const auto& ref = simd::scalar_kernels();
  for (simd::Isa isa : {simd::Isa::avx2}) {
    if (!simd::isa_supported(isa)) continue;
    const auto& k = simd::kernels_for(isa);
    for (std::size_t pairs : {1u, 3u, 4u, 7u, 32u, 33u}) {
      const auto x = normal_vector(rng, 2 * pairs);
      const auto q = normal_vector(rng, 2 * pairs);
      const auto a = normal_vector(rng, pairs);
      std::vector<double> c(pairs), s(pairs), o1(2 * pairs), o2(2 * pairs);
      for (std::size_t j = 0; j < pairs; ++j) {
        c[j] = std::cos(a[j]);
        s[j] = std::sin(a[j]);
      }
      ref.rotate(x.data(), c.data(), s.data(), o1.data(), pairs);
      k.rotate(x.data(), c.data(), s.data(), o2.data(), pairs);
      for (std::size_t i = 0; i < o1.size(); ++i) {
        if (std::abs(o1[i] - o2[i]) > 1e-12) return fmt("rotate differs", o1[i] - o2[i]);
      }
      const double d1 = ref.dot(x.data(), q.data(), 2 * pairs);
      const double d2 = k.dot(x.data(), q.data(), 2 * pairs);
      if (std::abs(d1 - d2) > 1e-12 * (1.0 + std::abs(d1)) * pairs) return fmt("dot differs", d1 - d2);
      const double r1 = ref.rotated_dot(q.data(), x.data(), c.data(), s.data(), pairs);
      const double r2 = k.rotated_dot(q.data(), x.data(), c.data(), s.data(), pairs);
      if (std::abs(r1 - r2) > 1e-12 * (1.0 + std::abs(r1)) * pairs) return fmt("rotated_dot differs", r1 - r2);
    }
  }
  return {};
}

std::string vrope_structure() {
  for (Position p : {Position{0}, Position{7}}) {
    std::string failure;
    for_each_grid(5, [&](const VideoGrid& g) {
      if (!failure.empty()) return;
      const Position W = g.width, H = g.height;
      for (int t = 0; t < g.frames; ++t) {
        const Position lo = p + t * (H + W - 1);
        const Position hi = lo + H + W - 2;
        for (int h = 0; h < g.height; ++h) {
          for (int w = 0; w < g.width; ++w) {
            const SymmetricIndices u = symmetric_indices({w, h, t});
            if (u.u1 + u.u3 != 0 || u.u2 + u.u4 != 0) failure = "antisymmetry";
            const PositionVector v = vrope_position({w, h, t}, g, p);
            const PositionVector r = vrope_position({g.width - 1 - w, g.height - 1 - h, t}, g, p);
            if (v[0] != r[2] || v[1] != r[3] || v[2] != r[0] || v[3] != r[1]) failure = "reflection permutation";
            if (v[0] + v[1] + v[2] + v[3] != 4 * p + 2 * (H + W - 2) + 4 * t * (H + W - 1)) failure = "sum invariant";
            for (Position x : v.dims()) {
              if (x < lo || x > hi) failure = "frame bounds";
            }
            if (W % 2 == 1 && H % 2 == 1 && w == W / 2 && h == H / 2) {
              if (!v.isotropic() || v[0] != p + (W + H - 2) / 2 + t * (H + W - 1)) failure = "center alignment";
            }
          }
        }
      }
    });
    if (!failure.empty()) return failure;
  }
  return {};
}

std::string vrope_continuity() {
  const SchemeConfig vr(SchemeId::vrope, 8);
  std::string failure;
  for_each_grid(5, [&](const VideoGrid& g) {
    for (int lead : {0, 7}) {
      std::vector<Segment> segs;
      if (lead > 0) segs.emplace_back(TextSegment{lead});
      segs.emplace_back(VideoSegment{g});
      segs.emplace_back(TextSegment{1});
      const auto gaps = boundary_gap(build_layout(segs, vr));
      if (gaps.size() != 1 || gaps[0].per_dim != std::vector<Position>{1, 1, 1, 1}) failure = "gap != (1,1,1,1)";
    }
  });
  return failure;
}

std::string degeneration() {
  for (int w = 0; w < 64; ++w) {
    if (!(symmetric_indices({w, 0, 0}) == SymmetricIndices{w, w, -w, -w})) return "H=1 form";
    if (!(symmetric_indices({0, w, 0}) == SymmetricIndices{w, -w, -w, w})) return "W=1 form";
  }
  return {};
}

std::string rope3d_gap_growth() {
  const SchemeConfig r3(SchemeId::rope3d, 64);
  std::vector<Position> previous;
  for (int T = 9; T <= 80; ++T) {
    const std::vector<Segment> segs{VideoSegment{{8, 8, T}}, TextSegment{1}};
    const auto gap = boundary_gap(build_layout(segs, r3)).at(0).per_dim;
    const std::vector<Position> expect{1, T - 7, T - 7};
    if (gap != expect) return "gap formula at T=" + std::to_string(T);
    if (!previous.empty() && !(gap[1] > previous[1] && gap[2] > previous[2])) return "gap not increasing";
    previous = gap;
  }
  return {};
}

std::string sequential_schemes() {
  const std::vector<Segment> segs{TextSegment{3}, VideoSegment{{3, 2, 4}}, TextSegment{2}, VideoSegment{{2, 2, 2}},
                                  TextSegment{2}};
  const auto flat = build_layout(segs, SchemeConfig(SchemeId::rope1d, 8));
  for (std::size_t i = 0; i < flat.tokens.size(); ++i) {
    if (flat.tokens[i].position[0] != static_cast<Position>(i)) return "rope1d positions are not 0..N-1";
  }
  for (SchemeId id : {SchemeId::rope1d, SchemeId::rope_share, SchemeId::vrope}) {
    const auto layout = build_layout(segs, SchemeConfig(id, 8));
    for (std::size_t si = 0; si + 1 < segs.size(); ++si) {
      if (!std::holds_alternative<VideoSegment>(segs[si])) continue;
      const std::size_t begin = layout.segment_offsets[si];
      const std::size_t end = layout.segment_offsets[si + 1];
      const Position start = begin == 0 ? 0 : layout.tokens[begin - 1].position[0] + 1;
      const PositionVector& next = layout.tokens[end].position;
      for (std::size_t i = begin; i < end; ++i) {
        const PositionVector& v = layout.tokens[i].position;
        for (int dd = 0; dd < v.size(); ++dd) {
          if (v[dd] < start || v[dd] >= next[dd]) return std::string(scheme_name(id)) + " positions collide";
        }
      }
    }
  }
  return {};
}

std::string decay_properties() {
  const auto curve = decay_curve(FrequencySchedule(10000.0, 64), 512);
  if (curve[0].value != 1.0) return "C(0) != 1";
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (!(curve[i].value < 1.0)) return "C(delta) >= 1 at " + std::to_string(i);
  }
  const auto single = decay_curve(FrequencySchedule(10000.0, 2), 512);
  for (const auto& p : single) {
    if (std::abs(p.value - std::cos(static_cast<double>(p.delta))) > 1e-12) return "d=2 curve is not cos";
  }
  return {};
}

std::string share_constancy() {
  const SchemeConfig sh(SchemeId::rope_share, 64);
  const VideoGrid g{8, 8, 4};
  for (int t = 0; t < g.frames; ++t) {
    const auto map = heatmap(sh, g, t, text_position(20, sh));
    for (double v : map.values) {
      if (v != map.values[0]) return "heatmap not constant in frame " + std::to_string(t);
    }
    const Position first = scheme_position(sh, {0, 0, t}, g, 0)[0];
    for (int h = 0; h < g.height; ++h)
      for (int w = 0; w < g.width; ++w)
        if (scheme_position(sh, {w, h, t}, g, 0)[0] != first) return "frame tokens do not share a position";
  }
  return {};
}

std::string monte_carlo_agreement() {
  const SchemeConfig vr(SchemeId::vrope, 64);
  const VideoGrid g{4, 4, 2};
  const PositionVector query = text_position(2 * 7 + 3, vr);
  const auto exact = heatmap(vr, g, 1, query);
  TrialConfig cfg{2024, 10000, 64, 10000.0, 1};
  const auto mc = monte_carlo_heatmap(vr, g, 1, query, cfg);
  for (std::size_t c = 0; c < exact.values.size(); ++c) {
    if (std::abs(exact.values[c] - mc.values[c]) >= 0.02) return fmt("deviation", exact.values[c] - mc.values[c]);
  }
  cfg.threads = 3;
  if (monte_carlo_heatmap(vr, g, 1, query, cfg).values != mc.values) return "result depends on thread count";
  return {};
}

std::string rope3d_bias() {
  const SchemeConfig r3(SchemeId::rope3d, 64);
  for (int T : {1, 4, 8, 16, 64}) {
    const VideoGrid g{8, 8, T};
    const std::vector<Segment> segs{VideoSegment{g}, TextSegment{1}};
    const auto layout = build_layout(segs, r3);
    const auto map = heatmap(r3, g, T - 1, layout.tokens.back().position);
    if (map.at(7, 7) < map.at(0, 0)) return "top-left outscores bottom-right at T=" + std::to_string(T);
  }
  return {};
}

std::string csv_round_trip() {
  const auto segs = parse_layout_spec("text:2,video:3x2x2,text:3,video:1x1x1,text:1");
  for (SchemeId id : kAllSchemes) {
    const auto layout = build_layout(segs, SchemeConfig(id, 16));
    if (!(parse_layout_csv(layout_csv(layout), id) == layout)) return std::string(scheme_name(id));
  }
  return {};
}

}  // namespace

std::vector<CheckResult> run_selfcheck() {
  const std::vector<std::pair<const char*, Check>> checks{
      {"text_compatibility", text_compatibility},
      {"oracle_equivalence", oracle_equivalence},
      {"norm_and_shift_invariance", norm_and_shift},
      {"simd_equivalence", simd_equivalence},
      {"vrope_structure", vrope_structure},
      {"vrope_boundary_continuity", vrope_continuity},
      {"degeneration", degeneration},
      {"rope3d_gap_growth", rope3d_gap_growth},
      {"sequential_no_collision", sequential_schemes},
      {"decay_properties", decay_properties},
      {"rope_share_constancy", share_constancy},
      {"monte_carlo_agreement", monte_carlo_agreement},
      {"rope3d_bias_signature", rope3d_bias},
      {"layout_csv_round_trip", csv_round_trip},
  };
  std::vector<CheckResult> results;
  for (const auto& [name, check] : checks) {
    CheckResult r{name, false, {}};
    try {
      r.detail = check();
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace vrope
