#include "vrope/schemes.hpp"

#include <numeric>
#include <string>

#include "vrope/error.hpp"

namespace vrope {

std::string_view scheme_name(SchemeId id) noexcept {
  switch (id) {
    case SchemeId::rope1d:
      return "rope1d";
    case SchemeId::rope2d:
      return "rope2d";
    case SchemeId::rope3d:
      return "rope3d";
    case SchemeId::rope_share:
      return "rope_share";
    case SchemeId::rope_compact:
      return "rope_compact";
    case SchemeId::vrope:
      return "vrope";
  }
  return "unknown";
}

SchemeId parse_scheme(std::string_view name) {
  std::string norm;
  for (char c : name) {
    if (c == '-') continue;
    if (c == '_') continue;
    norm.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
  }
  if (norm == "rope" || norm == "rope1d") return SchemeId::rope1d;
  if (norm == "rope2d") return SchemeId::rope2d;
  if (norm == "rope3d") return SchemeId::rope3d;
  if (norm == "ropeshare") return SchemeId::rope_share;
  if (norm == "ropecompact") return SchemeId::rope_compact;
  if (norm == "vrope") return SchemeId::vrope;
  throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

int group_count(SchemeId id) noexcept {
  switch (id) {
    case SchemeId::rope1d:
    case SchemeId::rope_share:
      return 1;
    case SchemeId::rope2d:
      return 2;
    case SchemeId::rope3d:
    case SchemeId::rope_compact:
      return 3;
    case SchemeId::vrope:
      return 4;
  }
  return 0;
}

void validate(const VideoGrid& grid) {
  if (grid.width < 1 || grid.height < 1 || grid.frames < 1) {
    throw InvalidParameter("video grid extents must be >= 1, got " + std::to_string(grid.width) + "x" +
                           std::to_string(grid.height) + "x" + std::to_string(grid.frames));
  }
}

void validate(const TokenCoordinate& c, const VideoGrid& grid) {
  validate(grid);
  if (c.w < 0 || c.w >= grid.width || c.h < 0 || c.h >= grid.height || c.t < 0 || c.t >= grid.frames) {
    throw InvalidCoordinate("coordinate (w=" + std::to_string(c.w) + ", h=" + std::to_string(c.h) +
                            ", t=" + std::to_string(c.t) + ") outside grid");
  }
}

PositionVector::PositionVector(std::initializer_list<Position> dims) {
  if (dims.size() < 1 || dims.size() > 4) throw InvalidDimension("position vectors carry 1 to 4 coordinates");
  std::copy(dims.begin(), dims.end(), dims_.begin());
  count_ = static_cast<int>(dims.size());
}

PositionVector PositionVector::uniform(Position value, int count) {
  if (count < 1 || count > 4) throw InvalidDimension("position vectors carry 1 to 4 coordinates");
  PositionVector v;
  v.count_ = count;
  std::fill_n(v.dims_.begin(), count, value);
  return v;
}

Position PositionVector::max() const noexcept { return *std::max_element(dims().begin(), dims().end()); }

bool PositionVector::isotropic() const noexcept {
  return std::all_of(dims().begin(), dims().end(), [&](Position p) { return p == dims_[0]; });
}

std::array<int, 3> default_rope3d_partition(int pairs) noexcept {
  const int third = pairs / 3;
  return {third + pairs % 3, third, third};
}

SchemeConfig::SchemeConfig(SchemeId id, int d, double base, std::optional<std::vector<int>> partition)
    : id_(id), schedule_(base, d) {
  const int pairs = schedule_.pairs();
  const int groups = group_count(id);

  switch (id) {
    case SchemeId::rope1d:
    case SchemeId::rope_share:
    case SchemeId::vrope:
      if (partition) throw ConfigError(std::string(scheme_name(id)) + " does not take a channel partition");
      break;
    case SchemeId::rope2d:
    case SchemeId::rope3d:
    case SchemeId::rope_compact:
      break;
  }
  if (id == SchemeId::vrope && pairs % 4 != 0) {
    throw ConfigError("vrope needs d/2 divisible by 4, got d=" + std::to_string(d));
  }
  if (id == SchemeId::rope2d && pairs % 2 != 0) {
    throw ConfigError("rope2d needs d/2 divisible by 2, got d=" + std::to_string(d));
  }

  if (partition) {
    if (static_cast<int>(partition->size()) != groups) {
      throw ConfigError("partition needs " + std::to_string(groups) + " group sizes");
    }
    if (std::any_of(partition->begin(), partition->end(), [](int n) { return n < 0; })) {
      throw ConfigError("partition sizes must be non-negative");
    }
    if (std::accumulate(partition->begin(), partition->end(), 0) != pairs) {
      throw ConfigError("partition does not sum to d/2 = " + std::to_string(pairs));
    }
    partition_ = std::move(*partition);
  } else if (groups == 3) {
    const auto split = default_rope3d_partition(pairs);
    partition_.assign(split.begin(), split.end());
  } else if (groups == 2) {
    partition_ = {pairs / 2, pairs / 2};
  } else if (groups == 4) {
    partition_.assign(4, pairs / 4);
  } else {
    partition_ = {pairs};
  }

  group_of_pair_.resize(static_cast<std::size_t>(pairs));
  if (id == SchemeId::vrope) {
    for (int j = 0; j < pairs; ++j) group_of_pair_[static_cast<std::size_t>(j)] = j % 4;
  } else {
    std::size_t j = 0;
    for (int g = 0; g < groups; ++g) {
      for (int n = 0; n < partition_[static_cast<std::size_t>(g)]; ++n) group_of_pair_[j++] = g;
    }
  }
}

std::vector<int> group_allocation(const SchemeConfig& scheme) {
  const auto g = scheme.group_of_pair();
  return {g.begin(), g.end()};
}

SymmetricIndices symmetric_indices(const TokenCoordinate& c) noexcept {
  const Position w = c.w;
  const Position h = c.h;
  return {w + h, w - h, -w - h, -w + h};
}

PositionVector center_align(const SymmetricIndices& u, const VideoGrid& grid, Position p_start) noexcept {
  const Position W = grid.width;
  const Position H = grid.height;
  PositionVector v = PositionVector::uniform(p_start, 4);
  v[0] += u.u1;
  v[1] += u.u2 + H - 1;
  v[2] += u.u3 + H + W - 2;
  v[3] += u.u4 + W - 1;
  return v;
}

PositionVector temporal_offset(const PositionVector& v, int t, const VideoGrid& grid) {
  if (t < 0 || t >= grid.frames) {
    throw InvalidCoordinate("frame index " + std::to_string(t) + " outside [0, " + std::to_string(grid.frames) + ")");
  }
  const Position step = Position{t} * (Position{grid.height} + grid.width - 1);
  PositionVector out = v;
  for (int i = 0; i < out.size(); ++i) out[i] += step;
  return out;
}

PositionVector vrope_position(const TokenCoordinate& coord, const VideoGrid& grid, Position p_start) {
  validate(coord, grid);
  return temporal_offset(center_align(symmetric_indices(coord), grid, p_start), coord.t, grid);
}

PositionVector scheme_position(const SchemeConfig& scheme, const TokenCoordinate& c, const VideoGrid& grid,
                               Position p) {
  validate(c, grid);
  switch (scheme.id()) {
    case SchemeId::rope1d:
      return {p + Position{c.t} * grid.tokens_per_frame() + Position{c.h} * grid.width + c.w};
    case SchemeId::rope2d:
      return {p + c.w, p + c.h};
    case SchemeId::rope3d:
    case SchemeId::rope_compact:
      return {p + c.t, p + c.h, p + c.w};
    case SchemeId::rope_share:
      return {p + 1 + c.t};
    case SchemeId::vrope:
      return vrope_position(c, grid, p);
  }
  throw ConfigError("unknown scheme");
}

PositionVector text_position(Position m, const SchemeConfig& scheme) {
  return PositionVector::uniform(m, scheme.groups());
}

std::vector<double> pair_angles(const SchemeConfig& scheme, const PositionVector& position) {
  if (position.size() != scheme.groups()) throw InvalidDimension("position has wrong number of coordinates");
  const auto groups = scheme.group_of_pair();
  const auto theta = scheme.schedule().theta();
  std::vector<double> angles(groups.size());
  for (std::size_t j = 0; j < groups.size(); ++j) {
    angles[j] = static_cast<double>(position[groups[j]]) * theta[j];
  }
  return angles;
}

std::vector<double> pair_deltas(const SchemeConfig& scheme, const PositionVector& query, const PositionVector& key) {
  if (query.size() != scheme.groups() || key.size() != scheme.groups()) {
    throw InvalidDimension("position has wrong number of coordinates");
  }
  const auto groups = scheme.group_of_pair();
  std::vector<double> delta(groups.size());
  for (std::size_t j = 0; j < groups.size(); ++j) {
    delta[j] = static_cast<double>(query[groups[j]] - key[groups[j]]);
  }
  return delta;
}

}  // namespace vrope
