#include "forge/ambient.hpp"

#include <cctype>
#include <cstdlib>
#include <deque>

#include "forge/errors.hpp"

namespace forge {

namespace {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::size_t AmbientHash::operator()(const AmbientElement& a) const {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(a.zexp));
  for (auto v : a.base) h = mix64(h ^ static_cast<std::uint64_t>(v));
  return static_cast<std::size_t>(h);
}

GroupContext::GroupContext(BaseGroupSpec spec) : spec_(std::move(spec)) {
  identity_ = intern({base_identity(spec_), 0});
  for (auto& [name, g] : base_generators(spec_)) {
    SGen gen;
    gen.name = name;
    gen.value = intern({g, 0});
    gen.inverse = intern({base_inverse(spec_, g), 0});
    s_gens_.push_back(std::move(gen));
  }
  SGen zgen;
  zgen.name = "z";
  zgen.value = intern({base_identity(spec_), 1});
  zgen.inverse = intern({base_identity(spec_), -1});
  s_gens_.push_back(std::move(zgen));
  core_.radius = 0;
  core_.members.push_back(identity_);
  core_.parent.push_back(-1);
  core_.parent_sym.push_back(-1);
  core_.index[identity_] = 0;
  layer_end_.push_back(1);
}

PointId GroupContext::intern(const AmbientElement& e) {
  auto it = ids_.find(e);
  if (it != ids_.end()) return it->second;
  PointId id = static_cast<PointId>(points_.size());
  points_.push_back(e);
  ids_.emplace(points_.back(), id);
  return id;
}

PointId GroupContext::mul(PointId a, PointId b) {
  std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
  auto it = mul_memo_.find(key);
  if (it != mul_memo_.end()) return it->second;
  const AmbientElement& x = points_[a];
  const AmbientElement& y = points_[b];
  AmbientElement r{base_multiply(spec_, x.base, y.base), x.zexp + y.zexp};
  PointId id = intern(r);
  mul_memo_.emplace(key, id);
  return id;
}

PointId GroupContext::inv(PointId a) {
  if (a < inv_memo_.size() && inv_memo_[a] != kNoPoint) return inv_memo_[a];
  const AmbientElement& x = points_[a];
  PointId id = intern({base_inverse(spec_, x.base), -x.zexp});
  if (inv_memo_.size() <= a) inv_memo_.resize(points_.size(), kNoPoint);
  inv_memo_[a] = id;
  return id;
}

PointId GroupContext::z_power(std::int64_t k) {
  return intern({base_identity(spec_), k});
}

std::int64_t GroupContext::norm(PointId a) {
  if (a < norm_memo_.size() && norm_memo_[a] >= 0) return norm_memo_[a];
  const AmbientElement& x = points_[a];
  std::int64_t n = base_norm(spec_, x.base) + std::abs(x.zexp);
  if (norm_memo_.size() <= a) norm_memo_.resize(points_.size(), -1);
  norm_memo_[a] = n;
  return n;
}

const AmbientBall& GroupContext::ball(std::int64_t radius) {
  if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
  while (core_.radius < radius) {
    // expand by one BFS layer; symbols: generators in order, then inverses
    std::size_t layer_start =
        core_.radius == 0 ? 0 : layer_end_[static_cast<std::size_t>(core_.radius) - 1];
    std::size_t layer_stop = layer_end_[static_cast<std::size_t>(core_.radius)];
    std::size_t ngen = s_gens_.size();
    for (std::size_t i = layer_start; i < layer_stop; ++i) {
      for (std::size_t sym = 0; sym < 2 * ngen; ++sym) {
        bool inverse = sym >= ngen;
        const SGen& g = s_gens_[sym % ngen];
        PointId next = mul(core_.members[i], inverse ? g.inverse : g.value);
        if (core_.index.count(next)) continue;
        core_.index[next] = static_cast<std::uint32_t>(core_.members.size());
        core_.members.push_back(next);
        core_.parent.push_back(static_cast<std::int32_t>(i));
        core_.parent_sym.push_back(static_cast<std::int16_t>(sym));
      }
    }
    layer_end_.push_back(core_.members.size());
    ++core_.radius;
  }
  auto it = snapshots_.find(radius);
  if (it != snapshots_.end()) return it->second;
  AmbientBall snap;
  snap.radius = radius;
  std::size_t count = layer_end_[static_cast<std::size_t>(radius)];
  snap.members.assign(core_.members.begin(), core_.members.begin() + static_cast<std::ptrdiff_t>(count));
  snap.parent.assign(core_.parent.begin(), core_.parent.begin() + static_cast<std::ptrdiff_t>(count));
  snap.parent_sym.assign(core_.parent_sym.begin(),
                         core_.parent_sym.begin() + static_cast<std::ptrdiff_t>(count));
  for (std::uint32_t i = 0; i < count; ++i) snap.index[snap.members[i]] = i;
  return snapshots_.emplace(radius, std::move(snap)).first->second;
}

std::vector<std::pair<int, int>> GroupContext::geodesic(const AmbientBall& b,
                                                        PointId p) const {
  auto it = b.index.find(p);
  if (it == b.index.end())
    throw std::invalid_argument("point is not a member of the ball");
  std::vector<std::pair<int, int>> word;
  std::size_t ngen = s_gens_.size();
  for (std::uint32_t i = it->second; b.parent[i] >= 0;
       i = static_cast<std::uint32_t>(b.parent[i])) {
    int sym = b.parent_sym[i];
    word.emplace_back(sym % static_cast<int>(ngen), sym < static_cast<int>(ngen) ? 1 : -1);
  }
  std::reverse(word.begin(), word.end());
  return word;
}

PointId GroupContext::parse_point(const std::string& text) {
  if (text == "id") return identity_;
  PointId acc = identity_;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])))) ++pos;
    std::string letter = text.substr(start, pos - start);
    std::int64_t exp = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      std::size_t estart = pos;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == estart) throw UsageError("expected exponent in point literal: " + text);
      exp = std::stoll(text.substr(estart, pos - estart));
    }
    const SGen* gen = nullptr;
    for (auto& g : s_gens_)
      if (g.name == letter) { gen = &g; break; }
    if (!gen) throw UsageError("unknown generator '" + letter + "' in point literal");
    PointId step = exp >= 0 ? gen->value : gen->inverse;
    for (std::int64_t i = 0; i < std::abs(exp); ++i) acc = mul(acc, step);
    if (pos < text.size()) {
      if (text[pos] != '*') throw UsageError("expected '*' in point literal: " + text);
      ++pos;
      if (pos == text.size()) throw UsageError("dangling '*' in point literal: " + text);
    }
  }
  return acc;
}

std::string GroupContext::point_literal(PointId p) const {
  const AmbientElement& e = points_[p];
  std::string out;
  auto word = base_geodesic(spec_, e.base);
  // collate runs of one generator into a single power
  for (std::size_t i = 0; i < word.size();) {
    std::size_t j = i;
    std::int64_t exp = 0;
    while (j < word.size() && word[j].first == word[i].first &&
           word[j].second == word[i].second) {
      exp += word[j].second;
      ++j;
    }
    if (!out.empty()) out += "*";
    out += s_gens_[static_cast<std::size_t>(word[i].first)].name;
    if (exp != 1) out += "^" + std::to_string(exp);
    i = j;
  }
  if (e.zexp != 0) {
    if (!out.empty()) out += "*";
    out += "z";
    if (e.zexp != 1) out += "^" + std::to_string(e.zexp);
  }
  if (out.empty()) out = "id";
  return out;
}

}  // namespace forge
