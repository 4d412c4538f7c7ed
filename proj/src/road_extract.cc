// Copyright 2026 The Streetaddr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "streetaddr/road_extract.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include <fmt/format.h>
#include "json.hpp"

#include "streetaddr/error.h"

namespace streetaddr {

namespace {

// 8-ring in clockwise order starting north: N NE E SE S SW W NW.
constexpr std::array<int, 8> kRingDc = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr std::array<int, 8> kRingDr = {-1, -1, 0, 1, 1, 1, 0, -1};
// Orthogonal neighbors first when choosing the next pixel of a walk.
constexpr std::array<int, 8> kWalkOrder = {0, 2, 4, 6, 1, 3, 5, 7};

constexpr double kDeg = 180.0 / M_PI;

std::array<bool, 8> ring(const BinaryMask& m, int c, int r) {
  std::array<bool, 8> p{};
  for (int k = 0; k < 8; ++k) p[k] = m.test(c + kRingDc[k], r + kRingDr[k]);
  return p;
}

int transitions(const std::array<bool, 8>& p) {
  int a = 0;
  for (int k = 0; k < 8; ++k) a += (!p[k] && p[(k + 1) % 8]) ? 1 : 0;
  return a;
}

// Connected groups among the set ring pixels, using 8-adjacency between the
// ring pixels themselves (the center excluded).
int ring_components(const std::array<bool, 8>& p) {
  std::array<int, 8> parent{};
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < 8; ++i) {
    if (!p[i]) continue;
    for (int j = i + 1; j < 8; ++j) {
      if (!p[j]) continue;
      if (std::abs(kRingDc[i] - kRingDc[j]) <= 1 && std::abs(kRingDr[i] - kRingDr[j]) <= 1) {
        parent[find(i)] = find(j);
      }
    }
  }
  int n = 0;
  for (int i = 0; i < 8; ++i) n += (p[i] && find(i) == i) ? 1 : 0;
  return n;
}

bool adjacent(Pixel a, Pixel b) {
  return std::abs(a.col - b.col) <= 1 && std::abs(a.row - b.row) <= 1 && !(a == b);
}

std::vector<Pixel> bresenham(Pixel a, Pixel b) {
  std::vector<Pixel> out;
  int x0 = a.col, y0 = a.row;
  const int dx = std::abs(b.col - x0), sx = x0 < b.col ? 1 : -1;
  const int dy = -std::abs(b.row - y0), sy = y0 < b.row ? 1 : -1;
  int err = dx + dy;
  for (;;) {
    out.push_back({x0, y0});
    if (x0 == b.col && y0 == b.row) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
  return out;
}

double axial(double deg) {
  double a = std::fmod(deg, 180.0);
  if (a < 0) a += 180.0;
  return a >= 180.0 ? 0.0 : a;
}

double axial_difference(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, 180.0 - d);
}

void refresh_dirs(PixelChain& ch, int window) {
  const auto& px = ch.pixels;
  const std::size_t n = px.size();
  if (n < 2) return;
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(window), n - 1);
  ch.start_dir = axial_orientation_deg(px[w], px[0]);
  ch.end_dir = axial_orientation_deg(px[n - 1 - w], px[n - 1]);
}

void reverse_chain(PixelChain& ch) {
  std::reverse(ch.pixels.begin(), ch.pixels.end());
  std::swap(ch.start_dir, ch.end_dir);
  std::swap(ch.start_fixed, ch.end_fixed);
}

bool has_repeats(const std::vector<Pixel>& px) {
  std::vector<Pixel> sorted = px;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

void sort_chains(std::vector<PixelChain>& chains) {
  std::sort(chains.begin(), chains.end(), [](const PixelChain& a, const PixelChain& b) {
    return std::lexicographical_compare(a.pixels.begin(), a.pixels.end(), b.pixels.begin(),
                                        b.pixels.end());
  });
}

// Angle in degrees between two displacement vectors (0 = same direction).
double turn_deg(Point in, Point out) {
  const double c = dot(in, out) / (norm(in) * norm(out));
  return std::acos(std::clamp(c, -1.0, 1.0)) * kDeg;
}

Point delta(Pixel from, Pixel to) {
  return {static_cast<double>(to.col - from.col), static_cast<double>(to.row - from.row)};
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Douglas-Peucker over pixel centers; keeps a subset of the input vertices.
void simplify(const std::vector<Point>& pts, std::size_t lo, std::size_t hi, double tol,
              std::vector<bool>& keep) {
  if (hi <= lo + 1) return;
  const Point a = pts[lo];
  const Point b = pts[hi];
  const double len = distance(a, b);
  double worst = -1.0;
  std::size_t at = lo;
  for (std::size_t i = lo + 1; i < hi; ++i) {
    const double d = len > 0.0 ? std::abs(cross(b - a, pts[i] - a)) / len : distance(pts[i], a);
    if (d > worst) {
      worst = d;
      at = i;
    }
  }
  if (worst > tol) {
    keep[at] = true;
    simplify(pts, lo, at, tol, keep);
    simplify(pts, at, hi, tol, keep);
  }
}

}  // namespace

void ExtractParams::validate() const {
  if (threshold <= 0 || threshold > 255) throw ValidationError("threshold must be in 1..255");
  if (join_radius_px <= 0) throw ValidationError("join_radius_px must be positive");
  if (join_confidence <= 0 || join_confidence > 255) {
    throw ValidationError("join_confidence must be in 1..255");
  }
  if (endpoint_window_px <= 0) throw ValidationError("endpoint_window_px must be positive");
  if (orientation_buckets <= 0 || 180 % orientation_buckets != 0) {
    throw ValidationError("orientation_buckets must be positive and divide 180");
  }
  if (min_chain_px <= 0) throw ValidationError("min_chain_px must be positive");
}

double axial_orientation_deg(Pixel from, Pixel to) {
  // Rows grow southward; flip so the angle is a compass bearing.
  const double dx = to.col - from.col;
  const double dy = from.row - to.row;
  return axial(std::atan2(dx, dy) * kDeg);
}

int branch_count(const BinaryMask& mask, int col, int row) {
  return transitions(ring(mask, col, row));
}

BinaryMask thin(const BinaryMask& mask) {
  BinaryMask out = mask;
  const int w = out.width();
  const int h = out.height();
  std::vector<Pixel> clear;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int step = 0; step < 2; ++step) {
      clear.clear();
      for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
          if (!out.test(c, r)) continue;
          const auto p = ring(out, c, r);
          const int b = static_cast<int>(std::count(p.begin(), p.end(), true));
          if (b < 2 || b > 6 || transitions(p) != 1) continue;
          const bool n = p[0], e = p[2], s = p[4], west = p[6];
          const bool removable = step == 0 ? (!(n && e && s) && !(e && s && west))
                                           : (!(n && e && west) && !(n && s && west));
          if (removable) clear.push_back({c, r});
        }
      }
      for (Pixel px : clear) out.set(px.col, px.row, false);
      changed = changed || !clear.empty();
    }
  }
  // Staircase pass: drop pixels whose neighbors stay connected without them
  // and which do not join separate branches.
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!out.test(c, r)) continue;
      const auto p = ring(out, c, r);
      const int b = static_cast<int>(std::count(p.begin(), p.end(), true));
      if (b < 2 || transitions(p) > 2) continue;
      if (ring_components(p) == 1) out.set(c, r, false);
    }
  }
  return out;
}

std::vector<PixelChain> trace_chains(const BinaryMask& skel, const ExtractParams& params) {
  const int w = skel.width();
  const int h = skel.height();
  auto idx = [w](Pixel p) { return static_cast<std::size_t>(p.row) * w + p.col; };

  std::vector<std::uint8_t> junction(static_cast<std::size_t>(w) * h, 0);
  std::vector<std::uint8_t> visited(junction.size(), 0);
  std::vector<Pixel> junctions;
  std::vector<Pixel> ends;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!skel.test(c, r)) continue;
      const auto p = ring(skel, c, r);
      if (transitions(p) >= 3) {
        junction[idx({c, r})] = 1;
        junctions.push_back({c, r});
      } else if (std::count(p.begin(), p.end(), true) <= 1) {
        ends.push_back({c, r});
      }
    }
  }
  auto is_junction = [&](Pixel p) { return skel.contains(p.col, p.row) && junction[idx(p)]; };
  auto is_free = [&](Pixel p) {
    return skel.test(p.col, p.row) && !junction[idx(p)] && !visited[idx(p)];
  };

  std::vector<PixelChain> raw;
  auto walk = [&](Pixel start, Pixel first) {
    PixelChain ch;
    ch.pixels = {start, first};
    if (!is_junction(first)) {
      visited[idx(first)] = 1;
      for (;;) {
        const Pixel cur = ch.pixels.back();
        const Pixel prev = ch.pixels[ch.pixels.size() - 2];
        bool closed = false;
        for (int k : kWalkOrder) {
          const Pixel nb{cur.col + kRingDc[k], cur.row + kRingDr[k]};
          if (!is_junction(nb) || nb == prev) continue;
          if (nb == ch.pixels.front()) continue;  // loop back onto our own start
          ch.pixels.push_back(nb);
          closed = true;
          break;
        }
        if (closed) break;
        Pixel next{};
        bool found = false;
        for (int pass = 0; pass < 2 && !found; ++pass) {
          for (int k : kWalkOrder) {
            const Pixel nb{cur.col + kRingDc[k], cur.row + kRingDr[k]};
            if (!is_free(nb)) continue;
            if (pass == 0 && adjacent(nb, prev)) continue;
            next = nb;
            found = true;
            break;
          }
        }
        if (!found) break;
        visited[idx(next)] = 1;
        ch.pixels.push_back(next);
      }
    }
    ch.start_fixed = is_junction(ch.pixels.front());
    ch.end_fixed = is_junction(ch.pixels.back());
    raw.push_back(std::move(ch));
  };

  for (Pixel j : junctions) {
    for (int k : kWalkOrder) {
      const Pixel nb{j.col + kRingDc[k], j.row + kRingDr[k]};
      if (is_junction(nb)) {
        if (j < nb) walk(j, nb);
      } else if (is_free(nb)) {
        walk(j, nb);
      }
    }
  }
  for (Pixel e : ends) {
    if (visited[idx(e)]) continue;
    visited[idx(e)] = 1;
    bool any = false;
    for (int k : kWalkOrder) {
      const Pixel nb{e.col + kRingDc[k], e.row + kRingDr[k]};
      if (is_free(nb) || is_junction(nb)) {
        walk(e, nb);
        any = true;
        break;
      }
    }
    (void)any;
  }
  // Whatever is left lies on junction-free cycles.
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const Pixel s{c, r};
      if (!is_free(s)) continue;
      visited[idx(s)] = 1;
      for (int k : kWalkOrder) {
        const Pixel nb{c + kRingDc[k], r + kRingDr[k]};
        if (is_free(nb)) {
          walk(s, nb);
          break;
        }
      }
    }
  }

  std::vector<PixelChain> chains;
  for (PixelChain& ch : raw) {
    const bool connector = ch.start_fixed && ch.end_fixed;
    if (ch.pixels.size() < 2) continue;
    if (!connector && static_cast<int>(ch.pixels.size()) < params.min_chain_px) continue;
    refresh_dirs(ch, params.endpoint_window_px);
    chains.push_back(std::move(ch));
  }
  sort_chains(chains);
  return chains;
}

std::vector<PixelChain> join_chains(const std::vector<PixelChain>& chains,
                                    const ConfidenceRaster& raster,
                                    const ExtractParams& params) {
  struct End {
    std::size_t chain;
    int side;  // 0 = start, 1 = end
  };
  auto end_pixel = [&](End e) {
    const auto& px = chains[e.chain].pixels;
    return e.side == 0 ? px.front() : px.back();
  };
  auto end_dir = [&](End e) {
    return e.side == 0 ? chains[e.chain].start_dir : chains[e.chain].end_dir;
  };

  std::vector<End> free_ends;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    if (!chains[i].start_fixed) free_ends.push_back({i, 0});
    if (!chains[i].end_fixed) free_ends.push_back({i, 1});
  }

  struct Candidate {
    double dist;
    std::size_t a, b;  // indices into free_ends
  };
  std::vector<Candidate> candidates;
  const double radius = params.join_radius_px;
  for (std::size_t a = 0; a < free_ends.size(); ++a) {
    for (std::size_t b = a + 1; b < free_ends.size(); ++b) {
      const End ea = free_ends[a];
      const End eb = free_ends[b];
      if (ea.chain == eb.chain) continue;
      const Pixel pa = end_pixel(ea);
      const Pixel pb = end_pixel(eb);
      const double dist = std::hypot(pa.col - pb.col, pa.row - pb.row);
      if (dist > radius) continue;
      if (!(axial_difference(end_dir(ea), end_dir(eb)) < params.bucket_width_deg())) continue;
      const std::vector<Pixel> line = bresenham(pa, pb);
      double sum = 0.0;
      int count = 0;
      std::set<Pixel> own(chains[ea.chain].pixels.begin(), chains[ea.chain].pixels.end());
      own.insert(chains[eb.chain].pixels.begin(), chains[eb.chain].pixels.end());
      bool clash = false;
      for (std::size_t k = 1; k + 1 < line.size(); ++k) {
        if (own.count(line[k])) clash = true;
        if (raster.contains(line[k].col, line[k].row)) sum += raster.at(line[k].col, line[k].row);
        ++count;
      }
      if (clash) continue;
      if (count == 0) {
        for (Pixel p : {pa, pb}) {
          if (raster.contains(p.col, p.row)) sum += raster.at(p.col, p.row);
          ++count;
        }
      }
      if (sum / count < params.join_confidence) continue;
      candidates.push_back({dist, a, b});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& l, const Candidate& r) { return l.dist < r.dist; });

  // link[chain][side] = the end it is joined to.
  std::vector<std::array<std::optional<End>, 2>> link(chains.size());
  for (const Candidate& c : candidates) {
    const End ea = free_ends[c.a];
    const End eb = free_ends[c.b];
    if (link[ea.chain][ea.side] || link[eb.chain][eb.side]) continue;
    link[ea.chain][ea.side] = eb;
    link[eb.chain][eb.side] = ea;
  }

  std::vector<bool> used(chains.size(), false);
  std::vector<PixelChain> out;
  auto follow = [&](std::size_t start, int entry_side) {
    // Depth-first along the join links; each chain has at most two.
    PixelChain merged = chains[start];
    if (entry_side == 1) reverse_chain(merged);
    used[start] = true;
    std::size_t cur = start;
    int exit_side = 1 - entry_side;
    while (link[cur][exit_side]) {
      const End next = *link[cur][exit_side];
      if (used[next.chain]) break;
      PixelChain piece = chains[next.chain];
      if (next.side == 1) reverse_chain(piece);
      const std::vector<Pixel> bridge = bresenham(merged.pixels.back(), piece.pixels.front());
      std::vector<Pixel> candidate = merged.pixels;
      candidate.insert(candidate.end(), bridge.begin() + 1, bridge.end() - 1);
      candidate.insert(candidate.end(), piece.pixels.begin(), piece.pixels.end());
      if (has_repeats(candidate)) break;
      merged.pixels = std::move(candidate);
      merged.end_fixed = piece.end_fixed;
      used[next.chain] = true;
      cur = next.chain;
      exit_side = 1 - next.side;
    }
    refresh_dirs(merged, params.endpoint_window_px);
    out.push_back(std::move(merged));
  };
  for (std::size_t i = 0; i < chains.size(); ++i) {
    if (used[i]) continue;
    if (!link[i][0]) {
      follow(i, 0);
    } else if (!link[i][1]) {
      follow(i, 1);
    }
  }
  // Remaining chains sit on cycles of links; break each at its first chain.
  for (std::size_t i = 0; i < chains.size(); ++i) {
    if (!used[i]) follow(i, 0);
  }
  sort_chains(out);
  return out;
}

namespace {

// Straightens the start of `ch` in place; returns false if left unchanged.
bool straighten_start(PixelChain& ch, int window) {
  auto& px = ch.pixels;
  const std::size_t w = static_cast<std::size_t>(window);
  if (px.size() <= w) return false;
  const Pixel anchor = px[w];
  auto angle = [&](Pixel p) {
    return std::atan2(static_cast<double>(p.row - anchor.row),
                      static_cast<double>(p.col - anchor.col));
  };
  const double ref = angle(px[w - 1]);
  std::vector<double> offsets;
  offsets.reserve(w);
  for (std::size_t k = 0; k < w; ++k) {
    double d = angle(px[k]) - ref;
    while (d > M_PI) d -= 2 * M_PI;
    while (d <= -M_PI) d += 2 * M_PI;
    offsets.push_back(d);
  }
  std::sort(offsets.begin(), offsets.end());
  const double theta = ref + offsets[(w - 1) / 2];
  const Point u{std::cos(theta), std::sin(theta)};
  const double t = dot(delta(anchor, px[0]), u);
  if (t < 1.0) return false;
  const Pixel tip{anchor.col + static_cast<int>(std::lround(t * u.x)),
                  anchor.row + static_cast<int>(std::lround(t * u.y))};
  std::vector<Pixel> line = bresenham(anchor, tip);  // anchor first
  std::reverse(line.begin(), line.end());            // tip first, anchor last
  std::vector<Pixel> candidate(line.begin(), line.end() - 1);
  candidate.insert(candidate.end(), px.begin() + static_cast<std::ptrdiff_t>(w), px.end());
  if (has_repeats(candidate)) return false;
  px = std::move(candidate);
  return true;
}

}  // namespace

std::vector<PixelChain> filter_endpoints(const std::vector<PixelChain>& chains,
                                         const ExtractParams& params) {
  std::vector<PixelChain> out;
  out.reserve(chains.size());
  for (PixelChain ch : chains) {
    if (!ch.start_fixed) straighten_start(ch, params.endpoint_window_px);
    if (!ch.end_fixed) {
      reverse_chain(ch);
      straighten_start(ch, params.endpoint_window_px);
      reverse_chain(ch);
    }
    refresh_dirs(ch, params.endpoint_window_px);
    out.push_back(std::move(ch));
  }
  return out;
}

namespace {

// Euclidean distance from a pixel to the nearest unset pixel, searched out to
// `limit`.
double clearance(const BinaryMask& mask, Pixel p, int limit) {
  double best = limit + 1.0;
  for (int dr = -limit; dr <= limit; ++dr) {
    for (int dc = -limit; dc <= limit; ++dc) {
      if (mask.test(p.col + dc, p.row + dr)) continue;
      best = std::min(best, std::hypot(static_cast<double>(dc), static_cast<double>(dr)));
    }
  }
  return best;
}

// Grows the start of `ch` along its terminal direction while the stroke keeps
// its body half-width, which puts the tip back at the stroke's cap center.
void extend_start(PixelChain& ch, const BinaryMask& mask, double body, int window) {
  auto& px = ch.pixels;
  if (px.size() < 2) return;
  const std::size_t w = std::min(px.size() - 1, static_cast<std::size_t>(window));
  const Point d = delta(px[w], px[0]);
  const double norm = std::hypot(d.x, d.y);
  if (norm == 0.0) return;
  const Point u{d.x / norm, d.y / norm};
  const int limit = static_cast<int>(std::ceil(body)) + 2;
  std::set<std::pair<int, int>> seen;
  for (const Pixel& p : px) seen.emplace(p.col, p.row);
  std::vector<Pixel> grown;
  for (int k = 1; k <= limit; ++k) {
    const Pixel q{px[0].col + static_cast<int>(std::lround(k * u.x)),
                  px[0].row + static_cast<int>(std::lround(k * u.y))};
    if (!mask.test(q.col, q.row) || seen.contains({q.col, q.row})) break;
    if (clearance(mask, q, limit) < body - 0.5) break;
    if (!grown.empty() && !adjacent(grown.back(), q)) break;
    if (grown.empty() && !adjacent(px[0], q)) break;
    grown.push_back(q);
    seen.emplace(q.col, q.row);
  }
  px.insert(px.begin(), grown.rbegin(), grown.rend());
}

}  // namespace

std::vector<PixelChain> extend_ends(const std::vector<PixelChain>& chains, const BinaryMask& mask,
                                    const ExtractParams& params) {
  std::vector<PixelChain> out;
  out.reserve(chains.size());
  for (PixelChain ch : chains) {
    if ((!ch.start_fixed || !ch.end_fixed) && !ch.pixels.empty()) {
      std::vector<double> widths;
      widths.reserve(ch.pixels.size());
      for (const Pixel& p : ch.pixels) widths.push_back(clearance(mask, p, 32));
      std::nth_element(widths.begin(), widths.begin() + widths.size() / 2, widths.end());
      const double body = widths[widths.size() / 2];
      if (!ch.start_fixed) extend_start(ch, mask, body, params.endpoint_window_px);
      if (!ch.end_fixed) {
        reverse_chain(ch);
        extend_start(ch, mask, body, params.endpoint_window_px);
        reverse_chain(ch);
      }
      refresh_dirs(ch, params.endpoint_window_px);
    }
    out.push_back(std::move(ch));
  }
  return out;
}

std::vector<PixelChain> split_at_turns(const std::vector<PixelChain>& chains,
                                       const ExtractParams& params) {
  const std::size_t w = static_cast<std::size_t>(params.endpoint_window_px);
  const double limit = params.bucket_width_deg();
  std::vector<PixelChain> out;
  for (const PixelChain& ch : chains) {
    const auto& px = ch.pixels;
    const std::size_t n = px.size();
    std::vector<std::size_t> cuts;
    if (n >= 2 * w + 1) {
      std::vector<double> turn(n, 0.0);
      for (std::size_t i = w; i + w < n; ++i) {
        turn[i] = turn_deg(delta(px[i - w], px[i]), delta(px[i], px[i + w]));
      }
      for (std::size_t i = w; i + w < n; ++i) {
        if (turn[i] < limit) continue;
        // Local maximum over +-w; the first of equal maxima wins.
        bool peak = true;
        for (std::size_t j = i - std::min(i, w); j <= std::min(n - 1, i + w); ++j) {
          if (turn[j] > turn[i] || (turn[j] == turn[i] && j < i)) {
            peak = false;
            break;
          }
        }
        if (peak) cuts.push_back(i);
      }
    }
    std::size_t from = 0;
    cuts.push_back(n - 1);
    for (std::size_t cut : cuts) {
      PixelChain part;
      part.pixels.assign(px.begin() + static_cast<std::ptrdiff_t>(from),
                         px.begin() + static_cast<std::ptrdiff_t>(cut) + 1);
      part.start_fixed = from == 0 ? ch.start_fixed : true;
      part.end_fixed = cut == n - 1 ? ch.end_fixed : true;
      refresh_dirs(part, params.endpoint_window_px);
      out.push_back(std::move(part));
      from = cut;
    }
  }
  return out;
}

RoadGraph build_graph(const std::vector<PixelChain>& input, const ExtractParams& params,
                      const GeoTransform& transform) {
  std::vector<PixelChain> chains = split_at_turns(input, params);

  // Crossings: a pixel interior to one chain and present in another splits
  // the chain there.
  {
    std::map<Pixel, int> seen;
    for (const PixelChain& ch : chains) {
      for (Pixel p : std::set<Pixel>(ch.pixels.begin(), ch.pixels.end())) ++seen[p];
    }
    std::vector<PixelChain> split;
    for (const PixelChain& ch : chains) {
      std::size_t from = 0;
      const std::size_t n = ch.pixels.size();
      for (std::size_t i = 1; i + 1 < n; ++i) {
        if (seen[ch.pixels[i]] < 2) continue;
        PixelChain part;
        part.pixels.assign(ch.pixels.begin() + static_cast<std::ptrdiff_t>(from),
                           ch.pixels.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        part.start_fixed = from == 0 ? ch.start_fixed : true;
        part.end_fixed = true;
        split.push_back(std::move(part));
        from = i;
      }
      PixelChain last;
      last.pixels.assign(ch.pixels.begin() + static_cast<std::ptrdiff_t>(from), ch.pixels.end());
      last.start_fixed = from == 0 ? ch.start_fixed : true;
      last.end_fixed = ch.end_fixed;
      split.push_back(std::move(last));
    }
    chains = std::move(split);
  }

  // Node clustering over chain ends: ends within 1.5 px merge, and short
  // chains between two fixed ends are contracted into a single node.
  const std::size_t nends = chains.size() * 2;
  std::vector<Pixel> end_px(nends);
  std::vector<bool> end_fixed(nends);
  for (std::size_t i = 0; i < chains.size(); ++i) {
    end_px[2 * i] = chains[i].pixels.front();
    end_px[2 * i + 1] = chains[i].pixels.back();
    end_fixed[2 * i] = chains[i].start_fixed;
    end_fixed[2 * i + 1] = chains[i].end_fixed;
  }
  UnionFind uf(nends);
  {
    std::map<Pixel, std::vector<std::size_t>> at;
    for (std::size_t e = 0; e < nends; ++e) at[end_px[e]].push_back(e);
    for (std::size_t e = 0; e < nends; ++e) {
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          auto it = at.find({end_px[e].col + dc, end_px[e].row + dr});
          if (it == at.end()) continue;
          for (std::size_t other : it->second) uf.unite(e, other);
        }
      }
    }
  }
  std::vector<bool> alive(chains.size(), true);
  for (std::size_t i = 0; i < chains.size(); ++i) {
    if (chains[i].start_fixed && chains[i].end_fixed &&
        static_cast<int>(chains[i].pixels.size()) < params.min_chain_px) {
      uf.unite(2 * i, 2 * i + 1);
      alive[i] = false;
    }
  }

  // Node positions: mean of the fixed end pixels in a cluster when it has
  // any (junctions and split points are exact), else of all its end pixels.
  std::map<std::size_t, std::size_t> node_of_root;
  std::vector<std::set<Pixel>> fixed_px, any_px;
  for (std::size_t e = 0; e < nends; ++e) {
    const std::size_t root = uf.find(e);
    auto [it, inserted] = node_of_root.emplace(root, fixed_px.size());
    if (inserted) {
      fixed_px.emplace_back();
      any_px.emplace_back();
    }
    any_px[it->second].insert(end_px[e]);
    if (end_fixed[e]) fixed_px[it->second].insert(end_px[e]);
  }
  std::vector<Point> nodes;
  for (std::size_t n = 0; n < any_px.size(); ++n) {
    const auto& pts = fixed_px[n].empty() ? any_px[n] : fixed_px[n];
    double col = 0.0, row = 0.0;
    for (Pixel p : pts) {
      col += p.col;
      row += p.row;
    }
    nodes.push_back(transform.pixel_to_world({col / pts.size(), row / pts.size()}));
  }

  struct Run {
    std::vector<Pixel> pixels;
    std::size_t from, to;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    if (!alive[i]) continue;
    runs.push_back({chains[i].pixels, node_of_root[uf.find(2 * i)],
                    node_of_root[uf.find(2 * i + 1)]});
  }

  // Degree-2 nodes where the road continues straight are not intersections:
  // fuse the two runs through them.
  const std::size_t w = static_cast<std::size_t>(params.endpoint_window_px);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::vector<std::pair<std::size_t, bool>>> at(nodes.size());  // (run, at_start)
    for (std::size_t i = 0; i < runs.size(); ++i) {
      at[runs[i].from].push_back({i, true});
      at[runs[i].to].push_back({i, false});
    }
    for (std::size_t n = 0; n < nodes.size() && !changed; ++n) {
      if (at[n].size() != 2 || at[n][0].first == at[n][1].first) continue;
      Run a = runs[at[n][0].first];
      Run b = runs[at[n][1].first];
      if (at[n][0].second) {
        std::reverse(a.pixels.begin(), a.pixels.end());
        std::swap(a.from, a.to);
      }
      if (!at[n][1].second) {
        std::reverse(b.pixels.begin(), b.pixels.end());
        std::swap(b.from, b.to);
      }
      const std::size_t wa = std::min(w, a.pixels.size() - 1);
      const std::size_t wb = std::min(w, b.pixels.size() - 1);
      const double turn = turn_deg(delta(a.pixels[a.pixels.size() - 1 - wa], a.pixels.back()),
                                   delta(b.pixels.front(), b.pixels[wb]));
      if (turn >= params.bucket_width_deg()) continue;
      std::vector<Pixel> joined = a.pixels;
      if (a.pixels.back() == b.pixels.front()) {
        joined.insert(joined.end(), b.pixels.begin() + 1, b.pixels.end());
      } else {
        const auto bridge = bresenham(a.pixels.back(), b.pixels.front());
        joined.insert(joined.end(), bridge.begin() + 1, bridge.end() - 1);
        joined.insert(joined.end(), b.pixels.begin(), b.pixels.end());
      }
      if (has_repeats(joined)) continue;
      const std::size_t ia = std::min(at[n][0].first, at[n][1].first);
      const std::size_t ib = std::max(at[n][0].first, at[n][1].first);
      runs[ia] = Run{std::move(joined), a.from, b.to};
      runs.erase(runs.begin() + static_cast<std::ptrdiff_t>(ib));
      changed = true;
    }
  }

  std::vector<Edge> edges;
  constexpr double kSimplifyTolPx = 0.75;
  for (const Run& run : runs) {
    std::vector<Point> pts;
    pts.reserve(run.pixels.size());
    for (Pixel p : run.pixels) pts.push_back({static_cast<double>(p.col), static_cast<double>(p.row)});
    std::vector<bool> keep(pts.size(), false);
    keep.front() = keep.back() = true;
    simplify(pts, 0, pts.size() - 1, kSimplifyTolPx, keep);
    Edge e;
    e.a = static_cast<NodeId>(run.from);
    e.b = static_cast<NodeId>(run.to);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (keep[i]) e.polyline.push_back(transform.pixel_to_world({pts[i].x, pts[i].y}));
    }
    edges.push_back(std::move(e));
  }

  RoadGraph graph = RoadGraph::assemble(std::move(nodes), std::move(edges));
  if (graph.empty()) throw DegenerateInput("no road segments survived extraction");
  return graph;
}

Extraction extract_roads(const ConfidenceRaster& raster, const ExtractParams& params) {
  params.validate();
  const BinaryMask mask = binarize(raster, params.threshold);
  std::vector<PixelChain> chains = trace_chains(thin(mask), params);
  chains = join_chains(chains, raster, params);
  chains = filter_endpoints(chains, params);
  chains = extend_ends(chains, mask, params);
  RoadGraph graph = build_graph(chains, params, raster.transform());
  return {std::move(chains), std::move(graph)};
}

std::string chains_to_geojson(const std::vector<PixelChain>& chains,
                              const GeoTransform& transform) {
  nlohmann::json features = nlohmann::json::array();
  for (std::size_t i = 0; i < chains.size(); ++i) {
    nlohmann::json coords = nlohmann::json::array();
    for (Pixel p : chains[i].pixels) {
      const Point w = transform.pixel_to_world({static_cast<double>(p.col),
                                                static_cast<double>(p.row)});
      coords.push_back({w.x, w.y});
    }
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
                        {"properties",
                         {{"chain", i},
                          {"pixels", chains[i].pixels.size()},
                          {"start_fixed", chains[i].start_fixed},
                          {"end_fixed", chains[i].end_fixed}}}});
  }
  nlohmann::json doc = {{"type", "FeatureCollection"}, {"features", features}};
  return doc.dump(1) + "\n";
}

}  // namespace streetaddr
