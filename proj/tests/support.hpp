#pragma once

// Test-only ground truth: plain loops over boxes, no solver involved.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#ifndef PPNFIFO_MODELS_DIR
#define PPNFIFO_MODELS_DIR "models"
#endif

namespace brute {

using Pt = std::vector<std::int64_t>;
using Pair = std::pair<Pt, Pt>;
using TimeFn = std::function<Pt(const Pt&)>;

inline std::string model(const std::string& file) { return std::string(PPNFIFO_MODELS_DIR) + "/" + file; }

inline std::int64_t floordiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct Tile {
  std::vector<Pt> normals;
  Pt sizes;
};

inline Pt tile_coords(const Pt& x, const Tile& t) {
  Pt out;
  for (std::size_t k = 0; k < t.normals.size(); ++k) {
    std::int64_t dot = 0;
    for (std::size_t j = 0; j < x.size(); ++j) dot += t.normals[k][j] * x[j];
    out.push_back(floordiv(dot, t.sizes[k]));
  }
  return out;
}

inline Pt tiled_point(const Pt& x, const Tile& t) {
  Pt out = tile_coords(x, t);
  out.insert(out.end(), x.begin(), x.end());
  return out;
}

inline TimeFn identity() {
  return [](const Pt& x) { return x; };
}

inline TimeFn tiled_time(const Tile& t) {
  return [t](const Pt& x) { return tiled_point(x, t); };
}

// Pairs (y - d, y) with both ends in [lo0, hi0] x [lo1, hi1].
inline std::vector<Pair> uniform_pairs(std::int64_t lo0, std::int64_t hi0, std::int64_t lo1, std::int64_t hi1,
                                       const Pt& d) {
  std::vector<Pair> out;
  for (std::int64_t a = lo0; a <= hi0; ++a) {
    for (std::int64_t b = lo1; b <= hi1; ++b) {
      std::int64_t pa = a - d[0], pb = b - d[1];
      if (pa >= lo0 && pa <= hi0 && pb >= lo1 && pb <= hi1) out.push_back({{pa, pb}, {a, b}});
    }
  }
  return out;
}

// Jacobi compute->compute dependences at (T, N) by offset.
inline std::vector<Pair> jacobi_dep(std::int64_t T, std::int64_t N, const Pt& d) {
  return uniform_pairs(1, T, 1, N, d);
}

// Index of the first differing tile coordinate (0-based), n when all equal,
// -1 when the producer tile runs later.
inline int crossing_depth(const Pt& tp, const Pt& tc, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    if (tp[k] < tc[k]) return static_cast<int>(k);
    if (tp[k] > tc[k]) return -1;
  }
  return static_cast<int>(n);
}

inline std::vector<std::vector<Pair>> split(const std::vector<Pair>& pairs, const Tile& t) {
  std::size_t n = t.normals.size();
  std::vector<std::vector<Pair>> parts(n + 1);
  for (const auto& [x, y] : pairs) {
    int k = crossing_depth(tile_coords(x, t), tile_coords(y, t), n);
    if (k >= 0) parts[static_cast<std::size_t>(k)].push_back({x, y});
  }
  return parts;
}

inline bool in_order(const std::vector<Pair>& pairs, const TimeFn& sp, const TimeFn& sc) {
  std::vector<std::pair<Pt, Pt>> rs;
  for (const auto& [x, y] : pairs) rs.push_back({sc(y), sp(x)});
  std::sort(rs.begin(), rs.end());
  for (std::size_t i = 1; i < rs.size(); ++i) {
    if (rs[i].second < rs[i - 1].second) return false;
  }
  return true;
}

inline bool unicity(const std::vector<Pair>& pairs) {
  std::set<Pt> seen;
  for (const auto& p : pairs) {
    if (!seen.insert(p.first).second) return false;
  }
  return true;
}

// Peak live values; a value dies at its last read, reads go first on ties.
inline std::int64_t maxlive(const std::vector<Pair>& pairs, const TimeFn& sp, const TimeFn& sc) {
  std::map<Pt, Pt> last;
  for (const auto& [x, y] : pairs) {
    Pt ty = sc(y);
    auto it = last.find(x);
    if (it == last.end() || it->second < ty) last[x] = ty;
  }
  std::vector<std::pair<Pt, int>> ev;
  for (const auto& [x, t] : last) {
    ev.push_back({sp(x), 1});
    ev.push_back({t, 0});
  }
  std::sort(ev.begin(), ev.end());
  std::int64_t live = 0, peak = 0;
  for (const auto& e : ev) {
    live += e.second == 1 ? 1 : -1;
    peak = std::max(peak, live);
  }
  return peak;
}

// Random case for the partition property.
struct UniformCase {
  std::int64_t h = 1, w = 1;  // domain [0, h) x [0, w)
  Pt d;
  Tile tile;

  std::string model_json() const {
    std::ostringstream o;
    auto off = [](const char* v, std::int64_t k) {
      std::ostringstream s;
      s << v;
      if (k > 0) s << " - " << k;
      if (k < 0) s << " + " << -k;
      return s.str();
    };
    o << R"({"name": "uniform", "params": [], "processes": [)"
      << R"({"name": "s", "dims": ["t", "i"], "domain": "{ [t, i] : 0 <= t < )" << h << " and 0 <= i < " << w
      << R"( }", "schedule": ["t", "i"]}], "channels": [)"
      << R"({"id": "c", "producer": "s", "consumer": "s", "relation": "{ [)" << off("t", d[0]) << ", "
      << off("i", d[1]) << R"(] -> [t, i] : true }"}]})";
    return o.str();
  }

  std::string describe() const {
    std::ostringstream o;
    o << "domain " << h << "x" << w << " d=(" << d[0] << "," << d[1] << ") tau=((" << tile.normals[0][0] << ","
      << tile.normals[0][1] << "),(" << tile.normals[1][0] << "," << tile.normals[1][1] << ")) b=(" << tile.sizes[0]
      << "," << tile.sizes[1] << ")";
    return o.str();
  }
};

inline UniformCase random_uniform_case(std::mt19937_64& rng) {
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  UniformCase c;
  c.h = pick(1, 12);
  c.w = pick(1, 12);
  do {
    c.d = {pick(0, 2), pick(-2, 2)};
  } while (c.d[0] == 0 && c.d[1] <= 0);
  for (;;) {
    Pt t1{pick(-2, 2), pick(-2, 2)}, t2{pick(-2, 2), pick(-2, 2)};
    if (t1[0] * t2[1] - t1[1] * t2[0] == 0) continue;
    if (t1[0] * c.d[0] + t1[1] * c.d[1] < 0 || t2[0] * c.d[0] + t2[1] * c.d[1] < 0) continue;
    c.tile = {{t1, t2}, {pick(2, 4), pick(2, 4)}};
    return c;
  }
}

}  // namespace brute
