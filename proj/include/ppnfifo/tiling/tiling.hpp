#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ppnfifo/ppn/ppn.hpp"

namespace ppnfifo::tiling {

/// Hyperplane normals tau_k over the process dims and band widths b_k.
/// The tile coordinate is phi_k = floor(tau_k . x / b_k).
struct Tiling {
  std::vector<std::vector<std::int64_t>> normals;
  std::vector<std::int64_t> sizes;

  std::size_t depth() const { return normals.size(); }
  bool operator==(const Tiling&) const = default;
};

using TilingMap = std::map<std::string, Tiling>;

/// Rank of an integer matrix (fraction-free elimination).
std::size_t integer_rank(const std::vector<std::vector<std::int64_t>>& rows);

/// Throws InvalidTiling unless `t` fits `n_dims` dims with independent normals.
void validate(const Tiling& t, std::size_t n_dims);

/// Names of the tile coordinates, fresh with respect to `taken`.
std::vector<std::string> tile_dim_names(std::size_t n, const std::vector<std::string>& taken);

/// Process over (phi_1..phi_n, dims) whose schedule is the identity on phi
/// followed by the original rows.
ppn::Process tile_process(const ppn::Process& p, const Tiling& t);

/// The dataflow relation in tiled coordinates on both sides. An empty tiling
/// leaves that side as is. DepthMismatch when both sides are tiled with
/// different depths.
ppn::Channel lift_relation(const ppn::Channel& c, const Tiling& tp, const Tiling& tc);

/// Tiles every process named in `tilings` and lifts all channels.
ppn::PPN tile_network(const ppn::PPN& net, const TilingMap& tilings);

TilingMap parse_tilings(std::string_view json_text);
TilingMap load_tilings(const std::filesystem::path& path);
std::string dump_tilings(const TilingMap& tilings);

}  // namespace ppnfifo::tiling
