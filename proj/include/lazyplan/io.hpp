#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lazyplan/algorithms.hpp"
#include "lazyplan/roadmap.hpp"
#include "lazyplan/world.hpp"

namespace lazyplan::io {

// Canonical float form used by every serializer: %.17g, so values
// round-trip exactly and identical data yields identical bytes.
std::string fmt_g17(double v);

// World JSON: {dim, lo[], hi[], seed, obstacles:[{min[], max[]}]} in
// exactly that field order.
std::string world_to_json(const World& world);
World world_from_json(const std::string& text);

// Roadmap JSON: {dim, n, radius, gamma, seed, vertices[][], offsets[],
// neighbors[], weights[]} with CSR adjacency.
std::string roadmap_to_json(const Roadmap& rm);
Roadmap roadmap_from_json(const std::string& text);

// Roadmap binary: magic "LPRM0001", then little-endian u32 dim, u64 n,
// f64 radius, f64 gamma, u64 seed, n*dim f64 coordinates vertex-major,
// u64 m, (n+1) u64 offsets, m i32 neighbor ids, m f64 weights.
std::string roadmap_to_binary(const Roadmap& rm);
Roadmap roadmap_from_binary(const std::string& bytes);

// SearchResult JSON: {algorithm, epsilon, status, cost, path[],
// counters{...}, seeds{world, graph}}. cost is the string "inf" when no
// path exists.
std::string result_to_json(const SearchResult& res, std::uint64_t world_seed,
                           std::uint64_t graph_seed);

std::string read_file(const std::string& path);
// Writes via a temp file in the same directory plus rename.
void write_file_atomic(const std::string& path, const std::string& content);

void save_world(const World& world, const std::string& path);
World load_world(const std::string& path);

// Binary when the path ends in .bin, JSON otherwise.
void save_roadmap(const Roadmap& rm, const std::string& path);
// Sniffs the binary magic, falls back to JSON.
Roadmap load_roadmap(const std::string& path);

}  // namespace lazyplan::io
