#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcoords/tree.hpp"

namespace mc {

/// Versioned little-endian container: magic "MTRE", u32 version, fixed
/// header (rep_type, n, k, d, r, alpha with 0 = infinity), type-dependent
/// payload, nested tagged oracle descriptor, trailing CRC-32 of everything
/// before it. Coordinates are raw IEEE 754 binary64 pairs, so round trips
/// are bit-exact.
std::vector<std::uint8_t> serialize(const MonodromyTree& tree);
MonodromyTree deserialize(const std::vector<std::uint8_t>& bytes);

void write_tree_file(const std::string& path, const MonodromyTree& tree);
MonodromyTree read_tree_file(const std::string& path);

/// Human-readable mirror of the binary format. Coordinates are printed as
/// C hex-floats so the debug export is bit-exact too.
nlohmann::json tree_to_json(const MonodromyTree& tree);
void write_tree_json(const std::string& path, const MonodromyTree& tree);

}  // namespace mc
