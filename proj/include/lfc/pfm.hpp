#pragma once

#include <filesystem>

#include "lfc/image.hpp"

namespace lfc::pfm {

// Single-channel Portable Float Map. Written little-endian (negative scale)
// with rows stored bottom-to-top. Reading accepts either byte order.
void write(const ScalarMap& map, const std::filesystem::path& path);
ScalarMap read(const std::filesystem::path& path);

}  // namespace lfc::pfm
