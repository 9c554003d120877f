#pragma once

#include <filesystem>

#include "lfc/image.hpp"

namespace lfc::png {

/// Decodes any PNG to 8-bit RGB and scales samples by 1/255.
ViewImage read(const std::filesystem::path& path);

/// Clamps to [0,1], rounds to 8 bits and writes RGB.
void write(const ViewImage& img, const std::filesystem::path& path);

}  // namespace lfc::png
