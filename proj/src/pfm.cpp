#include "lfc/pfm.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "lfc/error.hpp"

namespace lfc::pfm {

namespace {

std::uint32_t byteswap32(std::uint32_t v) {
  return ((v & 0xFFu) << 24) | ((v & 0xFF00u) << 8) | ((v >> 8) & 0xFF00u) | (v >> 24);
}

std::string next_token(std::istream& in) {
  std::string tok;
  in >> tok;
  return tok;
}

}  // namespace

void write(const ScalarMap& map, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << "Pf\n" << map.width() << ' ' << map.height() << "\n-1.0\n";

  std::vector<std::uint32_t> row(static_cast<std::size_t>(map.width()));
  for (int y = map.height() - 1; y >= 0; --y) {
    const auto src = map.row(y);
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::uint32_t bits = std::bit_cast<std::uint32_t>(src[i]);
      if constexpr (std::endian::native == std::endian::big) bits = byteswap32(bits);
      row[i] = bits;
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(std::uint32_t)));
  }
  if (!out) throw IoError("write failed: " + path.string());
}

ScalarMap read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path.string());

  const std::string magic = next_token(in);
  if (magic == "PF") throw FormatError(path.string() + ": 3-channel PFM not supported for maps");
  if (magic != "Pf") throw FormatError(path.string() + ": not a PFM file");

  int width = 0, height = 0;
  double scale = 0.0;
  if (!(in >> width >> height >> scale) || width <= 0 || height <= 0 || scale == 0.0) {
    throw FormatError(path.string() + ": malformed PFM header");
  }
  in.get();  // single whitespace byte ends the header

  const bool little = scale < 0.0;
  const bool swap = little != (std::endian::native == std::endian::little);

  ScalarMap map(width, height);
  std::vector<std::uint32_t> row(static_cast<std::size_t>(width));
  for (int y = height - 1; y >= 0; --y) {
    in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size() * sizeof(std::uint32_t)));
    if (!in) throw FormatError(path.string() + ": truncated PFM data");
    auto dst = map.row(y);
    for (std::size_t i = 0; i < row.size(); ++i) {
      dst[i] = std::bit_cast<float>(swap ? byteswap32(row[i]) : row[i]);
    }
  }
  return map;
}

}  // namespace lfc::pfm
