#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gc {

// Binary PGM (P5) or PPM (P6) with 8-bit samples. `data` is row-major and
// interleaved; maxval is kept so values can be normalized exactly.
struct PnmImage {
  int width = 0;
  int height = 0;
  int channels = 1;  // 1 for P5, 3 for P6
  int maxval = 255;
  std::vector<std::uint8_t> data;

  std::uint8_t at(int row, int col, int k = 0) const {
    return data[(static_cast<std::size_t>(row) * width + col) * channels + k];
  }
  // Sample scaled to [0, 1] by maxval.
  double normalized(int row, int col, int k = 0) const {
    return static_cast<double>(at(row, col, k)) / maxval;
  }
};

// Parses the raw bytes of a P5/P6 file. Malformed input throws FormatError
// naming the byte offset of the problem. Only 8-bit rasters (maxval <= 255)
// are accepted.
PnmImage parse_pnm(const std::string& bytes);

PnmImage read_pnm(const std::string& path);

// 8-bit binary PGM, maxval 255.
void write_pgm(const std::string& path, int width, int height,
               const std::vector<std::uint8_t>& data);

}  // namespace gc
