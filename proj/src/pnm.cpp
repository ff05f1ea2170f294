#include "gcontour/pnm.hpp"

#include <fstream>
#include <sstream>

#include "gcontour/errors.hpp"

namespace gc {

namespace {

[[noreturn]] void fail(const std::string& what, std::size_t offset) {
  std::ostringstream msg;
  msg << "pnm: " << what << " at byte " << offset;
  throw FormatError(msg.str());
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

// Whitespace and '#' comments (which run to the end of the line) separate
// header tokens.
void skip_separators(const std::string& bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    if (is_space(bytes[pos])) {
      ++pos;
    } else if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else {
      return;
    }
  }
}

int parse_header_int(const std::string& bytes, std::size_t& pos, const char* name) {
  skip_separators(bytes, pos);
  if (pos >= bytes.size()) fail(std::string("missing ") + name, pos);
  if (bytes[pos] < '0' || bytes[pos] > '9') fail(std::string("bad ") + name, pos);
  long value = 0;
  while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
    value = value * 10 + (bytes[pos] - '0');
    if (value > 1000000000L) fail(std::string(name) + " out of range", pos);
    ++pos;
  }
  return static_cast<int>(value);
}

}  // namespace

PnmImage parse_pnm(const std::string& bytes) {
  std::size_t pos = 0;
  if (bytes.size() < 2 || bytes[0] != 'P') fail("not a PNM file", 0);
  PnmImage img;
  if (bytes[1] == '5') {
    img.channels = 1;
  } else if (bytes[1] == '6') {
    img.channels = 3;
  } else {
    fail("unsupported magic (want P5 or P6)", 1);
  }
  pos = 2;

  img.width = parse_header_int(bytes, pos, "width");
  img.height = parse_header_int(bytes, pos, "height");
  const std::size_t maxval_at = pos;
  img.maxval = parse_header_int(bytes, pos, "maxval");
  if (img.width <= 0 || img.height <= 0) fail("empty image", maxval_at);
  if (img.maxval < 1 || img.maxval > 255) fail("maxval not in [1, 255]", maxval_at);

  // Exactly one whitespace byte separates the header from the raster.
  if (pos >= bytes.size() || !is_space(bytes[pos])) fail("missing raster separator", pos);
  ++pos;

  const std::size_t want =
      static_cast<std::size_t>(img.width) * img.height * img.channels;
  if (bytes.size() - pos < want) fail("truncated raster", bytes.size());
  img.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                  bytes.begin() + static_cast<std::ptrdiff_t>(pos + want));
  return img;
}

PnmImage read_pnm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("pnm: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pnm(buf.str());
}

void write_pgm(const std::string& path, int width, int height,
               const std::vector<std::uint8_t>& data) {
  if (static_cast<std::size_t>(width) * height != data.size()) {
    throw Error("write_pgm: data size does not match dimensions");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("write_pgm: cannot open " + path);
  out << "P5\n" << width << " " << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("write_pgm: write failed for " + path);
}

}  // namespace gc
