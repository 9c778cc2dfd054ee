#include "coupled/pgm.hpp"

#include "coupled/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace coupled::pgm {

namespace {

void skip_space_and_comments(std::istream& is) {
  for (;;) {
    const int c = is.peek();
    if (c == '#') {
      is.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    } else if (c != std::char_traits<char>::eof() && std::isspace(c)) {
      is.get();
    } else {
      return;
    }
  }
}

long read_header_field(std::istream& is, const char* what) {
  skip_space_and_comments(is);
  std::string digits;
  while (std::isdigit(is.peek())) digits.push_back(static_cast<char>(is.get()));
  if (digits.empty() || digits.size() > 9) {
    throw FormatError(std::string("malformed PGM header: bad ") + what);
  }
  return std::stol(digits);
}

}  // namespace

Matrix read(std::istream& is) {
  char magic[2] = {};
  if (!is.read(magic, 2)) throw FormatError("malformed PGM header: missing magic");
  if (magic[0] != 'P' || magic[1] != '5') {
    throw FormatError(std::string("unsupported PGM variant '") + magic[0] + magic[1] +
                      "' (only binary P5 is accepted)");
  }
  const long width = read_header_field(is, "width");
  const long height = read_header_field(is, "height");
  const long maxval = read_header_field(is, "maxval");
  if (width <= 0 || height <= 0) throw FormatError("malformed PGM header: zero dimension");
  if (maxval < 1 || maxval > 255) {
    throw FormatError("unsupported PGM maxval " + std::to_string(maxval));
  }
  if (!std::isspace(is.get())) throw FormatError("malformed PGM header: no separator before data");

  std::vector<unsigned char> bytes(static_cast<std::size_t>(width * height));
  if (!is.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()))) {
    throw FormatError("truncated PGM payload");
  }
  Matrix out(height, width);
  for (long i = 0; i < height; ++i) {
    for (long j = 0; j < width; ++j) {
      const unsigned char v = bytes[static_cast<std::size_t>(i * width + j)];
      if (v > maxval) throw FormatError("PGM sample exceeds maxval");
      out(i, j) = v;
    }
  }
  return out;
}

Matrix load(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open '" + path.string() + "'");
  try {
    return read(is);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write(std::ostream& os, MatrixCRef image) {
  if (image.size() == 0) throw ShapeError("cannot write an empty image");
  require_finite(image, "image");
  os << "P5\n" << image.cols() << ' ' << image.rows() << "\n255\n";
  std::vector<char> bytes(static_cast<std::size_t>(image.size()));
  for (Index i = 0; i < image.rows(); ++i) {
    for (Index j = 0; j < image.cols(); ++j) {
      const double v = std::clamp(std::round(image(i, j)), 0.0, 255.0);
      bytes[static_cast<std::size_t>(i * image.cols() + j)] =
          static_cast<char>(static_cast<unsigned char>(v));
    }
  }
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw FormatError("PGM write failed");
}

void save(const std::filesystem::path& path, MatrixCRef image) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open '" + path.string() + "' for writing");
  write(os, image);
}

}  // namespace coupled::pgm
