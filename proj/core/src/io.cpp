#include "coupled/io.hpp"

#include "coupled/errors.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace coupled::io {

namespace {

constexpr std::string_view kMatrixText = "DMT1";
constexpr std::string_view kMatrixBinary = "DMB1";
constexpr std::string_view kTensorText = "DTT1";
constexpr std::string_view kTensorBinary = "DTB1";

void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (std::size_t i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffU);
  os.write(bytes.data(), 8);
}

std::uint64_t get_u64(std::istream& is) {
  std::array<unsigned char, 8> bytes{};
  if (!is.read(reinterpret_cast<char*>(bytes.data()), 8)) {
    throw FormatError("truncated binary header");
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

void put_doubles(std::ostream& os, const double* data, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) put_u64(os, std::bit_cast<std::uint64_t>(data[i]));
}

void get_doubles(std::istream& is, double* data, std::size_t count) {
  std::array<unsigned char, 8> bytes{};
  for (std::size_t i = 0; i < count; ++i) {
    if (!is.read(reinterpret_cast<char*>(bytes.data()), 8)) {
      throw FormatError("truncated binary payload: expected " + std::to_string(count) +
                        " values, got " + std::to_string(i));
    }
    std::uint64_t v = 0;
    for (std::size_t b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
    data[i] = std::bit_cast<double>(v);
  }
}

std::string read_magic(std::istream& is) {
  std::string magic(4, '\0');
  if (!is.read(magic.data(), 4)) throw FormatError("file too short for a magic header");
  return magic;
}

Index checked_dim(std::uint64_t v) {
  if (v == 0 || v > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max())) {
    throw FormatError("dimension " + std::to_string(v) + " out of range");
  }
  return static_cast<Index>(v);
}

Index read_text_dim(std::istream& is) {
  std::string tok;
  if (!(is >> tok)) throw FormatError("truncated text header");
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw FormatError("bad dimension token '" + tok + "'");
  }
  return checked_dim(v);
}

double read_text_value(std::istream& is) {
  std::string tok;
  if (!(is >> tok)) throw FormatError("truncated text payload");
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw FormatError("bad numeric token '" + tok + "'");
  }
  return v;
}

void expect_newline_after_magic(std::istream& is) {
  if (is.get() != '\n') throw FormatError("magic header must be followed by a newline");
}

void write_rows_text(std::ostream& os, MatrixCRef m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ' ';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open '" + path.string() + "' for writing");
  return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open '" + path.string() + "' for reading");
  return is;
}

bool is_text_path(const std::filesystem::path& path) {
  const auto ext = path.extension();
  return ext == ".dmt" || ext == ".dtt";
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 40> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return {buf.data(), ptr};
}

void write_matrix(std::ostream& os, MatrixCRef m, Encoding enc) {
  if (enc == Encoding::text) {
    os << kMatrixText << '\n' << m.rows() << ' ' << m.cols() << '\n';
    write_rows_text(os, m);
  } else {
    os.write(kMatrixBinary.data(), 4);
    put_u64(os, static_cast<std::uint64_t>(m.rows()));
    put_u64(os, static_cast<std::uint64_t>(m.cols()));
    const Matrix dense = m;
    put_doubles(os, dense.data(), static_cast<std::size_t>(dense.size()));
  }
  if (!os) throw FormatError("write failed");
}

Matrix read_matrix(std::istream& is) {
  const std::string magic = read_magic(is);
  Matrix m;
  if (magic == kMatrixText) {
    expect_newline_after_magic(is);
    const Index rows = read_text_dim(is);
    const Index cols = read_text_dim(is);
    m.resize(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) m(i, j) = read_text_value(is);
  } else if (magic == kMatrixBinary) {
    const Index rows = checked_dim(get_u64(is));
    const Index cols = checked_dim(get_u64(is));
    m.resize(rows, cols);
    get_doubles(is, m.data(), static_cast<std::size_t>(m.size()));
  } else {
    throw FormatError("not a dense matrix file (magic '" + magic + "')");
  }
  require_finite(m, "matrix file");
  return m;
}

void write_tensor(std::ostream& os, const Tensor3& t, Encoding enc) {
  const auto [n1, n2, n3] = t.dims();
  if (enc == Encoding::text) {
    os << kTensorText << '\n' << n1 << ' ' << n2 << ' ' << n3 << '\n';
    write_rows_text(os, t.unfold1_view());
  } else {
    os.write(kTensorBinary.data(), 4);
    put_u64(os, static_cast<std::uint64_t>(n1));
    put_u64(os, static_cast<std::uint64_t>(n2));
    put_u64(os, static_cast<std::uint64_t>(n3));
    put_doubles(os, t.entries().data(), t.entries().size());
  }
  if (!os) throw FormatError("write failed");
}

Tensor3 read_tensor(std::istream& is) {
  const std::string magic = read_magic(is);
  Tensor3::Dims dims{};
  std::vector<double> entries;
  if (magic == kTensorText) {
    expect_newline_after_magic(is);
    for (auto& d : dims) d = read_text_dim(is);
    const Index cols = dims[1] * dims[2];
    entries.resize(static_cast<std::size_t>(dims[0] * cols));
    for (Index i = 0; i < dims[0]; ++i)
      for (Index c = 0; c < cols; ++c)
        entries[static_cast<std::size_t>(i + dims[0] * c)] = read_text_value(is);
  } else if (magic == kTensorBinary) {
    for (auto& d : dims) d = checked_dim(get_u64(is));
    entries.resize(static_cast<std::size_t>(dims[0] * dims[1] * dims[2]));
    get_doubles(is, entries.data(), entries.size());
  } else {
    throw FormatError("not a dense tensor file (magic '" + magic + "')");
  }
  return Tensor3(dims, std::move(entries));
}

void save_matrix(const std::filesystem::path& path, MatrixCRef m) {
  auto os = open_out(path);
  write_matrix(os, m, is_text_path(path) ? Encoding::text : Encoding::binary);
}

Matrix load_matrix(const std::filesystem::path& path) {
  auto is = open_in(path);
  return read_matrix(is);
}

void save_tensor(const std::filesystem::path& path, const Tensor3& t) {
  auto os = open_out(path);
  write_tensor(os, t, is_text_path(path) ? Encoding::text : Encoding::binary);
}

Tensor3 load_tensor(const std::filesystem::path& path) {
  auto is = open_in(path);
  return read_tensor(is);
}

}  // namespace coupled::io
