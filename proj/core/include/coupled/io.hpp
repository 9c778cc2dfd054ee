#pragma once

#include "coupled/linalg.hpp"
#include "coupled/tensor.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace coupled::io {

// Dense matrix files.
//   text   (.dmt): "DMT1", "rows cols", then one line per row, 17 significant digits.
//   binary (.dmb): "DMB1", rows and cols as u64 LE, then rows*cols binary64 LE,
//                  column-major.
// Tensor files (.dtt / .dtb) use magic "DTT1" / "DTB1", three dims, and the
// mode-1 linearization (text rows are rows of the mode-1 unfolding).

enum class Encoding { text, binary };

void write_matrix(std::ostream& os, MatrixCRef m, Encoding enc);
[[nodiscard]] Matrix read_matrix(std::istream& is);

void write_tensor(std::ostream& os, const Tensor3& t, Encoding enc);
[[nodiscard]] Tensor3 read_tensor(std::istream& is);

/// Encoding picked from the extension (.dmt/.dtt text, anything else binary).
void save_matrix(const std::filesystem::path& path, MatrixCRef m);
[[nodiscard]] Matrix load_matrix(const std::filesystem::path& path);
void save_tensor(const std::filesystem::path& path, const Tensor3& t);
[[nodiscard]] Tensor3 load_tensor(const std::filesystem::path& path);

/// Shortest round-tripping text for a double at 17 significant digits.
[[nodiscard]] std::string format_double(double v);

}  // namespace coupled::io
