#include "mpmm/matrix_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hex_util.hpp"

namespace mpmm {

namespace {

template <ExtendedFloat T>
T element_from_hex(std::string_view text, const PrecisionSpec& prec) {
  if constexpr (std::same_as<T, DoubleDouble>) {
    return dd_from_hex(text);
  } else if constexpr (std::same_as<T, QuadDouble>) {
    return qd_from_hex(text);
  } else {
    return big_from_hex(text, prec.bits);
  }
}

template <ExtendedFloat T>
Matrix<T> read_body(std::istream& in, std::size_t rows, std::size_t cols, const PrecisionSpec& prec) {
  Matrix<T> m(rows, cols, prec);
  std::string line;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) throw FormatError("matrix dump truncated at row " + std::to_string(i));
    std::istringstream fields(line);
    std::string token;
    std::size_t j = 0;
    while (fields >> token) {
      if (j >= cols) throw FormatError("too many elements in row " + std::to_string(i));
      m(i, j++) = element_from_hex<T>(token, prec);
    }
    if (j != cols) throw FormatError("too few elements in row " + std::to_string(i));
  }
  return m;
}

}  // namespace

template <ExtendedFloat T>
void write_matrix(std::ostream& out, const Matrix<T>& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << to_string(m.precision()) << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j != 0) out << ' ';
      out << to_hex(m(i, j));
    }
    out << '\n';
  }
}

AnyMatrix read_matrix(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw FormatError("empty matrix dump");
  std::istringstream hs(header);
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string prec_text;
  std::string extra;
  if (!(hs >> rows >> cols >> prec_text) || (hs >> extra) || rows == 0 || cols == 0) {
    throw FormatError("bad matrix header '" + header + "'");
  }
  PrecisionSpec prec;
  try {
    prec = parse_precision(prec_text);
  } catch (const UsageError& e) {
    throw FormatError(e.what());
  }
  return with_scalar_type(prec, [&]<class T>(std::type_identity<T>) -> AnyMatrix {
    return read_body<T>(in, rows, cols, prec);
  });
}

template void write_matrix(std::ostream&, const Matrix<DoubleDouble>&);
template void write_matrix(std::ostream&, const Matrix<QuadDouble>&);
template void write_matrix(std::ostream&, const Matrix<BigFloat>&);

}  // namespace mpmm
