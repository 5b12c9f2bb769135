#include "maxplus/semiring.hpp"

#include <cctype>

namespace maxplus {

template <Backing T>
Matrix<T> Matrix<T>::parse(std::string_view text) {
  std::vector<std::vector<Scalar<T>>> rows(1);
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (token == "eps" || token == "-inf" || token == "ε") {
      rows.back().emplace_back();
    } else {
      rows.back().emplace_back(parse_number<T>(token));
    }
    token.clear();
  };
  for (char c : text) {
    if (c == ';') {
      flush();
      rows.emplace_back();
    } else if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  if (!rows.empty() && rows.back().empty()) rows.pop_back();
  if (rows.empty()) throw InputError("empty matrix literal");
  return from_rows(rows);
}

template <Backing T>
std::string Matrix<T>::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < dim_; ++i) {
    out += i ? "; " : "";
    for (std::size_t j = 0; j < dim_; ++j) {
      if (j) out += ' ';
      out += maxplus::to_string((*this)(i, j));
    }
  }
  return out + "]";
}

template class Matrix<Rational>;
template class Matrix<double>;

}  // namespace maxplus
