#pragma once

// Max-plus scalars, vectors and square matrices.
//
//   a ⊕ b = max(a, b)      a ⊗ b = a + b
//   ε = -inf (neutral for ⊕, absorbing for ⊗),  e = 0 (neutral for ⊗)
//
// Matrix entry A(i, j) is the influence of coordinate j on coordinate i, so
// that x(n+1) = A ⊗ x(n) reads x_i(n+1) = max_j (A(i, j) + x_j(n)).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maxplus/errors.hpp"
#include "maxplus/numeric.hpp"

namespace maxplus {

template <Backing T>
class Scalar {
 public:
  /// ε
  Scalar() = default;
  explicit Scalar(T value) : value_(std::move(value)) {}

  static Scalar epsilon() { return Scalar(); }
  static Scalar unit() { return Scalar(from_int<T>(0)); }
  static Scalar of(long value) { return Scalar(from_int<T>(value)); }

  bool is_epsilon() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }

  const T& value() const {
    if (!value_) throw ContractViolation("value() called on epsilon");
    return *value_;
  }

  /// Total order with ε below every finite value.
  friend bool operator<(const Scalar& a, const Scalar& b) {
    if (!b.value_) return false;
    if (!a.value_) return true;
    return *a.value_ < *b.value_;
  }

  friend bool operator==(const Scalar& a, const Scalar& b)
    requires is_exact_v<T>
  {
    return a.value_ == b.value_;
  }

 private:
  std::optional<T> value_;
};

template <Backing T>
Scalar<T> oplus(const Scalar<T>& a, const Scalar<T>& b) {
  return a < b ? b : a;
}

template <Backing T>
Scalar<T> otimes(const Scalar<T>& a, const Scalar<T>& b) {
  if (a.is_epsilon() || b.is_epsilon()) return Scalar<T>::epsilon();
  return Scalar<T>(T(a.value() + b.value()));
}

template <Backing T>
bool nearly_equal(const Scalar<T>& a, const Scalar<T>& b, double tol) {
  if (a.is_epsilon() || b.is_epsilon()) return a.is_epsilon() && b.is_epsilon();
  return nearly_equal<T>(a.value(), b.value(), tol);
}

template <Backing T>
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t size) : coords_(size) {}
  explicit Vector(std::vector<Scalar<T>> coords) : coords_(std::move(coords)) {}

  static Vector filled(std::size_t size, const Scalar<T>& value) {
    return Vector(std::vector<Scalar<T>>(size, value));
  }
  /// All coordinates finite, taken from plain numbers.
  static Vector from_values(const std::vector<T>& values) {
    std::vector<Scalar<T>> coords;
    coords.reserve(values.size());
    for (const auto& v : values) coords.emplace_back(v);
    return Vector(std::move(coords));
  }

  std::size_t size() const { return coords_.size(); }
  const Scalar<T>& operator[](std::size_t i) const { return coords_[i]; }
  Scalar<T>& operator[](std::size_t i) { return coords_[i]; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  /// True iff no coordinate is ε.
  bool is_finite() const {
    for (const auto& c : coords_) {
      if (c.is_epsilon()) return false;
    }
    return true;
  }

  friend bool operator==(const Vector& a, const Vector& b)
    requires is_exact_v<T>
  {
    return a.coords_ == b.coords_;
  }

 private:
  std::vector<Scalar<T>> coords_;
};

template <Backing T>
bool nearly_equal(const Vector<T>& a, const Vector<T>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!nearly_equal(a[i], b[i], tol)) return false;
  }
  return true;
}

template <Backing T>
class Matrix {
 public:
  Matrix() = default;
  /// k×k matrix filled with ε.
  explicit Matrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    if (dim == 0) throw InputError("matrix dimension must be at least 1");
  }

  static Matrix from_rows(const std::vector<std::vector<Scalar<T>>>& rows) {
    Matrix out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) {
        throw InputError("matrix must be square: row " + std::to_string(i) + " has " +
                         std::to_string(rows[i].size()) + " entries, expected " +
                         std::to_string(rows.size()));
      }
      for (std::size_t j = 0; j < rows.size(); ++j) out(i, j) = rows[i][j];
    }
    return out;
  }

  /// Compact text form for fixtures: rows separated by ';', entries by
  /// whitespace or ',', ε written "eps" or "-inf".  "0 -1; -1 0".
  static Matrix parse(std::string_view text);

  /// e on the diagonal, ε elsewhere.
  static Matrix identity(std::size_t dim) {
    Matrix out(dim);
    for (std::size_t i = 0; i < dim; ++i) out(i, i) = Scalar<T>::unit();
    return out;
  }

  std::size_t dim() const { return dim_; }
  const Scalar<T>& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  Scalar<T>& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }

  Vector<T> column(std::size_t j) const {
    Vector<T> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  /// Index of the first row made only of ε, if any (condition I form).
  std::optional<std::size_t> first_epsilon_row() const {
    for (std::size_t i = 0; i < dim_; ++i) {
      bool any = false;
      for (std::size_t j = 0; j < dim_ && !any; ++j) any = (*this)(i, j).is_finite();
      if (!any) return i;
    }
    return std::nullopt;
  }
  bool is_row_finite() const { return !first_epsilon_row().has_value(); }

  bool is_fully_finite() const {
    for (const auto& entry : entries_) {
      if (entry.is_epsilon()) return false;
    }
    return true;
  }

  bool is_all_epsilon() const {
    for (const auto& entry : entries_) {
      if (entry.is_finite()) return false;
    }
    return true;
  }

  /// ‖A‖∞ = ⊕_{ij} A(i, j).
  Scalar<T> max_entry() const {
    Scalar<T> best;
    for (const auto& entry : entries_) best = oplus(best, entry);
    return best;
  }

  friend bool operator==(const Matrix& a, const Matrix& b)
    requires is_exact_v<T>
  {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

  std::string to_string() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Scalar<T>> entries_;
};

template <Backing T>
bool nearly_equal(const Matrix<T>& a, const Matrix<T>& b, double tol) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (!nearly_equal(a(i, j), b(i, j), tol)) return false;
    }
  }
  return true;
}

namespace detail {
inline void require_same_dim(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw InputError(std::string(op) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                     std::to_string(b) + ")");
  }
}
}  // namespace detail

/// (A ⊗ B)(i, j) = max_l A(i, l) + B(l, j)
template <Backing T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  detail::require_same_dim(a.dim(), b.dim(), "mat_mul");
  const std::size_t k = a.dim();
  Matrix<T> out(k);
  T sum{};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      std::optional<T> best;
      for (std::size_t l = 0; l < k; ++l) {
        const auto& ail = a(i, l);
        const auto& blj = b(l, j);
        if (ail.is_epsilon() || blj.is_epsilon()) continue;
        sum = ail.value() + blj.value();
        if (!best || *best < sum) best = sum;
      }
      if (best) out(i, j) = Scalar<T>(std::move(*best));
    }
  }
  return out;
}

template <Backing T>
Vector<T> mat_vec(const Matrix<T>& a, const Vector<T>& x) {
  detail::require_same_dim(a.dim(), x.size(), "mat_vec");
  const std::size_t k = a.dim();
  Vector<T> out(k);
  T sum{};
  for (std::size_t i = 0; i < k; ++i) {
    std::optional<T> best;
    for (std::size_t j = 0; j < k; ++j) {
      const auto& aij = a(i, j);
      if (aij.is_epsilon() || x[j].is_epsilon()) continue;
      sum = aij.value() + x[j].value();
      if (!best || *best < sum) best = sum;
    }
    if (best) out[i] = Scalar<T>(std::move(*best));
  }
  return out;
}

template <Backing T>
Matrix<T> mat_oplus(const Matrix<T>& a, const Matrix<T>& b) {
  detail::require_same_dim(a.dim(), b.dim(), "mat_oplus");
  Matrix<T> out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = oplus(a(i, j), b(i, j));
  }
  return out;
}

template <Backing T>
Vector<T> vec_oplus(const Vector<T>& u, const Vector<T>& v) {
  detail::require_same_dim(u.size(), v.size(), "vec_oplus");
  Vector<T> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = oplus(u[i], v[i]);
  return out;
}

/// A^n by repeated squaring; A^0 is the identity E by convention.
template <Backing T>
Matrix<T> mat_power(const Matrix<T>& a, unsigned long n) {
  Matrix<T> result = Matrix<T>::identity(a.dim());
  Matrix<T> base = a;
  bool first = true;
  while (n > 0) {
    if (n & 1UL) {
      result = first ? base : mat_mul(result, base);
      first = false;
    }
    n >>= 1;
    if (n > 0) base = mat_mul(base, base);
  }
  return result;
}

template <Backing T>
Matrix<T> scale(const Scalar<T>& a, const Matrix<T>& m) {
  Matrix<T> out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = otimes(a, m(i, j));
  }
  return out;
}

template <Backing T>
Vector<T> scale(const Scalar<T>& a, const Vector<T>& x) {
  Vector<T> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = otimes(a, x[i]);
  return out;
}

/// Conventional subtraction of `shift` from every finite entry.
template <Backing T>
Matrix<T> shifted(const Matrix<T>& m, const T& shift) {
  return scale(Scalar<T>(T(-shift)), m);
}

template <Backing T>
std::string to_string(const Scalar<T>& s) {
  return s.is_epsilon() ? std::string("-inf") : to_string<T>(s.value());
}

template <Backing T>
std::string to_string(const Vector<T>& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ", ";
    out += to_string(x[i]);
  }
  return out + ")";
}

}  // namespace maxplus
