#pragma once

// Projective space PR^k: finite vectors modulo addition of a common constant.
//
//   d(u, v) = max_i (u_i - v_i) + max_i (v_i - u_i)
//   D(A)    = sup_{u,v} d(Au, Av)   (projective diameter)

#include <cstdint>
#include <optional>
#include <vector>

#include "maxplus/semiring.hpp"

namespace maxplus {

/// Canonical representative of a parallelism class: max coordinate is 0.
template <Backing T>
class ProjVector {
 public:
  ProjVector() = default;

  /// x - max_i x_i.  Rejects vectors with an ε coordinate.
  static ProjVector canonical(const Vector<T>& x);

  std::size_t size() const { return coords_.size(); }
  const T& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<T>& coords() const { return coords_; }

  /// ‖x‖ = max - min = -min for the canonical representative.
  T norm() const;

  Vector<T> to_vector() const { return Vector<T>::from_values(coords_); }

  friend bool operator==(const ProjVector& a, const ProjVector& b)
    requires is_exact_v<T>
  {
    return a.coords_ == b.coords_;
  }

 private:
  std::vector<T> coords_;
};

template <Backing T>
bool nearly_equal(const ProjVector<T>& a, const ProjVector<T>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!nearly_equal<T>(a[i], b[i], tol)) return false;
  }
  return true;
}

/// Nonnegative value or +∞.
template <Backing T>
struct ProjDistance {
  std::optional<T> finite;

  static ProjDistance infinite() { return {}; }
  bool is_infinite() const { return !finite.has_value(); }
  const T& value() const {
    if (!finite) throw ContractViolation("projective distance is infinite");
    return *finite;
  }
  /// d ≤ bound (false when d is +∞).
  bool at_most(const T& bound) const { return finite && !(bound < *finite); }
};

template <Backing T>
ProjDistance<T> proj_dist(const Vector<T>& u, const Vector<T>& v);

/// Max over column pairs of proj_dist; +∞ iff some entry is ε.
template <Backing T>
ProjDistance<T> proj_diameter(const Matrix<T>& a);

struct SampledDiameter {
  double sampled_sup = 0.0;  ///< best d(Au, Av) seen over the random pairs
  std::size_t samples = 0;
};

/// Random-pair lower estimate of D(A) for a fully finite matrix.  Throws
/// ContractViolation if some sampled pair exceeds the column-pair value.
template <Backing T>
SampledDiameter proj_diameter_sampled(const Matrix<T>& a, std::size_t samples,
                                      std::uint64_t seed);

/// Columns pairwise proportional in the max-plus sense (all-ε columns are
/// ignored).  Rejects the all-ε matrix.
template <Backing T>
bool is_rank_one(const Matrix<T>& a, double tol = default_tolerance<T>());

/// Canonical representative of π(A): A minus its largest entry.  Rejects the
/// all-ε matrix.
template <Backing T>
Matrix<T> canonical_matrix(const Matrix<T>& a);

}  // namespace maxplus
