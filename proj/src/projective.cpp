#include "maxplus/projective.hpp"

#include <cmath>
#include <random>

namespace maxplus {

template <Backing T>
ProjVector<T> ProjVector<T>::canonical(const Vector<T>& x) {
  if (x.size() == 0) throw InputError("cannot project an empty vector");
  if (!x.is_finite()) throw InputError("projective space is defined on finite vectors only");
  T top = x[0].value();
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (top < x[i].value()) top = x[i].value();
  }
  ProjVector out;
  out.coords_.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.coords_.push_back(T(x[i].value() - top));
  return out;
}

template <Backing T>
T ProjVector<T>::norm() const {
  T low = coords_.front();
  for (const auto& c : coords_) {
    if (c < low) low = c;
  }
  return T(-low);
}

template <Backing T>
ProjDistance<T> proj_dist(const Vector<T>& u, const Vector<T>& v) {
  detail::require_same_dim(u.size(), v.size(), "proj_dist");
  if (!u.is_finite() || !v.is_finite()) {
    throw InputError("proj_dist: vectors must be finite");
  }
  T up = u[0].value() - v[0].value();
  T down = v[0].value() - u[0].value();
  for (std::size_t i = 1; i < u.size(); ++i) {
    T diff = u[i].value() - v[i].value();
    if (up < diff) up = diff;
    T neg = -diff;
    if (down < neg) down = neg;
  }
  return ProjDistance<T>{T(up + down)};
}

template <Backing T>
ProjDistance<T> proj_diameter(const Matrix<T>& a) {
  if (!a.is_fully_finite()) return ProjDistance<T>::infinite();
  const std::size_t k = a.dim();
  std::vector<Vector<T>> columns;
  columns.reserve(k);
  for (std::size_t j = 0; j < k; ++j) columns.push_back(a.column(j));
  T best = from_int<T>(0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      T d = proj_dist(columns[i], columns[j]).value();
      if (best < d) best = d;
    }
  }
  return ProjDistance<T>{best};
}

template <Backing T>
SampledDiameter proj_diameter_sampled(const Matrix<T>& a, std::size_t samples,
                                      std::uint64_t seed) {
  const auto exact = proj_diameter(a);
  if (exact.is_infinite()) {
    throw InputError("sampled diameter requires a fully finite matrix");
  }
  std::mt19937_64 rng(seed);
  // Spread comparable to the matrix entries so both regimes of the max are hit.
  const double spread = 1.0 + to_double(exact.value()) + std::abs(to_double(a.max_entry().value()));
  std::uniform_real_distribution<double> coord(-4.0 * spread, 4.0 * spread);
  const long range = 16 * (static_cast<long>(spread) + 1);
  std::uniform_int_distribution<long> numerator(-range, range);
  std::uniform_int_distribution<long> denominator(1, 4);
  auto draw = [&]() -> Scalar<T> {
    if constexpr (is_exact_v<T>) {
      Rational q(numerator(rng), denominator(rng));
      q.canonicalize();
      return Scalar<T>(q);
    } else {
      return Scalar<T>(coord(rng));
    }
  };
  SampledDiameter out;
  out.samples = samples;
  const std::size_t k = a.dim();
  for (std::size_t s = 0; s < samples; ++s) {
    Vector<T> u(k), v(k);
    for (std::size_t i = 0; i < k; ++i) {
      u[i] = draw();
      v[i] = draw();
    }
    const T d = proj_dist(mat_vec(a, u), mat_vec(a, v)).value();
    const double dd = to_double(d);
    if (dd > out.sampled_sup) out.sampled_sup = dd;
    if (exact.value() < d && !nearly_equal<T>(d, exact.value(), default_tolerance<T>())) {
      throw ContractViolation("sampled projective distance " + to_string<T>(d) +
                              " exceeds column-pair diameter " + to_string<T>(exact.value()));
    }
  }
  return out;
}

template <Backing T>
bool is_rank_one(const Matrix<T>& a, double tol) {
  if (a.is_all_epsilon()) throw InputError("is_rank_one: all-epsilon matrix");
  const std::size_t k = a.dim();
  std::optional<std::size_t> reference;
  for (std::size_t j = 0; j < k; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < k && !any; ++i) any = a(i, j).is_finite();
    if (!any) continue;
    if (!reference) {
      reference = j;
      continue;
    }
    const std::size_t r = *reference;
    std::optional<T> offset;
    for (std::size_t i = 0; i < k; ++i) {
      const auto& x = a(i, j);
      const auto& y = a(i, r);
      if (x.is_epsilon() != y.is_epsilon()) return false;
      if (x.is_epsilon()) continue;
      T diff = x.value() - y.value();
      if (!offset) {
        offset = std::move(diff);
      } else if (!nearly_equal<T>(diff, *offset, tol)) {
        return false;
      }
    }
  }
  return true;
}

template <Backing T>
Matrix<T> canonical_matrix(const Matrix<T>& a) {
  const auto top = a.max_entry();
  if (top.is_epsilon()) throw InputError("canonical_matrix: all-epsilon matrix");
  return shifted(a, top.value());
}

#define MAXPLUS_INSTANTIATE_PROJECTIVE(T)                                              \
  template class ProjVector<T>;                                                        \
  template ProjDistance<T> proj_dist(const Vector<T>&, const Vector<T>&);              \
  template ProjDistance<T> proj_diameter(const Matrix<T>&);                            \
  template SampledDiameter proj_diameter_sampled(const Matrix<T>&, std::size_t,        \
                                                 std::uint64_t);                       \
  template bool is_rank_one(const Matrix<T>&, double);                                 \
  template Matrix<T> canonical_matrix(const Matrix<T>&);

MAXPLUS_INSTANTIATE_PROJECTIVE(Rational)
MAXPLUS_INSTANTIATE_PROJECTIVE(double)

}  // namespace maxplus
