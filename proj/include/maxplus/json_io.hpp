#pragma once

// JSON formats.
//
// Scalars: numbers, "p/q" strings, or "-inf" for ε.  Exact values are written
// as integers when integral and as "p/q" strings otherwise.  Decimal inputs
// are read exactly ("0.1" is 1/10) in exact backing.
// Matrices: {"k": int, "entries": [[...], ...]}.  Nodes are 1-based in
// reports; support indices (words) are 0-based positions in "support".

#include <json.hpp>

#include "maxplus/coupling.hpp"
#include "maxplus/distribution.hpp"
#include "maxplus/models.hpp"
#include "maxplus/open_system.hpp"
#include "maxplus/patterns.hpp"
#include "maxplus/simulation.hpp"
#include "maxplus/spectral.hpp"
#include "maxplus/verdict.hpp"

namespace maxplus::json {

using Json = nlohmann::ordered_json;

// ------------------------------------------------------------------ readers

template <Backing T>
T number_from(const Json& j);

template <Backing T>
Scalar<T> scalar_from(const Json& j);

template <Backing T>
Vector<T> vector_from(const Json& j);

/// {"k", "entries"} or a bare array of rows.
template <Backing T>
Matrix<T> matrix_from(const Json& j);

template <Backing T>
ScalarLaw<T> law_from(const Json& j);

template <Backing T>
MatrixDistribution<T> distribution_from(const Json& j);

template <Backing T>
CjnSpec<T> cjn_spec_from(const Json& j);

template <Backing T>
TaskGraphSpec<T> taskgraph_spec_from(const Json& j);

/// Parses a document; syntax errors become InputError.
Json parse(const std::string& text, const std::string& origin);
Json read_file(const std::string& path);

// ------------------------------------------------------------------ writers

template <Backing T>
Json to_json(const Scalar<T>& s);

template <Backing T>
Json number_to_json(const T& value);

template <Backing T>
Json to_json(const Vector<T>& x);

template <Backing T>
Json to_json(const ProjVector<T>& x);

template <Backing T>
Json to_json(const Matrix<T>& a);

template <Backing T>
Json to_json(const ProjDistance<T>& d);

template <Backing T>
Json to_json(const ScalarLaw<T>& law);

template <Backing T>
Json to_json(const MatrixDistribution<T>& law);

template <Backing T>
Json to_json(const SpectralSummary<T>& s);

Json to_json(const CriticalGraph& g);
Json to_json(const SccDecomposition& s);

template <Backing T>
Json to_json(const TrajectoryRecord<T>& r);

Json to_json(const LyapunovEstimate& e);
Json to_json(const PathCoupling& c);
Json to_json(const CouplingReport& r);

template <Backing T>
Json to_json(const LoynesResult<T>& r);

Json to_json(const PatternFinding& f);
Json to_json(const PatternReport& r);
Json to_json(const StructuralConditions& c);
Json to_json(const StabilityVerdict& v);
Json to_json(const OpenSystemReport& r);
Json to_json(const CjnCondition& c);

template <Backing T>
Json to_json(const CjnSecondOrder<T>& s);

/// +inf as the string "inf", finite values as numbers.
Json real_to_json(double value);

/// Nodes shifted to 1-based.
Json nodes_to_json(const std::vector<std::size_t>& nodes);

}  // namespace maxplus::json
