#include "maxplus/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "maxplus/errors.hpp"

namespace maxplus::json {

namespace {

bool is_epsilon_token(const std::string& s) {
  return s == "-inf" || s == "eps" || s == "ε" || s == "-infinity" || s == "-Infinity";
}

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) {
    throw InputError(where + ": missing field \"" + name + "\"");
  }
  return j.at(name);
}

std::size_t size_from(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw InputError(what + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

const Json& array_field(const Json& j, const char* name, const std::string& where) {
  const Json& a = field(j, name, where);
  if (!a.is_array()) throw InputError(where + ": \"" + name + "\" must be an array");
  return a;
}

template <Backing T>
std::vector<T> numbers_from(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array");
  std::vector<T> out;
  for (const auto& x : j) out.push_back(number_from<T>(x));
  return out;
}

}  // namespace

// ------------------------------------------------------------------ readers

template <Backing T>
T number_from(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned() && j.get<unsigned long long>() >
                                      static_cast<unsigned long long>(
                                          std::numeric_limits<long>::max())) {
      return parse_number<T>(std::to_string(j.get<unsigned long long>()));
    }
    return from_int<T>(j.get<long>());
  }
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if constexpr (is_exact_v<T>) {
      // Shortest round-trip text recovers the literal as written ("0.1").
      char buffer[64];
      auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), d);
      (void)ec;
      return parse_number<T>(std::string_view(buffer, static_cast<std::size_t>(ptr - buffer)));
    } else {
      return d;
    }
  }
  if (j.is_string()) return parse_number<T>(j.get<std::string>());
  throw InputError("expected a number, got " + j.dump());
}

template <Backing T>
Scalar<T> scalar_from(const Json& j) {
  if (j.is_null()) return Scalar<T>::epsilon();
  if (j.is_string() && is_epsilon_token(j.get<std::string>())) return Scalar<T>::epsilon();
  return Scalar<T>(number_from<T>(j));
}

template <Backing T>
Vector<T> vector_from(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("a vector must be a nonempty array");
  Vector<T> out(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out[i] = scalar_from<T>(j[i]);
  return out;
}

template <Backing T>
Matrix<T> matrix_from(const Json& j) {
  const Json* rows = &j;
  std::optional<std::size_t> k;
  if (j.is_object()) {
    rows = &array_field(j, "entries", "matrix");
    if (j.contains("k")) k = size_from(j.at("k"), "matrix k");
  }
  if (!rows->is_array() || rows->empty()) throw InputError("matrix: entries must be a nonempty array");
  const std::size_t n = rows->size();
  if (k && *k != n) throw InputError("matrix: k does not match the number of rows");
  Matrix<T> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = (*rows)[i];
    if (!row.is_array() || row.size() != n) {
      throw InputError("matrix: row " + std::to_string(i + 1) + " must have " + std::to_string(n) +
                       " entries");
    }
    for (std::size_t c = 0; c < n; ++c) out(i, c) = scalar_from<T>(row[c]);
  }
  return out;
}

template <Backing T>
ScalarLaw<T> law_from(const Json& j) {
  if (j.is_number() || j.is_string()) return ScalarLaw<T>::constant(number_from<T>(j));
  if (!j.is_object() || j.size() != 1) {
    throw InputError("a law is a number or one of {const, discrete, uniform, exponential}");
  }
  const auto& [kind, body] = *j.items().begin();
  if (kind == "const") return ScalarLaw<T>::constant(number_from<T>(body));
  if (kind == "discrete") {
    return ScalarLaw<T>::discrete(numbers_from<T>(array_field(body, "values", "discrete law"), "values"),
                                  numbers_from<T>(array_field(body, "p", "discrete law"), "p"));
  }
  if (kind == "uniform") {
    if (!body.is_array() || body.size() != 2) throw InputError("uniform law: expected [low, high]");
    return ScalarLaw<T>::uniform(to_double(number_from<T>(body[0])),
                                 to_double(number_from<T>(body[1])));
  }
  if (kind == "exponential") return ScalarLaw<T>::exponential(to_double(number_from<T>(body)));
  throw InputError("unknown law \"" + kind + "\"");
}

namespace {

template <Backing T>
MatrixTemplate<T> template_from(const Json& j) {
  using Entry = typename MatrixTemplate<T>::Entry;
  MatrixTemplate<T> t;
  t.dim = size_from(field(j, "k", "generator"), "generator k");
  if (j.contains("variables")) {
    const Json& vars = j.at("variables");
    if (!vars.is_object()) throw InputError("generator: variables must be an object");
    for (const auto& [name, law] : vars.items()) {
      if (is_epsilon_token(name)) throw InputError("generator: reserved variable name " + name);
      t.variable_names.push_back(name);
      t.variable_laws.push_back(law_from<T>(law));
    }
  }
  for (const auto& c : array_field(j, "cases", "generator")) {
    typename MatrixTemplate<T>::Case out{number_from<T>(field(c, "p", "generator case")), {}};
    const Json& rows = array_field(c, "entries", "generator case");
    if (rows.size() != t.dim) throw InputError("generator case: expected k rows");
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != t.dim) throw InputError("generator case: expected k columns");
      for (const auto& x : row) {
        Entry e;
        if (x.is_null()) {
          e.kind = Entry::Kind::epsilon;
        } else if (x.is_string()) {
          const auto s = x.get<std::string>();
          const auto it = std::find(t.variable_names.begin(), t.variable_names.end(), s);
          if (it != t.variable_names.end()) {
            e.kind = Entry::Kind::variable;
            e.variable = static_cast<std::size_t>(it - t.variable_names.begin());
          } else if (is_epsilon_token(s)) {
            e.kind = Entry::Kind::epsilon;
          } else {
            e.kind = Entry::Kind::constant;
            e.value = parse_number<T>(s);
          }
        } else {
          e.kind = Entry::Kind::constant;
          e.value = number_from<T>(x);
        }
        out.entries.push_back(std::move(e));
      }
    }
    t.cases.push_back(std::move(out));
  }
  return t;
}

}  // namespace

template <Backing T>
MatrixDistribution<T> distribution_from(const Json& j) {
  // Files written by `model` wrap the law in a report.
  if (j.is_object() && j.contains("distribution")) return distribution_from<T>(j.at("distribution"));
  if (j.is_object() && j.contains("generator")) {
    return MatrixDistribution<T>::from_template(template_from<T>(j.at("generator")));
  }
  if (j.is_array() || (j.is_object() && j.contains("entries"))) {
    return MatrixDistribution<T>::single(matrix_from<T>(j));
  }
  std::vector<Matrix<T>> matrices;
  std::vector<T> probabilities;
  for (const auto& atom : array_field(j, "support", "distribution")) {
    matrices.push_back(matrix_from<T>(field(atom, "matrix", "support atom")));
    probabilities.push_back(number_from<T>(field(atom, "p", "support atom")));
  }
  const Json dependence = j.contains("dependence") ? j.at("dependence") : Json("iid");
  if (dependence.is_string() && dependence.get<std::string>() == "iid") {
    return MatrixDistribution<T>::iid(std::move(matrices), std::move(probabilities));
  }
  if (dependence.is_object() && dependence.contains("markov")) {
    std::vector<std::vector<T>> kernel;
    for (const auto& row : array_field(dependence.at("markov"), "kernel", "markov")) {
      kernel.push_back(numbers_from<T>(row, "kernel row"));
    }
    return MatrixDistribution<T>::markov(std::move(matrices), std::move(probabilities),
                                         std::move(kernel));
  }
  throw InputError("distribution: dependence must be \"iid\" or {\"markov\": {\"kernel\": ...}}");
}

template <Backing T>
CjnSpec<T> cjn_spec_from(const Json& j) {
  CjnSpec<T> spec;
  spec.k = size_from(field(j, "k", "cjn"), "cjn k");
  spec.customers = j.contains("customers") ? size_from(j.at("customers"), "cjn customers") : spec.k;
  if (j.contains("initial")) {
    for (const auto& c : j.at("initial")) spec.initial.push_back(size_from(c, "cjn initial"));
  }
  const Json& service = field(j, "service", "cjn");
  if (service.contains("atoms")) {
    for (const auto& atom : service.at("atoms")) {
      spec.atoms.push_back(numbers_from<T>(field(atom, "sigma", "cjn atom"), "sigma"));
      spec.probabilities.push_back(number_from<T>(field(atom, "p", "cjn atom")));
    }
  } else if (service.contains("queues")) {
    for (const auto& law : service.at("queues")) spec.queue_laws.push_back(law_from<T>(law));
  } else {
    throw InputError("cjn: service needs \"atoms\" or \"queues\"");
  }
  return spec;
}

template <Backing T>
TaskGraphSpec<T> taskgraph_spec_from(const Json& j) {
  TaskGraphSpec<T> spec;
  spec.k = size_from(field(j, "k", "taskgraph"), "taskgraph k");
  for (const auto& proc : array_field(j, "processors", "taskgraph")) {
    SubsetLaw<T> law;
    for (const auto& s : array_field(proc, "subsets", "taskgraph processor")) {
      const Json& mask = field(s, "mask", "taskgraph subset");
      std::vector<std::size_t> members;
      if (mask.is_array()) {
        for (const auto& m : mask) {
          const std::size_t node = size_from(m, "mask entry");
          if (node < 1 || node > spec.k) throw InputError("taskgraph: mask entry out of range");
          members.push_back(node - 1);
        }
      } else if (mask.is_number_unsigned() || mask.is_number_integer()) {
        const auto bits = mask.get<unsigned long long>();
        for (std::size_t b = 0; b < 64; ++b) {
          if (bits >> b & 1ULL) {
            if (b >= spec.k) throw InputError("taskgraph: mask bit out of range");
            members.push_back(b);
          }
        }
      } else {
        throw InputError("taskgraph: mask must be an array of processors or a bit mask");
      }
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      law.subsets.push_back(std::move(members));
      law.probabilities.push_back(number_from<T>(field(s, "p", "taskgraph subset")));
    }
    spec.processors.push_back(std::move(law));
  }
  if (j.contains("duration")) spec.duration = law_from<T>(j.at("duration"));
  if (j.contains("arc_durations")) {
    for (const auto& a : j.at("arc_durations")) {
      const std::size_t from = size_from(field(a, "from", "arc duration"), "from");
      const std::size_t to = size_from(field(a, "to", "arc duration"), "to");
      if (from < 1 || to < 1) throw InputError("arc duration: processors are 1-based");
      spec.arc_durations.push_back({{from - 1, to - 1}, law_from<T>(field(a, "law", "arc duration"))});
    }
  }
  return spec;
}

Json parse(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(origin + ": malformed JSON (" + e.what() + ")");
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

// ------------------------------------------------------------------ writers

Json real_to_json(double value) {
  if (std::isinf(value)) return value > 0 ? Json("inf") : Json("-inf");
  if (std::isnan(value)) return Json("nan");
  return Json(value);
}

Json nodes_to_json(const std::vector<std::size_t>& nodes) {
  Json out = Json::array();
  for (auto n : nodes) out.push_back(n + 1);
  return out;
}

template <Backing T>
Json number_to_json(const T& value) {
  if constexpr (is_exact_v<T>) {
    if (value.get_den() == 1 && value.get_num().fits_slong_p()) return Json(value.get_num().get_si());
    return Json(value.get_str());
  } else {
    return real_to_json(value);
  }
}

template <Backing T>
Json to_json(const Scalar<T>& s) {
  return s.is_epsilon() ? Json("-inf") : number_to_json<T>(s.value());
}

template <Backing T>
Json to_json(const Vector<T>& x) {
  Json out = Json::array();
  for (const auto& c : x) out.push_back(to_json(c));
  return out;
}

template <Backing T>
Json to_json(const ProjVector<T>& x) {
  Json out = Json::array();
  for (const auto& c : x.coords()) out.push_back(number_to_json<T>(c));
  return out;
}

template <Backing T>
Json to_json(const Matrix<T>& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.dim(); ++j) row.push_back(to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  Json out;
  out["k"] = a.dim();
  out["entries"] = std::move(rows);
  return out;
}

template <Backing T>
Json to_json(const ProjDistance<T>& d) {
  return d.is_infinite() ? Json("inf") : number_to_json<T>(d.value());
}

template <Backing T>
Json to_json(const ScalarLaw<T>& law) {
  using Kind = typename ScalarLaw<T>::Kind;
  Json out;
  switch (law.kind) {
    case Kind::constant:
      return number_to_json<T>(law.values.front());
    case Kind::discrete: {
      Json values = Json::array();
      Json p = Json::array();
      for (const auto& v : law.values) values.push_back(number_to_json<T>(v));
      for (const auto& v : law.probabilities) p.push_back(number_to_json<T>(v));
      out["discrete"] = Json{{"values", values}, {"p", p}};
      return out;
    }
    case Kind::uniform:
      out["uniform"] = Json::array({law.low, law.high});
      return out;
    case Kind::exponential:
      out["exponential"] = law.rate;
      return out;
  }
  return out;
}

template <Backing T>
Json to_json(const MatrixDistribution<T>& law) {
  Json out;
  if (law.is_finite()) {
    const auto& f = law.finite();
    Json support = Json::array();
    for (std::size_t l = 0; l < f.matrices.size(); ++l) {
      Json atom;
      atom["matrix"] = to_json(f.matrices[l]);
      atom["p"] = number_to_json<T>(f.probabilities[l]);
      support.push_back(std::move(atom));
    }
    out["support"] = std::move(support);
    if (f.is_markov()) {
      Json kernel = Json::array();
      for (const auto& row : f.kernel) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(number_to_json<T>(x));
        kernel.push_back(std::move(r));
      }
      out["dependence"] = Json{{"markov", Json{{"kernel", kernel}}}};
    } else {
      out["dependence"] = "iid";
    }
    return out;
  }
  const auto& g = law.generator();
  if (!g.source) throw InputError("this generator has no serializable description");
  const auto& t = *g.source;
  using Kind = typename MatrixTemplate<T>::Entry::Kind;
  Json gen;
  gen["k"] = t.dim;
  Json vars = Json::object();
  for (std::size_t v = 0; v < t.variable_names.size(); ++v) {
    vars[t.variable_names[v]] = to_json(t.variable_laws[v]);
  }
  gen["variables"] = std::move(vars);
  Json cases = Json::array();
  for (const auto& c : t.cases) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < t.dim; ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < t.dim; ++j) {
        const auto& e = c.entries[i * t.dim + j];
        switch (e.kind) {
          case Kind::epsilon:
            row.push_back("-inf");
            break;
          case Kind::constant:
            row.push_back(number_to_json<T>(e.value));
            break;
          case Kind::variable:
            row.push_back(t.variable_names[e.variable]);
            break;
        }
      }
      rows.push_back(std::move(row));
    }
    Json cj;
    cj["p"] = number_to_json<T>(c.probability);
    cj["entries"] = std::move(rows);
    cases.push_back(std::move(cj));
  }
  gen["cases"] = std::move(cases);
  out["generator"] = std::move(gen);
  return out;
}

Json to_json(const CriticalGraph& g) {
  Json out;
  out["nodes"] = nodes_to_json(g.nodes);
  Json arcs = Json::array();
  for (const auto& [from, to] : g.arcs) arcs.push_back(Json::array({from + 1, to + 1}));
  out["arcs"] = std::move(arcs);
  Json comps = Json::array();
  for (const auto& c : g.components) comps.push_back(nodes_to_json(c));
  out["components"] = std::move(comps);
  out["scc_count"] = g.scc_count();
  return out;
}

Json to_json(const SccDecomposition& s) {
  Json out;
  Json comps = Json::array();
  for (std::size_t c = 0; c < s.count(); ++c) {
    Json comp;
    comp["nodes"] = nodes_to_json(s.components[c]);
    comp["cyclicity"] = s.cyclicity[c] ? Json(*s.cyclicity[c]) : Json(nullptr);
    comps.push_back(std::move(comp));
  }
  out["components"] = std::move(comps);
  Json arcs = Json::array();
  for (const auto& [from, to] : s.condensation_arcs) arcs.push_back(Json::array({from, to}));
  out["condensation_arcs"] = std::move(arcs);
  return out;
}

template <Backing T>
Json to_json(const SpectralSummary<T>& s) {
  Json out;
  out["eigenvalue"] = number_to_json<T>(s.eigenvalue);
  out["critical"] = to_json(s.critical);
  out["critical_scc_count"] = s.critical.scc_count();
  out["cyclicity"] = s.cyclicity;
  if (s.transient) out["transient"] = *s.transient;
  out["scs1cyc1"] = s.scs1cyc1;
  Json basis = Json::array();
  for (std::size_t b = 0; b < s.eigenbasis.size(); ++b) {
    Json v;
    v["node"] = s.eigenbasis_nodes[b] + 1;
    v["vector"] = to_json(s.eigenbasis[b]);
    basis.push_back(std::move(v));
  }
  out["eigenbasis"] = std::move(basis);
  return out;
}

template <Backing T>
Json to_json(const TrajectoryRecord<T>& r) {
  Json out;
  out["seed"] = r.seed;
  out["x0"] = to_json(r.x0);
  out["horizon"] = r.horizon;
  out["thin"] = r.thin;
  out["times"] = r.times;
  Json states = Json::array();
  Json proj = Json::array();
  Json inc = Json::array();
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    states.push_back(to_json(r.states[i]));
    proj.push_back(to_json(r.projective[i]));
    inc.push_back(i == 0 ? Json(nullptr) : to_json(r.increments[i]));
  }
  out["states"] = std::move(states);
  out["projective"] = std::move(proj);
  out["increments"] = std::move(inc);
  return out;
}

Json to_json(const LyapunovEstimate& e) {
  Json out;
  out["estimate"] = real_to_json(e.estimate);
  out["ci"] = Json::array({real_to_json(e.ci_low), real_to_json(e.ci_high)});
  out["horizon"] = e.horizon;
  out["replications"] = e.replications;
  Json samples = Json::array();
  for (double s : e.samples) samples.push_back(real_to_json(s));
  out["samples"] = std::move(samples);
  return out;
}

namespace {

Json optional_size(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

Json cdf_to_json(const std::vector<std::pair<std::size_t, double>>& cdf) {
  Json out = Json::array();
  for (const auto& [t, f] : cdf) out.push_back(Json::array({t, f}));
  return out;
}

}  // namespace

Json to_json(const PathCoupling& c) {
  Json out;
  out["seed"] = c.seed;
  out["strong_time"] = optional_size(c.strong_time);
  out["window"] = c.window ? Json{{"start", c.window->start}, {"length", c.window->length}}
                           : Json(nullptr);
  out["merge_time"] = optional_size(c.merge_time);
  out["eta_time"] = optional_size(c.eta_time);
  out["final_spread"] = real_to_json(c.final_spread);
  return out;
}

Json to_json(const CouplingReport& r) {
  Json out;
  out["horizon"] = r.options.horizon;
  out["eta"] = r.options.eta;
  out["strong_mode"] = r.options.strong;
  out["replications"] = r.replications.size();
  out["strong_count"] = r.strong_count;
  out["eta_count"] = r.eta_count;
  out["strong_cdf"] = cdf_to_json(r.strong_cdf);
  out["eta_cdf"] = cdf_to_json(r.eta_cdf);
  Json paths = Json::array();
  for (const auto& p : r.replications) paths.push_back(to_json(p));
  out["paths"] = std::move(paths);
  return out;
}

template <Backing T>
Json to_json(const LoynesResult<T>& r) {
  Json out;
  out["status"] = r.converged ? "converged" : "budget_exhausted";
  out["steps"] = r.steps;
  out["achieved_diameter"] = to_json(r.achieved_diameter);
  out["z"] = r.z ? to_json(*r.z) : Json(nullptr);
  return out;
}

Json to_json(const PatternFinding& f) {
  Json out;
  out["word"] = f.word;
  out["length"] = f.word.size();
  out["product"] = to_json(f.product);
  out["rank_one"] = f.rank_one;
  out["scs1cyc1"] = f.scs1cyc1;
  out["probability"] = number_to_json<Rational>(f.probability);
  return out;
}

Json to_json(const PatternReport& r) {
  Json out;
  out["found"] = r.found;
  out["pattern"] = r.pattern ? to_json(*r.pattern) : Json(nullptr);
  out["scs1cyc1_only"] = r.scs1cyc1_only ? to_json(*r.scs1cyc1_only) : Json(nullptr);
  out["saturation"] = to_string(r.saturation);
  out["explored"] = r.explored;
  out["max_length"] = r.max_length;
  out["min_diameter"] = r.min_diameter ? number_to_json<Rational>(*r.min_diameter) : Json("inf");
  out["asymptotic_only"] = r.asymptotic_only;
  return out;
}

Json to_json(const StructuralConditions& c) {
  Json out;
  out["condition_I"] = c.condition_one;
  out["starved"] = c.starved ? Json{{"atom", c.starved->first}, {"row", c.starved->second + 1}}
                             : Json(nullptr);
  out["condition_II"] = c.condition_two;
  out["witness"] = c.condition_two ? Json(c.witness) : Json(nullptr);
  out["saturated"] = c.saturated;
  out["explored"] = c.explored;
  return out;
}

Json to_json(const StabilityVerdict& v) {
  Json out;
  out["verdict"] = to_string(v.verdict);
  out["basis"] = v.basis;
  out["reason"] = v.reason;
  out["conditions"] = to_json(v.conditions);
  out["patterns"] = v.patterns ? to_json(*v.patterns) : Json(nullptr);
  if (v.weak) {
    Json w;
    w["eta"] = v.weak->eta;
    w["required_fraction"] = v.weak->required_fraction;
    w["seeds"] = v.weak->steps.size();
    w["reached"] = v.weak->reached;
    Json d = Json::array();
    for (double x : v.weak->final_diameters) d.push_back(real_to_json(x));
    w["final_diameters"] = std::move(d);
    w["steps"] = v.weak->steps;
    out["weak_evidence"] = std::move(w);
  } else {
    out["weak_evidence"] = nullptr;
  }
  return out;
}

Json to_json(const OpenSystemReport& r) {
  Json out;
  out["horizon"] = r.horizon;
  out["replications"] = r.replications;
  Json blocks = Json::array();
  for (std::size_t c = 0; c < r.estimates.size(); ++c) {
    Json b;
    b["nodes"] = nodes_to_json(r.estimates[c].nodes);
    b["cyclicity"] = r.blocks.cyclicity[c] ? Json(*r.blocks.cyclicity[c]) : Json(nullptr);
    b["lyapunov"] = r.estimates[c].lyapunov ? to_json(*r.estimates[c].lyapunov) : Json(nullptr);
    blocks.push_back(std::move(b));
  }
  out["blocks"] = std::move(blocks);
  Json arcs = Json::array();
  for (const auto& [from, to] : r.blocks.condensation_arcs) arcs.push_back(Json::array({from, to}));
  out["condensation_arcs"] = std::move(arcs);
  Json limits = Json::array();
  for (double x : r.node_limits) limits.push_back(real_to_json(x));
  out["node_limits"] = std::move(limits);
  Json measured = Json::array();
  for (double x : r.measured) measured.push_back(real_to_json(x));
  out["measured"] = std::move(measured);
  if (r.two_block) {
    out["two_block"] = Json{{"source", r.two_block->source},
                            {"sink", r.two_block->sink},
                            {"u", real_to_json(r.two_block->u)},
                            {"a", real_to_json(r.two_block->a)},
                            {"verdict", r.two_block->verdict}};
  } else {
    out["two_block"] = nullptr;
  }
  return out;
}

Json to_json(const CjnCondition& c) {
  Json out;
  out["holds"] = c.holds;
  out["witness"] = optional_size(c.witness);
  out["clause"] = c.holds ? Json(c.clause) : Json(nullptr);
  return out;
}

template <Backing T>
Json to_json(const CjnSecondOrder<T>& s) {
  Json out;
  out["times"] = s.times;
  Json idle = Json::array();
  for (const auto& row : s.idle) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(number_to_json<T>(x));
    idle.push_back(std::move(r));
  }
  out["idle"] = std::move(idle);
  if (s.workload) {
    Json work = Json::array();
    for (const auto& row : *s.workload) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(number_to_json<T>(x));
      work.push_back(std::move(r));
    }
    out["workload"] = std::move(work);
  } else {
    out["workload"] = "unsupported for split networks";
  }
  return out;
}

#define MAXPLUS_INSTANTIATE_JSON(T)                                        \
  template T number_from<T>(const Json&);                                  \
  template Scalar<T> scalar_from<T>(const Json&);                          \
  template Vector<T> vector_from<T>(const Json&);                          \
  template Matrix<T> matrix_from<T>(const Json&);                          \
  template ScalarLaw<T> law_from<T>(const Json&);                          \
  template MatrixDistribution<T> distribution_from<T>(const Json&);        \
  template CjnSpec<T> cjn_spec_from<T>(const Json&);                       \
  template TaskGraphSpec<T> taskgraph_spec_from<T>(const Json&);           \
  template Json number_to_json<T>(const T&);                               \
  template Json to_json(const Scalar<T>&);                                 \
  template Json to_json(const Vector<T>&);                                 \
  template Json to_json(const ProjVector<T>&);                             \
  template Json to_json(const Matrix<T>&);                                 \
  template Json to_json(const ProjDistance<T>&);                           \
  template Json to_json(const ScalarLaw<T>&);                              \
  template Json to_json(const MatrixDistribution<T>&);                     \
  template Json to_json(const SpectralSummary<T>&);                        \
  template Json to_json(const TrajectoryRecord<T>&);                       \
  template Json to_json(const LoynesResult<T>&);                           \
  template Json to_json(const CjnSecondOrder<T>&);

MAXPLUS_INSTANTIATE_JSON(Rational)
MAXPLUS_INSTANTIATE_JSON(double)

}  // namespace maxplus::json
