#include <doctest.h>

#include "support.hpp"

using namespace maxplus;
using namespace maxplus::json;
using namespace fixtures;

namespace {

template <Backing T>
void check_same_finite(const MatrixDistribution<T>& a, const MatrixDistribution<T>& b) {
  REQUIRE(a.is_finite());
  REQUIRE(b.is_finite());
  CHECK(a.finite().matrices == b.finite().matrices);
  CHECK(a.finite().probabilities == b.finite().probabilities);
  CHECK(a.finite().kernel == b.finite().kernel);
}

bool identical(const Matrix<double>& a, const Matrix<double>& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (a(i, j).is_epsilon() != b(i, j).is_epsilon()) return false;
      if (!a(i, j).is_epsilon() && a(i, j).value() != b(i, j).value()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("json") {

TEST_CASE("numbers and scalars") {
  CHECK(number_from<Rational>(Json::parse("3")) == 3);
  CHECK(number_from<Rational>(Json::parse("\"-7/4\"")) == q(-7, 4));
  CHECK(number_from<Rational>(Json::parse("0.1")) == q(1, 10));
  CHECK(number_from<Rational>(Json::parse("\"0.25\"")) == q(1, 4));
  CHECK(number_from<Rational>(Json::parse("\"1.05\"")) == q(21, 20));
  CHECK(number_from<Rational>(Json::parse("\"007/010\"")) == q(7, 10));
  CHECK(number_from<double>(Json::parse("\"1/4\"")) == 0.25);
  CHECK(scalar_from<Rational>(Json::parse("null")).is_epsilon());
  CHECK(scalar_from<Rational>(Json::parse("\"-inf\"")).is_epsilon());
  CHECK(scalar_from<Rational>(Json::parse("\"eps\"")).is_epsilon());
  CHECK(scalar_from<Rational>(Json::parse("\"ε\"")).is_epsilon());
  CHECK_THROWS_AS(number_from<Rational>(Json::parse("\"1/0\"")), InputError);
  CHECK_THROWS_AS(number_from<Rational>(Json::parse("\"abc\"")), InputError);
  CHECK_THROWS_AS(number_from<Rational>(Json::parse("[1]")), InputError);
  CHECK_THROWS_AS(number_from<Rational>(Json::parse("\"inf\"")), InputError);
}

TEST_CASE("exact numbers are written as integers or fractions") {
  CHECK(to_json(Scalar<Rational>(q(3))) == Json(3));
  CHECK(to_json(Scalar<Rational>(q(-1, 2))) == Json("-1/2"));
  CHECK(to_json(Scalar<Rational>::epsilon()) == Json("-inf"));
  CHECK(real_to_json(std::numeric_limits<double>::infinity()) == Json("inf"));
  CHECK(real_to_json(0.5) == Json(0.5));
}

TEST_CASE("matrix formats") {
  const auto a = M("1 eps; -1/2 2");
  CHECK(matrix_from<Rational>(Json::parse(R"({"k":2,"entries":[[1,"-inf"],["-1/2",2]]})")) == a);
  CHECK(matrix_from<Rational>(Json::parse(R"([[1,null],["-1/2",2]])")) == a);
  CHECK(matrix_from<Rational>(to_json(a)) == a);
  CHECK_THROWS_AS(matrix_from<Rational>(Json::parse(R"({"k":3,"entries":[[1,2],[3,4]]})")), InputError);
  CHECK_THROWS_AS(matrix_from<Rational>(Json::parse(R"([[1,2],[3]])")), InputError);
  CHECK_THROWS_AS(matrix_from<Rational>(Json::parse(R"([])")), InputError);
}

TEST_CASE("round trips over random matrices") {
  Rng rng(83);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_matrix(rng, 1 + trial % 5, 0.3);
    const auto text = to_json(a).dump();
    CHECK(matrix_from<Rational>(parse(text, "test")) == a);
    const auto v = random_vector(rng, 1 + trial % 5);
    CHECK(vector_from<Rational>(to_json(v)) == v);
  }
  Vector<double> f(2);
  f[0] = Scalar<double>(0.1);
  f[1] = Scalar<double>(-1e300);
  const auto g = vector_from<double>(parse(to_json(f).dump(), "test"));
  REQUIRE(g.size() == 2);
  CHECK(g[0].value() == 0.1);
  CHECK(g[1].value() == -1e300);
}

TEST_CASE("laws") {
  CHECK(law_from<Rational>(Json::parse("2")).kind == ScalarLaw<Rational>::Kind::constant);
  const auto d = law_from<Rational>(Json::parse(R"({"discrete":{"values":[1,2],"p":["1/3","2/3"]}})"));
  CHECK(d.kind == ScalarLaw<Rational>::Kind::discrete);
  CHECK(d.probabilities == std::vector<Rational>{q(1, 3), q(2, 3)});
  const auto u = law_from<double>(Json::parse(R"({"uniform":[0,1]})"));
  CHECK(u.kind == ScalarLaw<double>::Kind::uniform);
  CHECK(u.high == 1.0);
  CHECK(law_from<double>(Json::parse(R"({"exponential":2})")).rate == 2.0);
  CHECK_THROWS_AS(law_from<double>(Json::parse(R"({"uniform":[1,0]})")), InputError);
  CHECK_THROWS_AS(law_from<double>(Json::parse(R"({"gamma":1})")), InputError);
  CHECK_THROWS_AS(law_from<Rational>(Json::parse(R"({"discrete":{"values":[1,2],"p":["1/3","1/3"]}})")),
                  InputError);
}

TEST_CASE("distribution round trips") {
  const auto iid = cjn_iid({{2, 1, 1}, {1, 1, 1}}, {q(1, 2), q(1, 2)});
  check_same_finite(iid, distribution_from<Rational>(parse(to_json(iid).dump(), "test")));

  const auto markov =
      MatrixDistribution<Rational>::markov(twisted_support(), {q(1, 2), q(1, 2)}, {{0, 1}, {1, 0}});
  const auto back = distribution_from<Rational>(parse(to_json(markov).dump(), "test"));
  check_same_finite(markov, back);
  CHECK(back.is_markov());

  const auto single = distribution_from<Rational>(Json::parse(R"([[0,-1],[-1,0]])"));
  check_same_finite(single, MatrixDistribution<Rational>::single(M("0 -1; -1 0")));

  const auto wrapped = distribution_from<Rational>(
      Json::parse(R"({"distribution":{"support":[{"matrix":[[0]],"p":"1/2"},{"matrix":[[1]],"p":"1/2"}],
                     "dependence":"iid"}})"));
  CHECK(wrapped.finite().matrices.size() == 2);

  const auto gen = uniform_diag_law<double>();
  const auto gen_back = distribution_from<double>(parse(to_json(gen).dump(), "test"));
  CHECK_FALSE(gen_back.is_finite());
  const auto xs = sample_sequence(gen, 3, 20);
  const auto ys = sample_sequence(gen_back, 3, 20);
  for (std::size_t n = 0; n < xs.size(); ++n) CHECK(identical(xs[n], ys[n]));
}

TEST_CASE("malformed distributions") {
  CHECK_THROWS_AS(parse("{", "bad.json"), InputError);
  CHECK_THROWS_AS(read_file("/nonexistent/file.json"), InputError);
  CHECK_THROWS_AS(distribution_from<Rational>(Json::parse(R"({"support":[]})")), InputError);
  CHECK_THROWS_AS(distribution_from<Rational>(
                      Json::parse(R"({"support":[{"matrix":[[0]],"p":"1/2"}],"dependence":"iid"})")),
                  InputError);
  CHECK_THROWS_AS(distribution_from<Rational>(Json::parse(
                      R"({"support":[{"matrix":[[0]],"p":1}],"dependence":{"markov":{"kernel":[[2]]}}})")),
                  InputError);
  CHECK_THROWS_AS(distribution_from<Rational>(
                      Json::parse(R"({"support":[{"matrix":[[0]],"p":1}],"dependence":"ergodic"})")),
                  InputError);
  CHECK_THROWS_AS(distribution_from<Rational>(Json::parse("42")), InputError);
}

TEST_CASE("model specs") {
  const auto spec = cjn_spec_from<Rational>(
      Json::parse(R"({"k":3,"service":{"atoms":[{"sigma":[2,1,1],"p":"1/2"},{"sigma":[1,1,1],"p":"1/2"}]}})"));
  CHECK(spec.customers == 3);
  check_same_finite(cjn_distribution(spec), cjn_iid({{2, 1, 1}, {1, 1, 1}}, {q(1, 2), q(1, 2)}));

  const auto queues = cjn_spec_from<Rational>(
      Json::parse(R"({"k":2,"customers":3,"service":{"queues":[1,{"discrete":{"values":[1,2],"p":["1/2","1/2"]}}]}})"));
  CHECK(queues.queue_laws.size() == 2);
  CHECK(cjn_distribution(queues).dim() == 3);

  const auto tg = taskgraph_spec_from<Rational>(Json::parse(
      R"({"k":2,"processors":[{"subsets":[{"mask":[1,2],"p":1}]},{"subsets":[{"mask":2,"p":1}]}],"duration":1})"));
  REQUIRE(tg.processors.size() == 2);
  CHECK(tg.processors[0].subsets.front() == std::vector<std::size_t>{0, 1});
  CHECK(tg.processors[1].subsets.front() == std::vector<std::size_t>{1});
  CHECK(taskgraph_distribution(tg).finite().matrices.front() == M("1 eps; 1 1"));
  CHECK_THROWS_AS(cjn_spec_from<Rational>(Json::parse(R"({"k":2})")), InputError);
}

TEST_CASE("report writers") {
  const auto s = classify(M("0 -1; -1 0"));
  const auto j = to_json(s);
  CHECK(j["eigenvalue"] == Json(0));
  CHECK(j["scs1cyc1"] == Json(false));
  REQUIRE(j["eigenbasis"].size() == 2);
  CHECK(j["eigenbasis"][0]["vector"] == Json::parse("[0,-1]"));

  LoynesOptions opt;
  opt.budget = 3;
  const auto partial = backward_loynes(MatrixDistribution<Rational>::single(M("0 -1; -1 0")), opt, 1);
  CHECK(to_json(partial)["status"] == Json("budget_exhausted"));

  const auto c = structural_conditions(MatrixDistribution<Rational>::single(M("0 eps; eps eps")));
  const auto cj = to_json(c);
  CHECK(cj["condition_I"] == Json(false));
  CHECK(cj["starved"]["row"] == Json(2));
}

}
