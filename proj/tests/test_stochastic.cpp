#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "support.hpp"

using namespace maxplus;
using namespace fixtures;

namespace {

MatrixDistribution<Rational> twisted(bool markov) {
  if (markov) {
    return MatrixDistribution<Rational>::markov(twisted_support(), {q(1, 2), q(1, 2)}, {{0, 1}, {1, 0}});
  }
  return MatrixDistribution<Rational>::iid(twisted_support(), {q(1, 2), q(1, 2)});
}

MatrixDistribution<Rational> cjn_strict() { return cjn_iid({{2, 1, 1}, {1, 1, 1}}, {q(1, 2), q(1, 2)}); }

/// Two-sample Kolmogorov–Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double worst = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    const double fa = static_cast<double>(i) / static_cast<double>(a.size());
    const double fb = static_cast<double>(j) / static_cast<double>(b.size());
    worst = std::max(worst, std::abs(fa - fb));
  }
  return worst;
}

}  // namespace

TEST_SUITE("stochastic") {

TEST_CASE("distribution validation") {
  const auto a = M("0 1; 1 0");
  CHECK_THROWS_AS(MatrixDistribution<Rational>::iid({a, a}, {q(1, 2), q(1, 3)}), InputError);
  CHECK_THROWS_AS(MatrixDistribution<Rational>::iid({a, M("0")}, {q(1, 2), q(1, 2)}), InputError);
  CHECK_THROWS_AS(MatrixDistribution<Rational>::iid({a}, {q(-1)}), InputError);
  CHECK_THROWS_AS(
      MatrixDistribution<Rational>::markov({a, a}, {q(1, 2), q(1, 2)}, {{q(1, 2), q(1, 3)}, {0, 1}}),
      InputError);
  CHECK_THROWS_AS(MatrixDistribution<Rational>::markov({a, a}, {q(1, 2), q(1, 2)}, {{1}}), InputError);
  CHECK_NOTHROW(MatrixDistribution<double>::iid({Mf("0 1; 1 0"), Mf("0 1; 1 0")}, {0.1, 0.9}));
}

TEST_CASE("sample sequences") {
  const auto a = cjn({1, 2});
  const auto single = sample_sequence(MatrixDistribution<Rational>::single(a), 1, 3);
  REQUIRE(single.size() == 3);
  for (const auto& m : single) CHECK(m == a);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto word = sample_word(twisted(true), seed, 20);
    for (std::size_t n = 1; n < word.size(); ++n) CHECK(word[n] != word[n - 1]);
  }
  CHECK(sample_word(cjn_strict(), 9, 50) == sample_word(cjn_strict(), 9, 50));
  CHECK(sample_word(cjn_strict(), 9, 50) != sample_word(cjn_strict(), 10, 50));
  CHECK(sample_sequence(uniform_diag_law<double>(), 4, 0).empty());
}

TEST_CASE("word probabilities") {
  CHECK(cjn_strict().word_probability({0, 1, 1}) == q(1, 8));
  CHECK(twisted(true).word_probability({0, 1, 0}) == q(1, 2));
  CHECK(twisted(true).word_probability({0, 0}) == 0);
}

TEST_CASE("iid marginal frequencies") {
  const auto law = MatrixDistribution<Rational>::iid({cjn({1, 1}), cjn({2, 1}), cjn({1, 2})},
                                                     {q(1, 2), q(1, 4), q(1, 4)});
  const auto word = sample_word(law, 3, 40000);
  std::vector<double> freq(3, 0.0);
  for (auto w : word) freq[w] += 1.0 / 40000.0;
  CHECK(freq[0] == doctest::Approx(0.5).epsilon(0.03));
  CHECK(freq[1] == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("simulate examples") {
  const auto ones = MatrixDistribution<Rational>::single(cjn({1, 1, 1}));
  const auto rec = simulate(ones, V({0, 0, 0}), 10, 1);
  for (std::size_t n = 0; n <= 10; ++n) {
    const Rational v(static_cast<long>(n));
    CHECK(rec.states[n] == V({v, v, v}));
  }
  CHECK(rec.increments[3] == V({1, 1, 1}));

  const auto det = MatrixDistribution<Rational>::single(M("0 -1; -1 0"));
  for (const Rational lambda : {q(0), q(1, 4), q(1, 2), q(1)}) {
    // u_λ = λ ⊗ (0, -1) ⊕ (1 - λ) ⊗ (-1, 0) = (λ, 1 - λ)
    const auto r = simulate(det, V({lambda, 1 - lambda}), 50, 2);
    for (const auto& x : r.states) CHECK(x[0].value() - x[1].value() == 2 * lambda - 1);
  }
  const auto z = simulate(det, V({3, -5}), 10, 2);
  for (std::size_t n = 2; n <= 10; ++n) CHECK(z.increments[n] == V({0, 0}));

  const auto zero = simulate(ones, V({3, 1, 2}), 0, 1);
  CHECK(zero.states.size() == 1);
  CHECK(zero.states[0] == V({3, 1, 2}));

  const auto starved = MatrixDistribution<Rational>::iid({cjn({1, 1}), M("0 eps; eps eps")}, {q(1, 2), q(1, 2)});
  try {
    simulate(starved, V({0, 0}), 5, 1);
    FAIL("condition I violation not rejected");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
  CHECK_THROWS_AS(simulate(ones, V({0, 0}), 5, 1), InputError);
}

TEST_CASE("thinning keeps the final state") {
  const auto law = cjn_strict();
  const auto full = simulate(law, V({0, 1, 2}), 10, 5);
  const auto thin = simulate(law, V({0, 1, 2}), 10, 5, 4);
  CHECK(thin.times == std::vector<std::size_t>{0, 4, 8, 10});
  CHECK(thin.states.back() == full.states.back());
  CHECK(thin.states[1] == full.states[4]);
}

TEST_CASE("lyapunov examples") {
  const auto det = MatrixDistribution<Rational>::single(M("0 -1; -1 0"));
  const auto e0 = lyapunov_estimate(det, 100, 3, 1);
  CHECK(e0.estimate == 0.0);
  CHECK(e0.ci_low == 0.0);
  const auto c = lyapunov_estimate(MatrixDistribution<Rational>::single(cjn({1, 2, 3})), 1000, 2, 1);
  CHECK(std::abs(c.estimate - 3.0) < 1e-9);
  const auto id = lyapunov_estimate(MatrixDistribution<Rational>::single(Matrix<Rational>::identity(3)), 10, 2, 1);
  CHECK(id.estimate == 0.0);
  CHECK_THROWS_AS(lyapunov_estimate(det, 0, 3, 1), InputError);
}

TEST_CASE("lyapunov estimate does not depend on the initial condition") {
  const auto law = cjn_strict();
  const auto a = lyapunov_estimate(law, 20000, 20, 7, 1, std::optional(V({0, 0, 0})));
  const auto b = lyapunov_estimate(law, 20000, 20, 7, 1, std::optional(V({9, -4, 1})));
  CHECK(std::abs(a.estimate - b.estimate) <= (a.ci_high - a.ci_low) / 2 + (b.ci_high - b.ci_low) / 2);
  CHECK(a.estimate == doctest::Approx(b.estimate).epsilon(0.05));
}

TEST_CASE("results are independent of the thread count") {
  const auto law = uniform_diag_law<double>();
  const auto one = lyapunov_estimate(law, 500, 12, 99, 1);
  const auto four = lyapunov_estimate(law, 500, 12, 99, 4);
  CHECK(one.samples == four.samples);
  CouplingOptions opt;
  opt.horizon = 300;
  opt.eta = 1e-2;
  opt.strong = false;
  const std::vector<Vector<double>> x0{Vf({0, 0}), Vf({3, 0})};
  const auto c1 = forward_coupling(law, x0, opt, 5, 16, 1);
  const auto c3 = forward_coupling(law, x0, opt, 5, 16, 3);
  for (std::size_t r = 0; r < 16; ++r) CHECK(c1.replications[r].eta_time == c3.replications[r].eta_time);
}

TEST_CASE("coupling of a rank-1 law happens at time 1") {
  const auto law = MatrixDistribution<Rational>::single(M("0 1; 2 3"));
  CouplingOptions opt;
  opt.horizon = 5;
  const auto report = forward_coupling(law, {V({0, 0}), V({0, 7}), V({-3, 2})}, opt, 1, 10);
  CHECK(report.strong_count == 10);
  for (const auto& p : report.replications) {
    CHECK(p.strong_time == 1u);
    CHECK(p.merge_time == 1u);
    REQUIRE(p.window);
    CHECK(p.window->start == 0);
    CHECK(p.window->length == 1);
  }
}

TEST_CASE("coupling certificates are rank-1 windows") {
  const auto law = cjn_strict();
  CouplingOptions opt;
  opt.horizon = 200;
  const std::vector<Vector<Rational>> x0{V({0, 0, 0}), V({5, 0, 0}), V({0, 7, -2})};
  for (std::uint64_t r = 0; r < 40; ++r) {
    const auto p = couple_path(law, x0, opt, r);
    REQUIRE(p.strong_time);
    REQUIRE(p.window);
    CHECK(p.window->start + p.window->length <= *p.strong_time);
    const auto seq = sample_sequence(law, r, *p.strong_time);
    Matrix<Rational> prod = seq[p.window->start];
    for (std::size_t n = p.window->start + 1; n < p.window->start + p.window->length; ++n) {
      prod = mat_mul(seq[n], prod);
    }
    CHECK(is_rank_one(prod));
    REQUIRE(p.merge_time);
    CHECK(*p.merge_time <= *p.strong_time);
    CHECK(p.final_spread == 0.0);
  }
}

TEST_CASE("uniform diagonal law has eta-coupling but no strong coupling") {
  const auto law = uniform_diag_law<Rational>();
  CouplingOptions opt;
  opt.horizon = 400;
  opt.eta = 1e-2;
  const auto report = forward_coupling(law, {V({0, 0}), V({5, 0})}, opt, 3, 6);
  CHECK(report.strong_count == 0);
  for (std::size_t r = 0; r < report.replications.size(); ++r) {
    const auto& p = report.replications[r];
    CHECK_FALSE(p.strong_time);
    const auto seq = sample_sequence(law, replication_seed(3, r), opt.horizon);
    std::optional<std::size_t> expected;
    Rational running = 2;
    for (std::size_t n = 0; n < seq.size() && !expected; ++n) {
      running = std::min(running, seq[n](0, 0).value());
      if (to_double(running) <= opt.eta) expected = n + 1;
    }
    CHECK(p.eta_time == expected);
  }
}

TEST_CASE("coupling input checks") {
  CouplingOptions opt;
  CHECK_THROWS_AS(forward_coupling(cjn_strict(), {V({0, 0, 0})}, opt, 1, 1), InputError);
  CHECK_THROWS_AS(forward_coupling(cjn_strict(), {V({0, 0, 0}), V({1, 1, 1})}, opt, 1, 1), InputError);
  opt.strong = true;
  CHECK_THROWS_AS(forward_coupling(uniform_diag_law<double>(), {Vf({0, 0}), Vf({1, 0})}, opt, 1, 1),
                  InputError);
}

TEST_CASE("backward scheme examples") {
  const auto a = cjn({2, 1, 1});
  const auto det = backward_loynes(MatrixDistribution<Rational>::single(a), {}, 1);
  REQUIRE(det.converged);
  CHECK(det.achieved_diameter.value() == 0);
  CHECK(*det.z == eigenbasis(a).front());

  const auto c = backward_loynes(MatrixDistribution<Rational>::single(M("0 1; 2 3")), {}, 1);
  CHECK(c.steps == 1);
  CHECK(c.achieved_diameter.value() == 0);

  LoynesOptions loose;
  loose.tolerance = 1e-3;
  loose.record_trace = true;
  const auto uniform = backward_loynes(uniform_diag_law<double>(), loose, 2);
  REQUIRE(uniform.converged);
  CHECK(uniform.z->coords()[0] == 0.0);
  CHECK(std::abs(uniform.z->coords()[1]) <= 1e-3);
  for (std::size_t n = 1; n < uniform.diameter_trace.size(); ++n) {
    CHECK(uniform.diameter_trace[n] <= uniform.diameter_trace[n - 1]);
  }
}

TEST_CASE("backward scheme partial results and rejections") {
  LoynesOptions opt;
  opt.budget = 50;
  const auto never = MatrixDistribution<Rational>::single(M("0 -1; -1 0"));
  const auto res = backward_loynes(never, opt, 1);
  CHECK_FALSE(res.converged);
  CHECK(res.steps == 50);
  CHECK(res.achieved_diameter.value() == 2);
  CHECK_THROWS_AS(backward_loynes(twisted(true), opt, 1), InputError);
  CHECK_THROWS_AS(backward_loynes(uniform_diag_law<double>(), LoynesOptions{}, 1), InputError);
}

TEST_CASE("backward diameters are monotone on every path") {
  LoynesOptions opt;
  opt.record_trace = true;
  opt.budget = 200;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto res = backward_loynes(cjn_strict(), opt, seed);
    for (std::size_t n = 1; n < res.diameter_trace.size(); ++n) {
      CHECK(res.diameter_trace[n] <= res.diameter_trace[n - 1]);
    }
  }
}

TEST_CASE("forward coupled states equal the backward stationary state pushed forward") {
  const auto law = cjn_strict();
  CouplingOptions copt;
  copt.horizon = 200;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto back = backward_loynes(law, {}, seed);
    REQUIRE(back.converged);
    const auto coupling = couple_path(law, {V({0, 0, 0}), V({4, -1, 2})}, copt, seed);
    REQUIRE(coupling.strong_time);
    SamplePath<Rational> path(law, seed);
    Vector<Rational> z = back.z->to_vector();
    Vector<Rational> x = V({4, -1, 2});
    for (std::size_t n = 1; n <= *coupling.strong_time + 20; ++n) {
      const auto& a = path.next_forward();
      z = mat_vec(a, z);
      x = mat_vec(a, x);
      if (n >= *coupling.strong_time) {
        CHECK(ProjVector<Rational>::canonical(z) == ProjVector<Rational>::canonical(x));
      }
    }
  }
}

TEST_CASE("increments after coupling do not depend on the initial condition") {
  const auto law = cjn_strict();
  std::vector<double> a;
  std::vector<double> b;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto ra = simulate(law, V({0, 0, 0}), 60, 2 * seed);
    const auto rb = simulate(law, V({9, -4, 1}), 60, 2 * seed + 1);
    a.push_back(to_double(ra.increments[60][0].value()));
    b.push_back(to_double(rb.increments[60][0].value()));
  }
  const double n = static_cast<double>(a.size());
  const double critical = 1.628 * std::sqrt(2.0 / n);  // level 0.01
  CHECK(ks_statistic(a, b) < critical);
}

TEST_CASE("pattern search examples") {
  const auto found = pattern_search(cjn_iid({{2, 1, 1}, {1, 2, 1}}, {q(1, 2), q(1, 2)}));
  CHECK(found.found);
  REQUIRE(found.pattern);
  CHECK(is_rank_one(found.pattern->product));
  CHECK(found.pattern->probability > 0);

  const auto eta = q(1, 4);
  const auto iid = MatrixDistribution<Rational>::iid({slow_a(eta), slow_b(eta)}, {q(1, 2), q(1, 2)});
  const auto r = pattern_search(iid);
  REQUIRE(r.found);
  CHECK(r.pattern->word.size() == 8);
  CHECK(r.pattern->product == mat_power(r.pattern->word.front() == 0 ? slow_a(eta) : slow_b(eta), 8));

  const auto alt = MatrixDistribution<Rational>::markov({slow_a(eta), slow_b(eta)}, {q(1, 2), q(1, 2)},
                                                        {{0, 1}, {1, 0}});
  const auto none = pattern_search(alt);
  CHECK_FALSE(none.found);
  CHECK(none.saturation == Saturation::saturated);
  REQUIRE(none.scs1cyc1_only);
  CHECK(none.scs1cyc1_only->word.size() == 1);
}

TEST_CASE("pattern products are the exact word products") {
  const auto law = cjn_iid({{1, 3, 2, 1}, {2, 1, 1, 3}, {1, 1, 2, 2}}, {q(1, 3), q(1, 3), q(1, 3)});
  const auto r = pattern_search(law);
  REQUIRE(r.found);
  Matrix<Rational> prod = law.finite().matrices[r.pattern->word.front()];
  for (std::size_t i = 1; i < r.pattern->word.size(); ++i) {
    prod = mat_mul(law.finite().matrices[r.pattern->word[i]], prod);
  }
  CHECK(prod == r.pattern->product);
  CHECK(r.pattern->probability == law.word_probability(r.pattern->word));
}

TEST_CASE("structural conditions") {
  const auto markov = structural_conditions(twisted(true));
  CHECK(markov.condition_one);
  CHECK_FALSE(markov.condition_two);
  CHECK(markov.saturated);
  const auto iid = structural_conditions(twisted(false));
  CHECK(iid.condition_two);
  CHECK(iid.witness == std::vector<std::size_t>{0, 0});
  const auto c = structural_conditions(cjn_iid({{1, 2, 3}, {2, 2, 1}}, {q(1, 2), q(1, 2)}));
  CHECK(c.condition_one);
  CHECK(c.condition_two);
  const auto starved = structural_conditions(MatrixDistribution<Rational>::single(M("0 eps; eps eps")));
  CHECK_FALSE(starved.condition_one);
  REQUIRE(starved.starved);
  CHECK(starved.starved->second == 1);
  CHECK(structural_conditions(uniform_diag_law<double>()).condition_two);
}

TEST_CASE("stability verdicts") {
  VerdictOptions opt;
  opt.seeds = 5;
  const auto rank1 = stability_verdict(MatrixDistribution<Rational>::single(M("0 1; 2 3")), opt, 1);
  CHECK(rank1.verdict == Verdict::stable_strong);
  REQUIRE(rank1.patterns);
  CHECK(rank1.patterns->pattern->word.size() == 1);

  VerdictOptions weak_opt;
  weak_opt.eta = 1e-4;
  const auto weak = stability_verdict(uniform_diag_law<double>(), weak_opt, 1);
  CHECK(weak.verdict == Verdict::stable_weak);
  CHECK(weak.basis == "conv3");

  const auto c2 = stability_verdict(twisted(true), opt, 1);
  CHECK(c2.verdict == Verdict::inconclusive);
  CHECK(c2.reason == "condition II fails; see open-system analysis");

  const auto s = stability_verdict(cjn_strict(), opt, 1);
  CHECK(s.verdict == Verdict::stable_strong);
  CHECK(std::string(to_string(s.verdict)) == "StableStrong");
}

TEST_CASE("the rotating cjn support has a rank-1 pattern of length 4") {
  // No atom of {(2,2,1),(1,2,2),(2,1,2)} has a strict maximum or equal
  // coordinates, yet the product over the word (0,0,1,0) is rank-1.
  const auto law = cjn_iid({{2, 2, 1}, {1, 2, 2}, {2, 1, 2}}, {q(1, 3), q(1, 3), q(1, 3)});
  const auto found = pattern_search(law);
  REQUIRE(found.found);
  CHECK(found.pattern->word == std::vector<std::size_t>{0, 0, 1, 0});
  CHECK(found.pattern->probability == q(1, 81));

  // plain integer oracle
  using Row = std::array<long, 3>;
  constexpr long none = -1000000;
  auto cjn3 = [](Row s) {
    std::array<Row, 3> a{Row{none, none, none}, Row{none, none, none}, Row{none, none, none}};
    for (int j = 0; j < 3; ++j) {
      a[j][j] = s[j];
      a[j][(j + 2) % 3] = s[j];
    }
    return a;
  };
  const std::array<std::array<Row, 3>, 3> atoms{cjn3({2, 2, 1}), cjn3({1, 2, 2}), cjn3({2, 1, 2})};
  auto prod = atoms[0];
  for (int u : {0, 1, 0}) {
    std::array<Row, 3> next{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        long best = none;
        for (int l = 0; l < 3; ++l) best = std::max(best, atoms[u][i][l] + prod[l][j]);
        next[i][j] = best;
      }
    }
    prod = next;
  }
  CHECK(prod == std::array<Row, 3>{Row{8, 8, 8}, Row{8, 8, 8}, Row{7, 7, 7}});

  VerdictOptions opt;
  opt.seeds = 0;
  const auto v = stability_verdict(law, opt, 1);
  CHECK(v.verdict == Verdict::stable_strong);
  CHECK(v.basis == "th4");
}

TEST_CASE("open-system examples") {
  const auto diverge = open_system_analysis(MatrixDistribution<Rational>::single(M("1 eps; 0 2")), 1000, 2, 1);
  CHECK(diverge.node_limits == std::vector<double>{1.0, 2.0});
  REQUIRE(diverge.two_block);
  CHECK(diverge.two_block->verdict == "differences diverge");

  const auto stable = open_system_analysis(MatrixDistribution<Rational>::single(M("1 eps; 0 1/2")), 1000, 2, 1);
  CHECK(stable.node_limits == std::vector<double>{1.0, 1.0});
  CHECK(stable.two_block->verdict == "unique stationary regime for differences");

  const auto one = open_system_analysis(MatrixDistribution<Rational>::single(cjn({1, 2, 3})), 500, 2, 1);
  CHECK(one.blocks.count() == 1);
  CHECK_FALSE(one.two_block);
  CHECK(one.node_limits[0] == doctest::Approx(3.0));

  const auto mixed = MatrixDistribution<Rational>::iid({M("1 eps; 0 2"), M("1 0; 0 2")}, {q(1, 2), q(1, 2)});
  CHECK_THROWS_AS(open_system_analysis(mixed, 10, 2, 1), InputError);
}

}
