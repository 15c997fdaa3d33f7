#include <doctest.h>

#include "kdq/predictions.hpp"

using namespace kdq;

namespace {

std::set<unsigned> row_of(const PointSet& s, unsigned row) {
  std::set<unsigned> out;
  for (const auto& [a, b] : s)
    if (b == row) out.insert(a);
  return out;
}

// Row n_b = 2 from the divisor rule, written out independently.
std::set<unsigned> row_two_rule(unsigned d) {
  std::set<unsigned> out{d};
  for (unsigned n = 1; n < d; ++n)
    if (d % n == 0) out.insert(d - n);
  return out;
}

SearchOptions exact_options() {
  SearchOptions o;
  o.engine = EngineMode::Exact;
  return o;
}

}  // namespace

TEST_CASE("check ids round-trip") {
  for (CheckId id : {CheckId::T1, CheckId::C1, CheckId::T2, CheckId::T3, CheckId::T4, CheckId::T5, CheckId::L3})
    CHECK(parse_check_id(to_string(id)) == id);
  CHECK_FALSE(parse_check_id("T9"));
  CHECK_FALSE(parse_check_id("t1"));
}

TEST_CASE("progression points for named dimensions") {
  const PointSet p6 = predict_progression_points(6).present;
  for (const auto& pt : PointSet{{4, 2}, {4, 3}, {3, 2}, {2, 3}, {6, 1}, {1, 6}, {5, 2}}) CHECK(p6.count(pt));
  CHECK_FALSE(p6.count({1, 1}));
  CHECK_FALSE(p6.count({5, 1}));
  CHECK(predict_progression_points(4).present.count({3, 2}));
  CHECK(predict_progression_points(4).present.count({2, 2}));
  CHECK(predict_progression_points(1).present == PointSet{{1, 1}});
  CHECK(predict_progression_points(6).holes.empty());
}

TEST_CASE("progression points are symmetric and respect the support bound") {
  for (unsigned d = 1; d <= 30; ++d) {
    const PointSet p = predict_progression_points(d).present;
    for (const auto& [a, b] : p) {
      CAPTURE(d);
      CHECK(p.count({b, a}));
      CHECK(a * b >= d);
      CHECK(a <= d);
      CHECK(b <= d);
    }
    for (unsigned e = 1; e <= d; ++e)
      if (d % e == 0) CHECK(p.count({e, d / e}));
  }
}

TEST_CASE("half plane counts") {
  CHECK(predict_above_line(2).present.size() == 3);
  CHECK(predict_above_line(6).present.size() == 21);
  for (unsigned d = 1; d <= 20; ++d) CHECK(predict_above_line(d).present.size() == d * (d + 1) / 2);
}

TEST_CASE("row two") {
  CHECK(row_of(predict_row_two(8).present, 2) == std::set<unsigned>{4, 6, 7, 8});
  CHECK(row_of(predict_row_two(8).holes, 2) == std::set<unsigned>{1, 2, 3, 5});
  CHECK(row_of(predict_row_two(6).present, 2) == std::set<unsigned>{3, 4, 5, 6});
  CHECK(row_of(predict_row_two(10).present, 2) == std::set<unsigned>{5, 8, 9, 10});
  CHECK(row_of(predict_row_two(10).holes, 2) == std::set<unsigned>{1, 2, 3, 4, 6, 7});
  CHECK(predict_row_two(8).row == 2u);
  CHECK_THROWS_AS(predict_row_two(1), std::invalid_argument);
  for (unsigned d = 2; d <= 40; ++d) {
    const TheoremPrediction t = predict_row_two(d);
    CHECK(row_of(t.present, 2) == row_two_rule(d));
    CHECK(t.present.size() + t.holes.size() == d);
  }
}

TEST_CASE("row three") {
  const TheoremPrediction t9 = predict_row_three(9);
  CHECK(row_of(t9.present, 3) == std::set<unsigned>{3, 6, 7, 8, 9});
  CHECK(t9.applicable);
  CHECK(row_of(predict_row_three(3).present, 3) == std::set<unsigned>{1, 2, 3});
  CHECK_FALSE(predict_row_three(8).applicable);
  CHECK_FALSE(predict_row_three(12).applicable);
  CHECK(predict_row_three(6).applicable);
  CHECK(predict_row_three(10).applicable);
  CHECK_THROWS_AS(predict_row_three(2), std::invalid_argument);

  CHECK(nontrivial_divisors_prime(7));
  CHECK(nontrivial_divisors_prime(15));
  CHECK(nontrivial_divisors_prime(4));
  CHECK_FALSE(nontrivial_divisors_prime(16));
  CHECK_FALSE(nontrivial_divisors_prime(18));
}

TEST_CASE("compare detects missing, unexpected and unresolved points") {
  const UncertaintyDiagram g = enumerate_diagram(dft_matrix(6), exact_options());
  CHECK(compare(predict_row_two(6), g).match);
  CHECK(compare(predict_progression_points(6), g).match);
  CHECK(compare(predict_above_line(6), g).match);

  TheoremPrediction wrong = predict_row_two(6);
  wrong.present.insert({2, 2});
  wrong.holes.erase({2, 2});
  wrong.holes.insert({5, 2});
  wrong.present.erase({5, 2});
  const PredictionComparison c = compare(wrong, g);
  CHECK_FALSE(c.match);
  CHECK(c.missing == PointSet{{2, 2}});
  CHECK(c.unexpected == PointSet{{5, 2}});

  UncertaintyDiagram partial = g;
  partial.at(5, 2).status = PointStatus::Unknown;
  const PredictionComparison u = compare(predict_row_two(6), partial);
  CHECK_FALSE(u.match);
  CHECK(u.unresolved == PointSet{{5, 2}});

  CHECK_THROWS_AS(compare(predict_row_two(8), g), std::invalid_argument);
}

TEST_CASE("small suites pass") {
  for (unsigned d = 1; d <= 8; ++d) {
    CAPTURE(d);
    const SuiteResult p = check_progression_ranks(d);
    CHECK(p.passed());
    CHECK((d == 1 || p.cases > 0));
    const SuiteResult c = check_coset_states(d, 5, 3);
    CHECK(c.passed());
    CHECK(c.cases > 0);
  }
  CHECK(check_progression_ranks(6, EngineMode::Both).passed());

  const TransitionMatrix u = dft_matrix(6);
  const UncertaintyDiagram g = enumerate_diagram(u, exact_options());
  const SuiteResult w = check_witness_classicality(u, g, 100, 4);
  CHECK(w.passed());
  CHECK(w.cases >= 100);

  const SuiteResult h = check_half_support(5, 5, 10, 8);
  CHECK(h.passed());
  CHECK(h.cases > 0);
}

TEST_CASE("suite result keeps the first failure") {
  SuiteResult r;
  CHECK(r.passed());
  r.fail("first");
  r.fail("second");
  CHECK(r.failures == 2);
  CHECK(r.first_failure == "first");
}
