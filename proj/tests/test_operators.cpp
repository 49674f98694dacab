#include <doctest.h>

#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "cesaro/errors.hpp"
#include "cesaro/operators.hpp"

using namespace cesaro;

TEST_CASE("closed-form index") {
  CHECK(closed_form_index(0, 0) == 1);
  CHECK(closed_form_index(3, 7) == 8);
  CHECK(closed_form_index(7, 3) == 8);
}

TEST_CASE("Cesaro matrix and its adjoint") {
  const EntryOracle c = cesaro::cesaro(), a = cesaro_adjoint();
  CHECK_FALSE(c.symmetric);
  CHECK(c.entry(0, 0) == Interval::point(1.0));
  CHECK(c.entry(3, 0).contains(0.25));
  CHECK(c.entry(2, 1).contains(1.0 / 3.0));
  CHECK(c.entry(2, 3) == Interval::point(0.0));
  CHECK(c.row_support_end(4) == 5);
  CHECK(c.row_abs_sum(9).contains(1.0));
  for (Index i = 0; i < 20; ++i)
    for (Index j = 0; j < 20; ++j) CHECK(a.entry(i, j) == c.entry(j, i));
  CHECK(c.transpose().kind == OperatorKind::cesaro_adjoint);
  CHECK(a.transpose().kind == OperatorKind::cesaro);
  REQUIRE(a.row_decay.has_value());
  CHECK(a.row_decay->exact);
  CHECK(a.row_decay->start(6) == 6);
}

TEST_CASE("Gram, co-Gram and commutator entries are consistent") {
  const EntryOracle g = gram(), cg = cogram(), d = commutator();
  CHECK(g.symmetric);
  CHECK(cg.symmetric);
  CHECK(d.symmetric);
  CHECK(g.entry(0, 0).contains(1.6449340668482264));
  CHECK(d.entry(0, 0).contains(0.6449340668482264));
  CHECK(d.entry(1, 0).contains(0.14493406684822644));
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<Index> pick(0, 5000);
  for (int trial = 0; trial < 2000; ++trial) {
    const Index i = pick(rng), j = pick(rng);
    CHECK(g.entry(i, j) == g.entry(j, i));
    CHECK(d.entry(i, j) == d.entry(j, i));
    CHECK((g.entry(i, j) - cg.entry(i, j)).intersects(d.entry(i, j)));
    CHECK(cg.entry(i, j).contains(1.0 / static_cast<double>(closed_form_index(i, j))));
  }
}

TEST_CASE("commutator row sums agree with brute-force summation") {
  // sum_{j<K} t_{m(i,j)} + sum_{j>=K} t_{j+1}, tail bracketed by
  // 1/(2j^2) < t_j < 1/(2(j-1)^2).
  const TailConfig cfg{};
  const EntryOracle d = commutator(cfg);
  const auto table = TailTable::shared(cfg);
  constexpr Index K = 100'000;
  for (Index i : {0u, 1u, 4u, 99u}) {
    CAPTURE(i);
    Interval acc = Interval::point(0.0);
    for (Index j = K; j-- > 0;) acc = acc + d.entry(i, j);
    const Interval rest(table->basel_tail(K + 1).lo() / 2.0, table->basel_tail(K).hi() / 2.0);
    CHECK((acc + rest).intersects(d.row_abs_sum(i)));
    CHECK(d.row_abs_sum(i).contains(1.0 / static_cast<double>(i + 1)));
  }
  REQUIRE(d.row_envelope.has_value());
  CHECK(d.row_envelope->formula_id == "(2n-1)/(2(n-1)^2)");
  CHECK(d.row_envelope->bound(11) == doctest::Approx(0.105));
}

TEST_CASE("C*C entries match partial products of C* and C") {
  for (Index i = 0; i < 60; ++i)
    for (Index j = 0; j < 60; ++j) {
      const Interval p = gram_partial_product(i, j, 500);
      CHECK(p.intersects(gram().entry(i, j)));
      CHECK(p.width() < 1e-5);
    }
  CHECK_THROWS_AS(gram_partial_product(10, 3, 10), DomainError);
}

TEST_CASE("CC* finite products equal the closed form exactly") {
  for (Index i = 0; i < 80; ++i)
    for (Index j = 0; j < 80; ++j) CHECK(cogram_finite_product(i, j) == cogram_closed_form(i, j));
  CHECK(cogram_closed_form(2, 5) == Rational{1, 6});
}

TEST_CASE("truncation and application") {
  const DenseSection c = truncate(cesaro::cesaro(), 4);
  CHECK(c.n == 4);
  CHECK_FALSE(c.is_symmetric());
  CHECK(c.at(3, 0) == 0.25);
  CHECK(c.at(0, 3) == 0.0);
  const DenseSection d = truncate(commutator(), 50);
  CHECK(d.is_symmetric());
  CHECK(d.max_width < 1e-14);
  CHECK_THROWS_AS(truncate(cesaro::cesaro(), 0), DomainError);

  std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const auto y = apply(cesaro::cesaro(), x, 4);
  CHECK(y[0] == 1.0);
  CHECK(y[1] == doctest::Approx(1.5));
  CHECK(y[3] == doctest::Approx(2.5));
  CHECK_THROWS_AS(apply(cesaro::cesaro(), x, 3), DomainError);
}

TEST_CASE("dense sections serialise to round-trippable CSV") {
  const DenseSection d = truncate(commutator(), 3);
  std::ostringstream os;
  write_csv(d, os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "c0,c1,c2");
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(std::getline(in, line));
    std::stringstream row(line);
    std::string cell;
    for (std::size_t j = 0; j < 3; ++j) {
      REQUIRE(std::getline(row, cell, ','));
      double v = 0.0;
      std::from_chars(cell.data(), cell.data() + cell.size(), v);
      CHECK(v == d.at(i, j));
    }
  }
  CHECK_FALSE(std::getline(in, line));
}
