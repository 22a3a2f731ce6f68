#include "doctest.h"

#include <random>

#include "qhg/error.hpp"
#include "qhg/incidence.hpp"
#include "test_support.hpp"

using namespace qhg;
using qhg::testing::fixtures;
using qhg::testing::hc;
using qhg::testing::hstar;
using qhg::testing::laplacian_entry_oracle;
using qhg::testing::random_hypergraph;
using qhg::testing::single_edge;

namespace {

IntMatrix ints(std::size_t r, std::size_t c, std::initializer_list<int> values) {
  std::vector<BigInt> v(values.begin(), values.end());
  return IntMatrix(r, c, std::move(v));
}

std::vector<OrientedHypergraph> test_hypergraphs() {
  auto all = fixtures();
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) all.push_back(random_hypergraph(rng));
  return all;
}

}  // namespace

TEST_CASE("incidence_matrix follows +1 on init, -1 on term") {
  // The published display of this column is (-1,-1,+1); L is the same either way.
  CHECK(incidence_matrix(hstar()) == ints(3, 1, {1, 1, -1}));
  CHECK(incidence_matrix(single_edge()) == ints(2, 1, {1, -1}));
  CHECK(incidence_matrix(hc()) == ints(3, 2, {1, 1, 1, -1, -1, 0}));
}

TEST_CASE("laplacian examples") {
  CHECK(laplacian(hstar()) == ints(3, 3, {1, 1, -1, 1, 1, -1, -1, -1, 1}));
  CHECK(laplacian(single_edge()) == ints(2, 2, {1, -1, -1, 1}));
  CHECK(laplacian(hc()) == ints(3, 3, {2, 0, -1, 0, 2, -1, -1, -1, 1}));
}

TEST_CASE("offdiag_sign_report") {
  const SignReport a = offdiag_sign_report(laplacian(hstar()));
  CHECK(a.positive_count == 2);
  CHECK(a.negative_count == 4);
  CHECK(a.zero_count == 0);
  using Locs = std::vector<std::pair<std::size_t, std::size_t>>;
  CHECK(a.positive_locations == Locs{{0, 1}, {1, 0}});

  const SignReport b = offdiag_sign_report(laplacian(single_edge()));
  CHECK(b.positive_count == 0);
  CHECK(b.negative_count == 2);

  // H_c: a proper hypergraph with no positive off-diagonal entry.
  const SignReport c = offdiag_sign_report(laplacian(hc()));
  CHECK(c.positive_count == 0);
  CHECK(c.negative_count == 4);
  CHECK(c.zero_count == 2);

  CHECK_THROWS_AS(offdiag_sign_report(incidence_matrix(hc())), Error);
}

TEST_CASE("row_sum_vector") {
  CHECK(row_sum_vector(hstar()) == ints(3, 1, {1, 1, -1}));
  CHECK(row_sum_vector(single_edge()) == ints(2, 1, {0, 0}));
  CHECK(row_sum_vector(hc()) == ints(3, 1, {1, 1, -1}));
}

TEST_CASE("laplacian identities on fixtures and random hypergraphs") {
  for (const auto& h : test_hypergraphs()) {
    const IntMatrix inc = incidence_matrix(h);
    const IntMatrix lap = laplacian(h);
    REQUIRE(lap == lap.transpose());

    for (std::size_t v = 0; v < h.node_count(); ++v)
      for (std::size_t w = 0; w < h.node_count(); ++w)
        REQUIRE(lap(v, w) == laplacian_entry_oracle(h, v, w));

    // Diagonal = number of incident hyperedges.
    for (std::size_t v = 0; v < h.node_count(); ++v) {
      std::size_t count = 0;
      for (const Hyperedge& e : h.hyperedges())
        for (const auto* side : {&e.init, &e.term})
          count += std::count(side->begin(), side->end(), v);
      CHECK(lap(v, v) == count);
    }

    // L 1 = I d with d_e = |init| - |term|.
    IntMatrix d(h.hyperedge_count(), 1);
    for (std::size_t e = 0; e < h.hyperedge_count(); ++e)
      d(e, 0) = static_cast<long>(h.hyperedges()[e].init.size()) -
                static_cast<long>(h.hyperedges()[e].term.size());
    CHECK(row_sum_vector(h) == inc * d);

    // Column negation leaves L unchanged.
    for (std::size_t e = 0; e < inc.cols(); ++e) {
      IntMatrix flipped = inc;
      for (std::size_t v = 0; v < inc.rows(); ++v) flipped(v, e) = -flipped(v, e);
      CHECK(flipped * flipped.transpose() == lap);
    }
  }
}

TEST_CASE("laplacian is positive semidefinite in exact rational arithmetic") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> numer(-30, 30);
  std::uniform_int_distribution<int> denom(1, 12);
  for (const auto& h : test_hypergraphs()) {
    const IntMatrix lap = laplacian(h);
    const std::size_t n = lap.rows();
    for (int s = 0; s < 100; ++s) {
      std::vector<Rational> x(n);
      for (auto& xi : x) xi = Rational(numer(rng), denom(rng));
      Rational q = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q += x[i] * Rational(lap(i, j)) * x[j];
      REQUIRE(q >= 0);
    }
  }
}

TEST_CASE("graph laplacians have nonpositive off-diagonals") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto h = random_hypergraph(rng, 8, 5, true);
    CHECK(offdiag_sign_report(laplacian(h)).positive_count == 0);
  }
}

TEST_CASE("a same-side pair not shared with another hyperedge gives a positive entry") {
  std::mt19937_64 rng(13);
  int exercised = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto h = random_hypergraph(rng);
    const IntMatrix lap = laplacian(h);
    for (std::size_t e = 0; e < h.hyperedge_count(); ++e) {
      const Hyperedge& he = h.hyperedges()[e];
      for (const auto* side : {&he.init, &he.term}) {
        for (std::size_t a = 0; a < side->size(); ++a)
          for (std::size_t b = a + 1; b < side->size(); ++b) {
            const NodeIndex v = (*side)[a], w = (*side)[b];
            bool shared = false;
            for (std::size_t f = 0; f < h.hyperedge_count(); ++f) {
              if (f == e) continue;
              const Hyperedge& o = h.hyperedges()[f];
              auto in = [&](NodeIndex x) {
                return std::count(o.init.begin(), o.init.end(), x) +
                           std::count(o.term.begin(), o.term.end(), x) > 0;
              };
              if (in(v) && in(w)) shared = true;
            }
            if (shared) continue;
            ++exercised;
            CHECK(lap(v, w) > 0);
            CHECK(offdiag_sign_report(lap).positive_count > 0);
          }
      }
    }
  }
  CHECK(exercised > 50);
}
