#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "catport/optics.hpp"
#include "catport/rng.hpp"
#include "oracles.hpp"

using namespace catport;

TEST_CASE("classify_outcome covers the detector-count table") {
  REQUIRE(classify_outcome(0, 1).tag == OutcomeTag::ZeroOdd);
  REQUIRE(classify_outcome(0, 3).tag == OutcomeTag::ZeroOdd);
  REQUIRE(classify_outcome(1, 0).tag == OutcomeTag::OddZero);
  REQUIRE(classify_outcome(5, 0).tag == OutcomeTag::OddZero);
  REQUIRE(classify_outcome(0, 2).tag == OutcomeTag::ZeroEven);
  REQUIRE(classify_outcome(0, 8).tag == OutcomeTag::ZeroEven);
  REQUIRE(classify_outcome(2, 0).tag == OutcomeTag::EvenZero);
  REQUIRE(classify_outcome(4, 0).tag == OutcomeTag::EvenZero);
  REQUIRE(classify_outcome(0, 0).tag == OutcomeTag::BothZero);
  REQUIRE(classify_outcome(1, 1).tag == OutcomeTag::Impossible);
  REQUIRE(classify_outcome(3, 2).tag == OutcomeTag::Impossible);

  REQUIRE(classify_outcome(0, 1).index() == 1);
  REQUIRE(classify_outcome(1, 0).index() == 2);
  REQUIRE(classify_outcome(0, 2).index() == 3);
  REQUIRE(classify_outcome(2, 0).index() == 4);
  REQUIRE(classify_outcome(0, 0).index() == 5);
  REQUIRE(classify_outcome(1, 1).index() == 0);

  REQUIRE_THROWS_AS(classify_outcome(-1, 0), Error);
  REQUIRE_THROWS_AS(classify_outcome(0, -2), Error);
}

TEST_CASE("entangled_source is normalized and antisymmetric") {
  // Large amplitude: the cross terms vanish and N -> 1/sqrt(2).
  const auto big = entangled_source(ComplexScalar(5.0, 0.0));
  REQUIRE(std::abs(big.terms()[0].coeff.real() - 1.0 / std::sqrt(2.0)) < 1e-15);

  const auto src = entangled_source(ComplexScalar(1.0, 0.0));
  REQUIRE(src.norm_sq() == Catch::Approx(1.0).epsilon(1e-12));

  // Independent 2-mode Fock-basis norm: sum over both mode occupations.
  const auto fp = oracle::coherent_amps(ComplexScalar(1.0, 0.0), 40);
  const auto fm = oracle::coherent_amps(ComplexScalar(-1.0, 0.0), 40);
  const double n = src.terms()[0].coeff.real();
  double norm = 0.0;
  for (int a = 0; a <= 40; ++a)
    for (int b = 0; b <= 40; ++b)
      norm += std::norm(n * (fp[std::size_t(a)] * fm[std::size_t(b)] -
                             fm[std::size_t(a)] * fp[std::size_t(b)]));
  REQUIRE(norm == Catch::Approx(1.0).margin(1e-10));

  // Swapping the two modes negates the state.
  CoherentSuperposition swapped(2);
  for (const auto& t : src.terms()) swapped.add_term(t.coeff, {t.amps[1], t.amps[0]});
  REQUIRE(std::abs(swapped.overlap(src) + ComplexScalar(1.0, 0.0)) < 1e-12);

  REQUIRE_THROWS_AS(entangled_source(ComplexScalar(0.0, 0.0)), DegenerateAlpha);
}

TEST_CASE("beam_splitter maps amplitudes as documented") {
  const ComplexScalar alpha(1.3, 0.0);
  CoherentSuperposition s(2);
  s.add_term({1.0, 0.0}, {-alpha, alpha});
  const auto out = beam_splitter(s, 0, 1);
  // (-a, a) -> (0, sqrt(2) a): one port goes perfectly dark.
  REQUIRE(std::abs(out.terms()[0].amps[0]) < 1e-15);
  REQUIRE(std::abs(out.terms()[0].amps[1] - std::sqrt(2.0) * alpha) < 1e-15);

  CoherentSuperposition vac(2);
  vac.add_term({1.0, 0.0}, {{0.0, 0.0}, {0.0, 0.0}});
  const auto vout = beam_splitter(vac, 0, 1);
  REQUIRE(std::abs(vout.terms()[0].amps[0]) == 0.0);
  REQUIRE(std::abs(vout.terms()[0].amps[1]) == 0.0);
}

TEST_CASE("beam_splitter preserves overlaps and norms exactly") {
  SplitMix64 rng(21);
  for (int trial = 0; trial < 8; ++trial) {
    CoherentSuperposition a(2), b(2);
    for (int t = 0; t < 3; ++t) {
      a.add_term({rng.next_double() - 0.5, rng.next_double() - 0.5},
                 {{2.0 * rng.next_double() - 1.0, rng.next_double() - 0.5},
                  {2.0 * rng.next_double() - 1.0, rng.next_double() - 0.5}});
      b.add_term({rng.next_double() - 0.5, rng.next_double() - 0.5},
                 {{2.0 * rng.next_double() - 1.0, rng.next_double() - 0.5},
                  {2.0 * rng.next_double() - 1.0, rng.next_double() - 0.5}});
    }
    const auto ta = beam_splitter(a, 0, 1);
    const auto tb = beam_splitter(b, 0, 1);
    REQUIRE(std::abs(ta.overlap(tb) - a.overlap(b)) < 1e-14);
    REQUIRE(std::abs(ta.norm_sq() - a.norm_sq()) < 1e-14);
  }
}

TEST_CASE("beam_splitter applied twice swaps modes with a sign flip") {
  CoherentSuperposition s(2);
  const ComplexScalar a0(0.7, -0.2), b0(-1.1, 0.4);
  s.add_term({1.0, 0.0}, {a0, b0});
  const auto twice = beam_splitter(beam_splitter(s, 0, 1), 0, 1);
  REQUIRE(std::abs(twice.terms()[0].amps[0] - b0) < 1e-15);
  REQUIRE(std::abs(twice.terms()[0].amps[1] + a0) < 1e-15);

  REQUIRE_THROWS_AS(beam_splitter(s, 0, 2), BadMode);
  REQUIRE_THROWS_AS(beam_splitter(s, -1, 1), BadMode);
  REQUIRE_THROWS_AS(beam_splitter(s, 1, 1), BadMode);
}

TEST_CASE("photon-number projections resolve the identity") {
  const auto src = entangled_source(ComplexScalar(2.0, 0.0));
  const int n_cut = choose_nmax({ComplexScalar(2.0, 0.0)}, {1e-14, 4096});
  double total = 0.0;
  for (int n = 0; n <= n_cut; ++n) total += project_photon_number(src, 0, n).prob;
  REQUIRE(total == Catch::Approx(1.0).margin(1e-10));

  // Conditional states come back unit norm.
  const auto pr = project_photon_number(src, 0, 1);
  REQUIRE(pr.conditional.has_value());
  REQUIRE(pr.conditional->norm_sq() == Catch::Approx(1.0).margin(1e-13));
  REQUIRE(pr.conditional->n_modes() == 1);
}

TEST_CASE("projection handles vacuum, zero-probability, and fully-projected cases") {
  CoherentSuperposition vac(1);
  vac.add_term({1.0, 0.0}, {{0.0, 0.0}});
  const auto p0 = project_photon_number(vac, 0, 0);
  REQUIRE(p0.prob == Catch::Approx(1.0).epsilon(1e-15));
  REQUIRE(!p0.conditional.has_value()); // no modes left

  // Even cat has no single-photon component.
  const auto even = input_cat(ComplexScalar(1.0, 0.0), {1.0, 0.0}, {1.0, 0.0}).state;
  const auto p1 = project_photon_number(even, 0, 1);
  REQUIRE(p1.prob < 1e-30);
  REQUIRE(!p1.conditional.has_value());

  REQUIRE_THROWS_AS(project_photon_number(even, 1, 0), BadMode);
  REQUIRE_THROWS_AS(project_photon_number(even, 0, -1), Error);
}
