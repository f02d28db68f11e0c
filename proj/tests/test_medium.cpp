#include <doctest.h>

#include <cmath>
#include <random>

#include "qcdet/errors.hpp"
#include "qcdet/medium.hpp"

using namespace qcdet;

namespace {
MediumSpec base_spec() {
    MediumSpec s;
    s.density = 10.0;
    s.extent = 2.0;
    s.omega_center = 5.0;
    s.spread = 1.0;
    return s;
}
}  // namespace

TEST_CASE("fixed count law yields exactly that many molecules") {
    auto spec = base_spec();
    spec.count_law = CountLaw::fixed(5);
    for (std::uint64_t seed : {1u, 77u, 901u}) {
        std::mt19937_64 eng(seed);
        CHECK(sample_medium(spec, eng).molecules.size() == 5);
    }
}

TEST_CASE("poisson count stays in the 4-sigma band") {
    auto spec = base_spec();
    spec.density = 5000.0;  // lambda = 1e4
    std::mt19937_64 eng(3);
    const auto m = sample_medium(spec, eng);
    const double lambda = 1e4;
    CHECK(std::abs(double(m.molecules.size()) - lambda) < 4.0 * std::sqrt(lambda));
}

TEST_CASE("uniform frequencies stay inside the spread") {
    auto spec = base_spec();
    spec.count_law = CountLaw::fixed(100000);
    std::mt19937_64 eng(9);
    const auto m = sample_medium(spec, eng);
    for (const auto& mol : m.molecules) {
        CHECK(mol.omega >= spec.omega_center - 0.5 * spec.spread);
        CHECK(mol.omega <= spec.omega_center + 0.5 * spec.spread);
        CHECK(std::abs(mol.r) <= 0.5 * spec.extent);
    }
}

TEST_CASE("zero fixed count raises the empty-medium error") {
    auto spec = base_spec();
    spec.count_law = CountLaw::fixed(0);
    std::mt19937_64 eng(1);
    CHECK_THROWS_AS(sample_medium(spec, eng), EmptyMediumError);
}

TEST_CASE("equal seeds give bit-identical media") {
    auto spec = base_spec();
    std::mt19937_64 a(123), b(123);
    const auto ma = sample_medium(spec, a);
    const auto mb = sample_medium(spec, b);
    REQUIRE(ma.molecules.size() == mb.molecules.size());
    for (std::size_t i = 0; i < ma.molecules.size(); ++i) {
        CHECK(ma.molecules[i].r == mb.molecules[i].r);
        CHECK(ma.molecules[i].omega == mb.molecules[i].omega);
    }
}

TEST_CASE("zero window yields no candidates") {
    Medium m;
    m.molecules = {{0.0, 1.0}, {0.1, 2.0}};
    CHECK(resonant_candidates(m, 1.0, [](const Molecule&) { return 0.0; }).empty());
}

TEST_CASE("exact resonance is selected") {
    Medium m;
    m.molecules = {{0.0, 1.0}, {0.1, 7.0}};
    auto hits = resonant_candidates(m, 7.0, [](const Molecule&) { return 0.5; });
    REQUIRE(hits.size() == 1);
    CHECK(hits[0] == 1);
}

TEST_CASE("candidates are sorted by detuning with index tie-break") {
    Medium m;
    m.molecules = {{0.0, 5.2}, {0.0, 4.8}, {0.0, 5.1}, {0.0, 4.9}};
    auto hits = resonant_candidates(m, 5.0, [](const Molecule&) { return 1.0; });
    REQUIRE(hits.size() == 4);
    // |0.2|,|0.2|,|0.1|,|0.1| -> indices 2,3 first (0.1), then 0,1 (0.2)
    CHECK(hits[0] == 2);
    CHECK(hits[1] == 3);
    CHECK(hits[2] == 0);
    CHECK(hits[3] == 1);
}

TEST_CASE("candidate count follows the binomial band") {
    auto spec = base_spec();
    spec.spread = 1.0;
    spec.count_law = CountLaw::fixed(10000);
    std::mt19937_64 eng(5);
    const auto m = sample_medium(spec, eng);
    const double w = 0.01;
    auto hits = resonant_candidates(m, spec.omega_center,
                                    [&](const Molecule&) { return w; });
    const double p = 2.0 * w / spec.spread;
    const double mean = 10000 * p;
    const double sd = std::sqrt(10000 * p * (1.0 - p));
    CHECK(std::abs(double(hits.size()) - mean) < 4.0 * sd);
}

TEST_CASE("scaling all windows up never loses candidates") {
    auto spec = base_spec();
    spec.count_law = CountLaw::fixed(2000);
    std::mt19937_64 eng(11);
    const auto m = sample_medium(spec, eng);
    auto small = resonant_candidates(m, 5.0, [](const Molecule&) { return 0.01; });
    auto large = resonant_candidates(m, 5.0, [](const Molecule&) { return 0.03; });
    for (auto idx : small)
        CHECK(std::find(large.begin(), large.end(), idx) != large.end());
}

TEST_CASE("mean level spacing") {
    Medium m;
    m.molecules = {{0, 0.0}, {0, 1.0}, {0, 2.0}};
    CHECK(mean_level_spacing(m) == doctest::Approx(1.0));
    m.molecules = {{0, 3.0}, {0, 0.0}};
    CHECK(mean_level_spacing(m) == doctest::Approx(3.0));
    m.molecules = {{0, 0.0}};
    CHECK_THROWS_AS(mean_level_spacing(m), TooFewMoleculesError);
}

TEST_CASE("spacing matches the order-statistics expectation") {
    auto spec = base_spec();
    spec.spread = 1.0;
    spec.count_law = CountLaw::fixed(100000);
    std::mt19937_64 eng(21);
    const auto m = sample_medium(spec, eng);
    CHECK(mean_level_spacing(m) == doctest::Approx(1e-5).epsilon(0.02));
}
