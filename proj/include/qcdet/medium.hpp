#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <vector>

namespace qcdet {

enum class FrequencyLaw { uniform, gaussian };

struct CountLaw {
    enum class Kind { poisson, fixed };
    Kind kind = Kind::poisson;
    long fixed_count = 0;

    static CountLaw poisson() { return {Kind::poisson, 0}; }
    static CountLaw fixed(long n) { return {Kind::fixed, n}; }
};

struct MediumSpec {
    double density = 1.0;       // molecules per unit length
    double extent = 1.0;        // positions uniform over [-extent/2, extent/2]
    double omega_center = 0.0;
    double spread = 1.0;        // uniform: full width; gaussian: 2 std devs
    FrequencyLaw frequency_law = FrequencyLaw::uniform;
    CountLaw count_law = CountLaw::poisson();

    void validate() const;
};

struct Molecule {
    double r = 0.0;
    double omega = 0.0;
};

struct Medium {
    std::vector<Molecule> molecules;
};

// Positions i.i.d. uniform over the extent; count Poisson(density * extent)
// or fixed; frequencies i.i.d. per the frequency law. Throws
// EmptyMediumError when the sampled count is zero.
Medium sample_medium(const MediumSpec& spec, std::mt19937_64& engine);

// Indices n with |omega_in - omega_n| < window_of(n), sorted by detuning
// ascending, ties broken by lower index.
std::vector<std::size_t> resonant_candidates(
    const Medium& medium, double omega_in,
    const std::function<double(const Molecule&)>& window_of);

// Mean adjacent spacing of the sorted frequencies. Throws
// TooFewMoleculesError for fewer than two molecules.
double mean_level_spacing(const Medium& medium);

}  // namespace qcdet
