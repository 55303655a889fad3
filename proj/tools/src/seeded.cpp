#include "seeded.hpp"

#include <utility>
#include <vector>

namespace bifractal::cli {

double uniform(std::mt19937_64& gen, double lo, double hi)
{
    return lo + (hi - lo) * static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

int pick(std::mt19937_64& gen, int lo, int hi)
{
    return lo + static_cast<int>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
}

TrigFactor factor(std::mt19937_64& gen) { return (gen() & 1U) != 0 ? TrigFactor::Sin : TrigFactor::Cos; }

Field2D random_trig(std::mt19937_64& gen, double amp, int max_freq, const Rect& dom)
{
    std::vector<TrigTerm> terms;
    for (int t = 0; t < 2; ++t) {
        TrigTerm term;
        term.amplitude = uniform(gen, -amp, amp);
        term.fx = factor(gen);
        term.kx = pick(gen, 1, max_freq);
        term.fy = factor(gen);
        term.ky = pick(gen, 1, max_freq);
        terms.push_back(term);
    }
    return trig(std::move(terms), dom);
}

} // namespace bifractal::cli
