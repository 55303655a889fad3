#pragma once

#include "bifractal/field.hpp"

#include <cstdint>
#include <random>

namespace bifractal::cli {

// Portable draws: the std distributions are implementation-defined, so
// everything is built from raw 64-bit outputs.
double uniform(std::mt19937_64& gen, double lo, double hi);
int pick(std::mt19937_64& gen, int lo, int hi);
TrigFactor factor(std::mt19937_64& gen);

/// Two trig terms with amplitudes up to `amp` and frequencies 1..max_freq.
Field2D random_trig(std::mt19937_64& gen, double amp, int max_freq, const Rect& dom = kUnitSquare);

} // namespace bifractal::cli
