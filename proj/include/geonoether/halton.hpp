#pragma once

#include <functional>
#include <vector>

#include "geonoether/expr.hpp"

namespace geonoether {

// Axis-aligned sampling region: spatial box plus a time interval for checks
// on time-dependent generators.
struct SampleBox {
    std::vector<double> lo, hi;
    double t_lo = 0.0, t_hi = 2.0;
};

struct Sample {
    std::vector<double> x;
    double t = 0.0;
};

double halton_radical_inverse(unsigned long long index, unsigned base);

// Deterministic quasi-random samples inside the box. The seed offsets the
// Halton subsequence, so distinct seeds give disjoint deterministic sets.
// Points within `margin` of the chart's excluded locus are skipped.
std::vector<Sample> halton_samples(const SampleBox& box, int count, unsigned seed,
                                   const CoordinateChart* chart = nullptr,
                                   double margin = 0.1);

bool off_excluded_locus(const CoordinateChart& chart, const std::vector<double>& x,
                        double margin);

}  // namespace geonoether
