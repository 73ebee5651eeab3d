#include "geonoether/halton.hpp"

#include <cmath>
#include <stdexcept>

namespace geonoether {

namespace {
constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
}

double halton_radical_inverse(unsigned long long index, unsigned base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

bool off_excluded_locus(const CoordinateChart& chart, const std::vector<double>& x,
                        double margin) {
    for (const Expr& e : chart.excluded) {
        try {
            if (std::fabs(e.eval(x)) <= margin) return false;
        } catch (const EvalError&) {
            return false;
        }
    }
    return true;
}

std::vector<Sample> halton_samples(const SampleBox& box, int count, unsigned seed,
                                   const CoordinateChart* chart, double margin) {
    const int dim = static_cast<int>(box.lo.size());
    if (dim + 1 > static_cast<int>(sizeof kPrimes / sizeof kPrimes[0]))
        throw std::invalid_argument("sample box dimension too large");
    std::vector<Sample> out;
    out.reserve(count);
    unsigned long long idx = 1 + static_cast<unsigned long long>(seed) * 7919ULL;
    int guard = 0;
    while (static_cast<int>(out.size()) < count && guard < 1000 * count + 1000) {
        Sample s;
        s.x.resize(dim);
        for (int d = 0; d < dim; ++d) {
            double u = halton_radical_inverse(idx, kPrimes[d]);
            s.x[d] = box.lo[d] + u * (box.hi[d] - box.lo[d]);
        }
        s.t = box.t_lo + halton_radical_inverse(idx, kPrimes[dim]) * (box.t_hi - box.t_lo);
        ++idx;
        ++guard;
        if (chart && !off_excluded_locus(*chart, s.x, margin)) continue;
        out.push_back(std::move(s));
    }
    if (static_cast<int>(out.size()) < count)
        throw std::runtime_error("sample box rejects too many points near the excluded locus");
    return out;
}

}  // namespace geonoether
