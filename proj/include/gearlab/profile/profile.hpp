#pragma once
// A sampled surface trace: heights in um on a uniform abscissa grid.

#include <cstddef>
#include <vector>

#include "../core.hpp"
#include "../detail/numeric.hpp"

namespace gearlab::prof {

struct Profile {
    std::vector<double> z;  // heights, um
    double dx_um = 0.0;     // sample spacing, um

    std::size_t n() const { return z.size(); }
    double evaluation_length_um() const { return z.empty() ? 0.0 : double(z.size() - 1) * dx_um; }
    double x_at(std::size_t i) const { return double(i) * dx_um; }

    void validate() const {
        if (dx_um <= 0.0) throw InvalidParams("profile: sample spacing must be positive");
        if (z.size() < 2) throw InsufficientData("profile: need at least 2 samples");
    }
};

inline Profile mean_removed(const Profile& p) {
    p.validate();
    Profile out = p;
    const double m = detail::mean(p.z);
    for (double& v : out.z) v -= m;
    return out;
}

// A generic two-column series (spectra, correlation curves, bearing curves...)
// with axis labels that travel with the data into plot files.
struct SpectrumSeries {
    std::vector<double> x;
    std::vector<double> value;
    std::string x_label;      // e.g. "wavelength_um"
    std::string value_label;  // e.g. "power_um2"
};

}  // namespace gearlab::prof
