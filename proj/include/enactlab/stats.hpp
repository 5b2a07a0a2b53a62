#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace enactlab {

inline double mean(const std::vector<double>& xs) {
    if (xs.empty())
        throw std::invalid_argument("mean of empty sample");
    double s = 0.0;
    for (double x : xs)
        s += x;
    return s / static_cast<double>(xs.size());
}

/// Population standard deviation (divide by N).
inline double population_std(const std::vector<double>& xs) {
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs)
        s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size()));
}

/// Unbiased sample variance (divide by N-1).
inline double sample_variance(const std::vector<double>& xs) {
    if (xs.size() < 2)
        throw std::invalid_argument("sample variance needs at least two points");
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs)
        s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p_one_sided = 1.0; // P(T >= t) under H0, i.e. evidence for mean(a) > mean(b)
};

/// Welch's unequal-variance t-test, one-sided for mean(a) > mean(b).
WelchResult welch_one_sided(const std::vector<double>& a, const std::vector<double>& b);

} // namespace enactlab
