#include "enactlab/stats.hpp"

#include <boost/math/distributions/students_t.hpp>

namespace enactlab {

WelchResult welch_one_sided(const std::vector<double>& a, const std::vector<double>& b) {
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double va = sample_variance(a) / na;
    const double vb = sample_variance(b) / nb;

    WelchResult r;
    if (va + vb == 0.0) {
        // Degenerate: both samples constant.
        r.t = mean(a) > mean(b) ? std::numeric_limits<double>::infinity()
                                : -std::numeric_limits<double>::infinity();
        r.df = na + nb - 2.0;
        r.p_one_sided = mean(a) > mean(b) ? 0.0 : 1.0;
        return r;
    }

    r.t = (mean(a) - mean(b)) / std::sqrt(va + vb);
    // Welch-Satterthwaite degrees of freedom.
    r.df = (va + vb) * (va + vb) /
           (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    const boost::math::students_t_distribution<double> dist(r.df);
    r.p_one_sided = boost::math::cdf(boost::math::complement(dist, r.t));
    return r;
}

} // namespace enactlab
