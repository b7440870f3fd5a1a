#include <cmath>
#include <vector>

#include "fanomode/dynamics.hpp"
#include "fanomode/errors.hpp"

namespace fanomode {

DecayFit decay_rate(const Trajectory& traj, double t_a, double t_b)
{
    if (!(t_b > t_a))
        throw InputError("fit window must satisfy t_a < t_b");

    std::vector<double> t, y;
    for (const AmplitudeState& s : traj.states) {
        if (s.t < t_a - 1e-12 || s.t > t_b + 1e-12)
            continue;
        const double p = std::norm(s.c1);
        if (!(p > 0.0))
            throw InputError("|c1|^2 must be strictly positive on the fit window");
        t.push_back(s.t);
        y.push_back(-std::log(p));
    }
    if (t.size() < 2)
        throw InputError("fit window holds fewer than two samples");

    const double n = static_cast<double>(t.size());
    double mt = 0.0, my = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        mt += t[i];
        my += y[i];
    }
    mt /= n;
    my /= n;
    double stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        stt += (t[i] - mt) * (t[i] - mt);
        sty += (t[i] - mt) * (y[i] - my);
    }

    DecayFit fit;
    fit.rate = sty / stt;
    double ss = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double r = y[i] - (my + fit.rate * (t[i] - mt));
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);

    fit.monotone = true;
    for (std::size_t i = 1; i < y.size(); ++i)
        if (y[i] < y[i - 1])
            fit.monotone = false;
    if (!fit.monotone)
        fit.warning = "population not monotone on the fit window";
    return fit;
}

} // namespace fanomode
