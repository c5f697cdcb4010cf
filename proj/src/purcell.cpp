#include "qreset/purcell.hpp"

#include <cmath>
#include <stdexcept>

namespace qreset::purcell {

double purcell_time(const PurcellQuery& q) {
    if (!(q.detuning > 0.0) || !(q.coupling > 0.0) || !(q.induced_rate > 0.0)) {
        throw std::invalid_argument("purcell_time: all inputs must be strictly positive");
    }
    const double r = q.detuning / q.coupling;
    return r * r / q.induced_rate;
}

double effective_decay(double lambda, double kappa) {
    if (lambda < 0.0) {
        throw std::invalid_argument("effective_decay: lambda must be >= 0");
    }
    if (!(kappa > 0.0)) {
        throw std::invalid_argument("effective_decay: kappa must be > 0");
    }
    return lambda * lambda / kappa;
}

double required_detuning(double t_target, double coupling, double induced_rate) {
    if (!(t_target > 0.0) || !(coupling > 0.0) || !(induced_rate > 0.0)) {
        throw std::invalid_argument("required_detuning: all inputs must be strictly positive");
    }
    return coupling * std::sqrt(t_target * induced_rate);
}

} // namespace qreset::purcell
