#include "swb/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace swb {

namespace {

BoundValue make(double value, std::string id, std::map<std::string, double> inputs,
                std::map<std::string, double> aux = {}) {
    BoundValue b;
    b.value = value;
    b.formula_id = std::move(id);
    b.vacuous = !(value > 0.0);
    b.inputs = std::move(inputs);
    b.aux = std::move(aux);
    return b;
}

} // namespace

BoundValue etc_bound(long T, int m, int K) {
    if (static_cast<long>(m) * K > T)
        throw std::invalid_argument("etc_bound needs m <= T/K");
    double weak = (1.0 - 1.0 / K) * static_cast<double>(T);
    return make(static_cast<double>(T - m), "ETC_T1",
                {{"T", double(T)}, {"m", double(m)}, {"K", double(K)}}, {{"weak", weak}});
}

BoundValue eg_bound_early(long T, int K, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::invalid_argument("eg_bound_early needs eps in [0,1]");
    double v = static_cast<double>(T) / (1.0 + (eps / K) * static_cast<double>(T));
    return make(v, "EG_T2_EARLY", {{"T", double(T)}, {"K", double(K)}, {"eps", eps}});
}

BoundValue eg_bound_mid(long T, int K, double eps) {
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::invalid_argument("eg_bound_mid needs eps in (0,1]");
    double v = 0.25 * (static_cast<double>(T) -
                       std::sqrt(static_cast<double>(K) * static_cast<double>(T) / eps));
    return make(v, "EG_T2_MID", {{"T", double(T)}, {"K", double(K)}, {"eps", eps}});
}

BoundValue eg_bound_combined(long T) {
    return make(static_cast<double>(T) / 8.0, "EG_T2", {{"T", double(T)}});
}

BoundValue ucb_bound_exact(long T, int K, long c, double delta) {
    double v = (1.0 - 1.0 / K) * static_cast<double>(T - static_cast<long>(K) * c) *
               (1.0 - delta);
    return make(v, "UCB_T3_EXACT",
                {{"T", double(T)}, {"K", double(K)}, {"c", double(c)}, {"delta", delta}});
}

double ucb_bound_floor(long T, int K) {
    return 0.07 * (1.0 - 1.0 / K) * static_cast<double>(T);
}

BoundValue ucb_bound_closed(long T, int K, UcbClosedForm form) {
    double lnT = std::log(static_cast<double>(T));
    if (!(static_cast<double>(T) > 4.0 * K * lnT))
        throw std::invalid_argument("ucb_bound_closed needs T > 4K ln T");
    double first = 1.0 - std::cbrt(2.0 * K * lnT / static_cast<double>(T));
    double second = form == UcbClosedForm::Printed
                        ? 1.0 - std::cbrt(static_cast<double>(K) * lnT / static_cast<double>(T))
                        : 1.0 - std::cbrt(4.0 * K * lnT / static_cast<double>(T));
    double v = (1.0 - 1.0 / K) * static_cast<double>(T) * first * second;
    return make(v,
                form == UcbClosedForm::Printed ? "UCB_T3_CLOSED_PRINTED"
                                               : "UCB_T3_CLOSED_CORRECTED",
                {{"T", double(T)}, {"K", double(K)}}, {{"floor", ucb_bound_floor(T, K)}});
}

BoundValue restart_stationary_bound(int K, int d, long T) {
    if (d < 1) throw std::invalid_argument("restart_stationary_bound needs d >= 1");
    if (static_cast<long>(K) > T / d)
        throw std::invalid_argument("restart_stationary_bound needs K <= T/d");
    double v = std::sqrt(static_cast<double>(K) * d * static_cast<double>(T)) / 20.0;
    return make(v, "RESTART_T4", {{"K", double(K)}, {"d", double(d)}, {"T", double(T)}});
}

BoundValue restart_change_bound(double a, long T, int d, double gamma, int K) {
    if (!(a > 0.0 && a <= 1.0))
        throw std::invalid_argument("restart_change_bound needs a in (0,1]");
    if (gamma < 0.0) throw std::invalid_argument("restart_change_bound needs gamma >= 0");
    if (d < 1) throw std::invalid_argument("restart_change_bound needs d >= 1");
    double aT = a * static_cast<double>(T);
    double v;
    if (gamma <= static_cast<double>(d)) {
        double frac = gamma / static_cast<double>(d);
        v = frac * aT +
            (1.0 - frac) * std::sqrt(static_cast<double>(K) * d * static_cast<double>(T)) / 20.0;
    } else {
        v = aT;
    }
    return make(v, "RESTART_T5",
                {{"a", a}, {"T", double(T)}, {"d", double(d)}, {"gamma", gamma},
                 {"K", double(K)}});
}

} // namespace swb
