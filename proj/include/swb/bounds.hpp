#pragma once

#include <map>
#include <string>

namespace swb {

// One evaluated lower-bound expression. A bound that comes out non-positive
// is flagged vacuous rather than clamped.
struct BoundValue {
    double value = 0.0;
    std::string formula_id;
    bool vacuous = false;
    std::map<std::string, double> inputs; // echo of parameters
    std::map<std::string, double> aux;    // secondary reported values
};

// T - m, the single-change ETC floor; aux["weak"] = (1-1/K)T. Requires m <= T/K.
BoundValue etc_bound(long T, int m, int K);

// T / (1 + (eps/K) T), the small-eps discovery-time floor.
BoundValue eg_bound_early(long T, int K, double eps);

// 0.25 (T - sqrt(KT/eps)), the mid-horizon anchoring floor; vacuous for tiny eps.
BoundValue eg_bound_mid(long T, int K, double eps);

// T/8, the eps-free combination of the two eps-greedy floors.
BoundValue eg_bound_combined(long T);

// (1-1/K)(T-Kc)(1-delta), the exact lock-in regret of the forged UCB instance.
BoundValue ucb_bound_exact(long T, int K, long c, double delta);

// Closed forms in (T,K) alone. Printed: (1-1/K)T(1-(2KlnT/T)^{1/3})(1-(KlnT/T)^{1/3}).
// Corrected replaces the second factor with 1-(4KlnT/T)^{1/3}, which is what the
// substitution c >= (T*alpha/2K)^{2/3} actually yields. aux["floor"] = 0.07(1-1/K)T.
enum class UcbClosedForm { Printed, Corrected };
BoundValue ucb_bound_closed(long T, int K, UcbClosedForm form);
double ucb_bound_floor(long T, int K);

// sqrt(KdT)/20: the stationary price of restarting every T/d rounds.
// Requires K <= T/d.
BoundValue restart_stationary_bound(int K, int d, long T);

// Piecewise: (gamma/d) aT + (1/20)(1-gamma/d) sqrt(KdT) for gamma <= d, else aT.
// a is the single-change linear-rate constant of the wrapped algorithm.
BoundValue restart_change_bound(double a, long T, int d, double gamma, int K);

} // namespace swb
