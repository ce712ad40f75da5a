#pragma once

#include <functional>

namespace greenlift {

// Adaptive Gauss7/Kronrod15 on a finite interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double abs_tol = 1e-300);

// Integral over (0, inf) of an integrand with a power-law behaviour at 0 and an
// exponential tail: [0,1] handled by the substitution y = e^u, [1,Y] with Y
// grown until |f(Y)| drops below tail_cut * scale.
double integrate_zero_to_inf(const std::function<double(double)>& f,
                             double rel_tol = 1e-12, double tail_cut = 1e-16);

} // namespace greenlift
