#pragma once

#include <complex>

namespace greenlift {

using cplx = std::complex<double>;

struct SeriesPolicy {
    int max_terms = 4000;
    double tail_tolerance = 1e-15;
    double near_one_threshold = 0.95;
};

cplx gamma(cplx x);
double gamma_real(double x);

double digamma(double x);
cplx digamma(cplx x);

double hyp2f1(double a, double b, double c, double x, SeriesPolicy pol = {});
cplx hyp2f1_c(cplx a, cplx b, cplx c, double x, SeriesPolicy pol = {});

double kummer_m(double a, double b, double z, SeriesPolicy pol = {});
cplx kummer_m_c(cplx a, cplx b, double z, SeriesPolicy pol = {});

// log M(a,b,z) for a,b,z > 0 (all series terms positive, overflow-safe)
double kummer_m_log(double a, double b, double z, SeriesPolicy pol = {});

double whittaker_m(double nu, double mu, double z, SeriesPolicy pol = {});
// log M_{nu,mu}(z); requires 1/2+mu-nu > 0 and 1+2mu > 0
double whittaker_m_log(double nu, double mu, double z, SeriesPolicy pol = {});

} // namespace greenlift
