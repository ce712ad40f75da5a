#include "greenlift/specfun.hpp"
#include "greenlift/errors.hpp"

#include <cmath>
#include <cstdlib>

namespace greenlift {

namespace {

constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczosC[15] = {
    0.99999999999999709182,
    57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,     -0.49191381609762019978,
    0.33994649984811888699e-4, 0.46523628927048575665e-4,
    -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3,
    -0.16431810653676389022e-3, 0.84418223983852743293e-4,
    -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

bool is_nonpositive_integer(cplx x) {
    if (x.imag() != 0.0) return false;
    double r = x.real();
    return r <= 0.0 && std::abs(r - std::round(r)) < 1e-13;
}

cplx gamma_positive(cplx z) {
    // Re(z) >= 0.5
    cplx a = kLanczosC[0];
    for (int k = 1; k < 15; ++k) a += kLanczosC[k] / (z - 1.0 + (double)k);
    cplx t = z + kLanczosG - 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z - 0.5) * std::exp(-t) * a;
}

} // namespace

cplx gamma(cplx x) {
    if (is_nonpositive_integer(x))
        throw PoleAtNonPositiveInteger("gamma pole at " + std::to_string(x.real()));
    if (x.real() >= 0.5) return gamma_positive(x);
    // reflection
    return M_PI / (std::sin(M_PI * x) * gamma_positive(1.0 - x));
}

double gamma_real(double x) { return gamma(cplx(x, 0.0)).real(); }

template <class S>
static S digamma_t(S x) {
    S acc = 0.0;
    while (std::real(x) < 12.0) {
        acc -= S(1.0) / x;
        x += 1.0;
    }
    // asymptotic expansion
    S inv = S(1.0) / x, inv2 = inv * inv;
    S r = std::log(x) - 0.5 * inv;
    static const double bern[7] = {1.0 / 6,  -1.0 / 30, 1.0 / 42,    -1.0 / 30,
                                   5.0 / 66, -691.0 / 2730, 7.0 / 6};
    S p = inv2;
    for (int n = 0; n < 7; ++n) {
        r -= bern[n] / (2.0 * (n + 1)) * p;
        p *= inv2;
    }
    return acc + r;
}

double digamma(double x) { return digamma_t<double>(x); }
cplx digamma(cplx x) { return digamma_t<cplx>(x); }

template <class S>
static S hyp2f1_t(S a, S b, S c, double x, const SeriesPolicy& pol) {
    if (is_nonpositive_integer(cplx(c)))
        throw PoleAtNonPositiveInteger("hyp2f1: c is a non-positive integer");
    if (x < 0.0 || x >= 1.0)
        throw RatioOutOfRange("hyp2f1 argument outside [0,1)");
    if (x == 0.0) return S(1.0);

    if (x <= pol.near_one_threshold || std::abs(c - a - b) > 1e-9) {
        S sum = 1.0, term = 1.0;
        for (int n = 0; n < pol.max_terms; ++n) {
            term *= (a + (double)n) * (b + (double)n) /
                    ((c + (double)n) * (double)(n + 1)) * x;
            sum += term;
            if (std::abs(term) <= pol.tail_tolerance * std::abs(sum)) return sum;
        }
        throw NonConvergent("hyp2f1 series did not converge");
    }

    // c = a+b: logarithmic connection formula at x -> 1-
    double om = 1.0 - x;
    double lg = std::log(om);
    S coef = 1.0;
    S psi_n1 = digamma(S(1.0)), psi_a = digamma(a), psi_b = digamma(b);
    S sum = 0.0;
    for (int n = 0; n < pol.max_terms; ++n) {
        S term = coef * (2.0 * psi_n1 - psi_a - psi_b - lg);
        sum += term;
        if (n > 2 && std::abs(term) <= pol.tail_tolerance * std::abs(sum)) {
            cplx pref = gamma(cplx(a + b)) / (gamma(cplx(a)) * gamma(cplx(b)));
            if constexpr (std::is_same_v<S, double>)
                return pref.real() * sum;
            else
                return pref * sum;
        }
        coef *= (a + (double)n) * (b + (double)n) /
                ((double)(n + 1) * (double)(n + 1)) * om;
        psi_n1 += 1.0 / (double)(n + 1);
        psi_a += S(1.0) / (a + (double)n);
        psi_b += S(1.0) / (b + (double)n);
    }
    throw NonConvergent("hyp2f1 connection series did not converge");
}

double hyp2f1(double a, double b, double c, double x, SeriesPolicy pol) {
    return hyp2f1_t<double>(a, b, c, x, pol);
}

cplx hyp2f1_c(cplx a, cplx b, cplx c, double x, SeriesPolicy pol) {
    return hyp2f1_t<cplx>(a, b, c, x, pol);
}

template <class S>
static S kummer_t(S a, S b, double z, const SeriesPolicy& pol) {
    if (is_nonpositive_integer(cplx(b)))
        throw PoleAtNonPositiveInteger("kummer_m: b is a non-positive integer");
    S sum = 1.0, term = 1.0;
    for (int n = 0; n < pol.max_terms; ++n) {
        term *= (a + (double)n) / ((b + (double)n) * (double)(n + 1)) * z;
        sum += term;
        if (std::abs(term) <= pol.tail_tolerance * std::abs(sum) &&
            (double)n > std::abs(z))
            return sum;
    }
    throw NonConvergent("kummer series did not converge");
}

double kummer_m(double a, double b, double z, SeriesPolicy pol) {
    return kummer_t<double>(a, b, z, pol);
}

cplx kummer_m_c(cplx a, cplx b, double z, SeriesPolicy pol) {
    return kummer_t<cplx>(a, b, z, pol);
}

double kummer_m_log(double a, double b, double z, SeriesPolicy pol) {
    if (a <= 0.0 || b <= 0.0 || z < 0.0)
        throw NonConvergent("kummer_m_log needs a,b>0 and z>=0");
    double sum = 1.0, term = 1.0, log_scale = 0.0;
    for (int n = 0; n < 4 * pol.max_terms; ++n) {
        term *= (a + n) / ((b + n) * (n + 1)) * z;
        sum += term;
        if (sum > 1e250) {
            sum *= 1e-250;
            term *= 1e-250;
            log_scale += 250.0 * std::log(10.0);
        }
        if (term <= pol.tail_tolerance * sum && (double)n > z)
            return std::log(sum) + log_scale;
    }
    throw NonConvergent("kummer_m_log series did not converge");
}

double whittaker_m(double nu, double mu, double z, SeriesPolicy pol) {
    if (z <= 0.0) throw RatioOutOfRange("whittaker_m needs z>0");
    if (z > 500.0) return std::exp(whittaker_m_log(nu, mu, z, pol));
    return std::exp(-0.5 * z) * std::pow(z, 0.5 + mu) *
           kummer_m(0.5 + mu - nu, 1.0 + 2.0 * mu, z, pol);
}

double whittaker_m_log(double nu, double mu, double z, SeriesPolicy pol) {
    return -0.5 * z + (0.5 + mu) * std::log(z) +
           kummer_m_log(0.5 + mu - nu, 1.0 + 2.0 * mu, z, pol);
}

} // namespace greenlift
