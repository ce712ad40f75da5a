#include "greenlift/kernels.hpp"
#include "greenlift/errors.hpp"
#include "greenlift/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace greenlift {

KernelParams::KernelParams(cplx s_, int n_, SeriesPolicy pol_) : s(s_), n(n_), pol(pol_) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (s.real() <= s0())
        throw std::invalid_argument("Re(s) must exceed (n-1)/2");
}

double KernelParams::sr() const {
    if (s.imag() != 0.0)
        throw std::invalid_argument("real s required for this check");
    return s.real();
}

void KernelParams::require_even_dim() const {
    if ((n + 2) % 2 != 0)
        throw std::invalid_argument("dim V = n+2 must be even for this kernel");
}

double phi_hyp(double r, double s, double lam, SeriesPolicy pol) {
    if (!(r > 0.0 && r < 1.0)) throw RatioOutOfRange("hypergeometric ratio not in (0,1)");
    double a = 0.5 * (s + lam), b = 0.5 * (s - lam) + 1.0;
    double g = std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(s + 1.0));
    return -0.5 * g * std::pow(r, a) * hyp2f1(a, b, s + 1.0, r, pol);
}

cplx phi_hyp_c(double r, cplx s, double lam, SeriesPolicy pol) {
    if (!(r > 0.0 && r < 1.0)) throw RatioOutOfRange("hypergeometric ratio not in (0,1)");
    cplx a = 0.5 * (s + lam), b = 0.5 * (s - lam) + 1.0;
    cplx g = gamma(a) * gamma(b) / gamma(s + 1.0);
    return -0.5 * g * std::pow(cplx(r), a) * hyp2f1_c(a, b, s + 1.0, r, pol);
}

double phi2(double m, double mz, const KernelParams& p) {
    if (!(m > 0.0) || !(mz > 0.0) || !(m < mz))
        throw RatioOutOfRange("phi2 needs 0 < Q(v) < Q(v_perp)");
    if (p.s.real() <= p.rho0())
        throw std::invalid_argument("phi2 needs Re(s) > n/2");
    return phi_hyp(m / mz, p.sr(), p.rho0(), p.pol);
}

cplx phi2_c(double m, double mz, const KernelParams& p) {
    if (!(m > 0.0) || !(mz > 0.0) || !(m < mz))
        throw RatioOutOfRange("phi2 needs 0 < Q(v) < Q(v_perp)");
    return phi_hyp_c(m / mz, p.s, p.rho0(), p.pol);
}

namespace {

// numerator Q(v)-Q(p_w v) and denominator Q(v_perp)-Q(p_w v) of the phi ratio
std::pair<double, double> phi_ratio_parts(const QuadSpace& space,
                                          const Eigen::VectorXd& v,
                                          const Eigen::VectorXd& w,
                                          const PlanePoint& z) {
    double qv = space.q(v), qw = space.q(w), vw = space.bilinear(v, w);
    if (!(qv > 0.0) || !(4.0 * qv * qw - vw * vw > 0.0))
        throw DegeneratePair("span(v,w) must be positive definite");
    double qpw = vw * vw / (4.0 * qw);  // Q(p_w(v))
    auto [vz, vperp] = project(space, v, z);
    (void)vz;
    return {qv - qpw, space.q(vperp) - qpw};
}

} // namespace

double phi_ratio(const QuadSpace& space, const Eigen::VectorXd& v,
                 const Eigen::VectorXd& w, const PlanePoint& z) {
    auto [num, den] = phi_ratio_parts(space, v, w, z);
    return num / den;
}

double phi(const QuadSpace& space, const Eigen::VectorXd& v, const Eigen::VectorXd& w,
           const PlanePoint& z, const KernelParams& p) {
    auto [num, den] = phi_ratio_parts(space, v, w, z);
    double r = num / den;
    if (!(r > 0.0 && r < 1.0))
        throw RatioOutOfRange("z on or too close to the divisor of v");
    return phi_hyp(r, p.sr(), p.s0(), p.pol);
}

cplx c_const(const MomentMatrix& t, const KernelParams& p) {
    p.require_even_dim();
    if (!t.positive_definite()) throw DegenerateT("T must be positive definite");
    cplx s = p.s;
    double arg = 4.0 * M_PI * to_double(t.det()) / to_double(t.c);
    return -0.5 * gamma(0.5 * (s - p.s0()) + 1.0) / gamma(s + 1.0) *
           std::pow(cplx(arg), cplx(-0.5 * p.k()));
}

std::pair<double, int> m_t_log(const MomentMatrix& t, double y, const KernelParams& p) {
    p.require_even_dim();
    if (!t.positive_definite()) throw DegenerateT("T must be positive definite");
    if (!(y > 0.0)) throw std::invalid_argument("y must be positive");
    double s = p.sr(), k = p.k(), s0 = p.s0();
    double c = to_double(t.c), det = to_double(t.det()), b = to_double(t.b);
    double beta = 4.0 * M_PI * det / c;
    double log_abs_c = std::log(0.5) + std::lgamma(0.5 * (s - s0) + 1.0) -
                       std::lgamma(s + 1.0) - 0.5 * k * std::log(beta);
    double lg = log_abs_c - 0.5 * k * std::log(y) +
                whittaker_m_log(-0.5 * k, 0.5 * s, beta * y, p.pol) +
                2.0 * M_PI * b * b * y / c;
    return {lg, -1};
}

double m_t(const MomentMatrix& t, double y, const KernelParams& p) {
    auto [lg, sign] = m_t_log(t, y, p);
    return sign * std::exp(lg);
}

CheckResult laplace_check(const QuadSpace& space, const RatVec& v, const RatVec& w,
                          const PlanePoint& z, const KernelParams& p) {
    p.require_even_dim();
    Eigen::VectorXd vd = to_eigen(v), wd = to_eigen(w);
    double maj = majorant(space, vd, z);
    double qv = to_double(space.q_exact(v));
    if (maj <= qv)
        throw RatioOutOfRange("majorant(v,z) <= Q(v): integral diverges at the divisor");
    CheckResult r;
    r.lhs = phi(space, vd, wd, z, p);
    MomentMatrix t = moment_matrix(space, v, w);
    auto f = [&](double y) {
        auto [lg, sign] = m_t_log(t, y, p);
        return sign * std::exp(lg - 2.0 * M_PI * y * maj - std::log(y));
    };
    r.rhs = integrate_zero_to_inf(f);
    r.abs_err = std::fabs(r.lhs - r.rhs);
    r.rel_err = r.abs_err / std::fabs(r.lhs);
    return r;
}

double w_kernel(double a, double y, const KernelParams& p) {
    p.require_even_dim();
    double kap = p.kappa();
    if (!(a > 0.0) || !(y > 0.0) || !(kap > 1.0))
        throw std::invalid_argument("w_kernel needs a>0, y>0, kappa>1");
    return std::pow(4.0 * M_PI * a, kap - 1.0) / std::tgamma(kap - 1.0) *
           std::pow(y, 0.5 * kap) * std::exp(-2.0 * M_PI * a * y);
}

cplx psi_t(const MomentMatrix& t, const Eigen::Matrix2d& x) {
    double tr = to_double(t.a) * x(0, 0) + to_double(t.b) * (x(0, 1) + x(1, 0)) +
                to_double(t.c) * x(1, 1);
    return std::exp(cplx(0.0, 2.0 * M_PI * tr));
}

cplx big_m_t(const MomentMatrix& t, const Eigen::Matrix2d& x, double y, double tt,
             const KernelParams& p) {
    p.require_even_dim();
    int dim = p.n + 2;
    double kap_const;
    if (dim == 4) kap_const = 2.0;
    else if (dim > 5) kap_const = 1.0;
    else throw std::invalid_argument("dim V must be 4 or an even number > 5");
    double lead = 2.0 / kap_const;
    return lead * std::conj(psi_t(t, x)) * m_t(t, y, p) * m_t(iota(t), tt, p) *
           std::pow(y * tt, 1.0 - 0.5 * p.kappa());
}

cplx weil_gaussian(const QuadSpace& space, const Eigen::VectorXd& v,
                   const PlanePoint& z, cplx tau, const KernelParams& p) {
    p.require_even_dim();
    if (!(tau.imag() > 0.0)) throw NotInUpperHalfPlane("tau must be in H");
    auto [vz, vperp] = project(space, v, z);
    cplx e = std::exp(cplx(0.0, 2.0 * M_PI) *
                      (space.q(vperp) * tau + space.q(vz) * std::conj(tau)));
    return tau.imag() * e;
}

LiftCheckResult scalar_lift_check(const QuadSpace& space, const RatVec& v,
                                  const RatVec& w, const PlanePoint& z,
                                  const KernelParams& p) {
    p.require_even_dim();
    Eigen::VectorXd vd = to_eigen(v), wd = to_eigen(w);
    MomentMatrix t = moment_matrix(space, v, w);
    if (!t.positive_definite()) throw DegeneratePair("span(v,w) must be totally positive");
    double maj_v = majorant(space, vd, z), maj_w = majorant(space, wd, z);
    MomentMatrix ti = iota(t);
    auto f1 = [&](double y) {
        auto [lg, sign] = m_t_log(t, y, p);
        return sign * std::exp(lg - 2.0 * M_PI * y * maj_v - std::log(y));
    };
    auto f2 = [&](double y) {
        auto [lg, sign] = m_t_log(ti, y, p);
        return sign * std::exp(lg - 2.0 * M_PI * y * maj_w - std::log(y));
    };
    double i1 = integrate_zero_to_inf(f1);
    double i2 = integrate_zero_to_inf(f2);
    // iterated 2-D quadrature over the full product integrand
    double iterated = integrate_zero_to_inf([&](double y) {
        double fy = f1(y);
        if (fy == 0.0) return 0.0;
        return fy * integrate_zero_to_inf(f2, 1e-10);
    }, 1e-10);
    LiftCheckResult r;
    r.lhs = iterated;
    r.rhs = phi(space, vd, wd, z, p) * phi(space, wd, vd, z, p);
    r.abs_err = std::fabs(r.lhs - r.rhs);
    r.rel_err = r.abs_err / std::fabs(r.rhs);
    r.separability_gap = std::fabs(iterated - i1 * i2);
    return r;
}

cplx m_t_tilde(const MomentMatrix& t, cplx tau, const KernelParams& p) {
    p.require_even_dim();
    if (!(tau.imag() > 0.0)) throw NotInUpperHalfPlane("tau must be in H");
    if (!t.positive_definite()) throw DegenerateT("T must be positive definite");
    double s = p.sr(), k = p.k();
    double x = tau.real(), y = tau.imag();
    double a = to_double(t.a), b = to_double(t.b), c = to_double(t.c);
    double beta = 4.0 * M_PI * to_double(t.det()) / c;
    cplx ct = cplx(0.0, M_PI) * c_const(t, p) * (p.s + p.s0());
    return ct * std::pow(y, 1.0 - 0.5 * k) *
           whittaker_m(1.0 - 0.5 * k, 0.5 * s, beta * y, p.pol) *
           std::exp(2.0 * M_PI * b * b * y / c) *
           std::exp(cplx(0.0, -2.0 * M_PI * a * x));
}

cplx m_t_tilde_fd(const MomentMatrix& t, cplx tau, const KernelParams& p, double h) {
    double x = tau.real(), y = tau.imag();
    double a = to_double(t.a);
    auto f = [&](double xx, double yy) -> cplx {
        return m_t(t, yy, p) * std::exp(cplx(0.0, -2.0 * M_PI * a * xx));
    };
    cplx dx = (f(x + h, y) - f(x - h, y)) / (2.0 * h);
    cplx dy = (f(x, y + h) - f(x, y - h)) / (2.0 * h);
    cplx dtaubar = 0.5 * (dx + cplx(0.0, 1.0) * dy);
    return 4.0 * M_PI * y * y * dtaubar;
}

namespace {

// all first and second partials of u: R^4 -> R by Richardson-extrapolated
// central differences
struct Partials {
    double u0;
    double d1[4];
    double d2[4][4];
};

template <class F>
Partials partials(const F& u, const std::array<double, 4>& q, double h) {
    Partials out{};
    out.u0 = u(q);
    auto shift = [&](int i, double di, int j, double dj) {
        auto qq = q;
        qq[i] += di;
        qq[j] += dj;
        return u(qq);
    };
    for (int i = 0; i < 4; ++i) {
        auto d1h = [&](double hh) {
            return (shift(i, hh, i, 0.0) - shift(i, -hh, i, 0.0)) / (2.0 * hh);
        };
        out.d1[i] = (4.0 * d1h(0.5 * h) - d1h(h)) / 3.0;
        auto d2h = [&](double hh) {
            return (shift(i, hh, i, 0.0) - 2.0 * out.u0 + shift(i, -hh, i, 0.0)) /
                   (hh * hh);
        };
        out.d2[i][i] = (4.0 * d2h(0.5 * h) - d2h(h)) / 3.0;
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            auto dm = [&](double hh) {
                return (shift(i, hh, j, hh) - shift(i, hh, j, -hh) -
                        shift(i, -hh, j, hh) + shift(i, -hh, j, -hh)) /
                       (4.0 * hh * hh);
            };
            out.d2[i][j] = out.d2[j][i] = (4.0 * dm(0.5 * h) - dm(h)) / 3.0;
        }
    return out;
}

// Wirtinger combinations; coordinates are (x1,y1,x2,y2)
cplx holo(const Partials& p, int i) {  // d/dz_i
    return 0.5 * cplx(p.d1[2 * i], -p.d1[2 * i + 1]);
}
cplx antiholo(const Partials& p, int i) {  // d/dzbar_i
    return 0.5 * cplx(p.d1[2 * i], p.d1[2 * i + 1]);
}
cplx mixed(const Partials& p, int i, int j) {  // d/dz_i d/dzbar_j
    int a = 2 * i, b = 2 * i + 1, c = 2 * j, d = 2 * j + 1;
    return 0.25 * cplx(p.d2[a][c] + p.d2[b][d], p.d2[a][d] - p.d2[b][c]);
}

} // namespace

Eigen::Matrix2cd form_coefficients(const QuadSpace& space, const Eigen::VectorXd& v,
                                   const Eigen::VectorXd& w, const PlanePoint& z,
                                   const KernelParams& p, FormKind which, double h) {
    if (!z.chart) throw DegenerateForm("form_coefficients needs a chart point");
    auto [z1, z2] = *z.chart;
    std::array<double, 4> q0{z1.real(), z1.imag(), z2.real(), z2.imag()};

    auto eval = [&](const Eigen::VectorXd& first, const Eigen::VectorXd& second,
                    const std::array<double, 4>& q) {
        PlanePoint zz = hxh_to_plane(cplx(q[0], q[1]), cplx(q[2], q[3]), space);
        double r = phi_ratio(space, first, second, zz);
        if (r > 1.0 - 1e-3)
            throw NearDivisor("chart stencil too close to a divisor");
        return phi(space, first, second, zz, p);
    };
    auto fu = [&](const std::array<double, 4>& q) { return eval(v, w, q); };
    auto gu = [&](const std::array<double, 4>& q) { return eval(w, v, q); };

    Eigen::Matrix2cd out;
    if (which == FormKind::omega || which == FormKind::omega_tilde) {
        Partials pf = partials(fu, q0, h);
        Partials pg = partials(gu, q0, h);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                if (which == FormKind::omega)
                    // dbar(g df) = dbar g ^ df + g dbar d f
                    out(i, j) = -(holo(pf, i) * antiholo(pg, j) +
                                  pg.u0 * mixed(pf, i, j));
                else
                    out(i, j) = pf.u0 * mixed(pg, i, j);
            }
        return out;
    }
    // omega_direct: nested differences of h_i = g * d/dz_i f
    for (int i = 0; i < 2; ++i) {
        auto hi = [&](const std::array<double, 4>& q) -> cplx {
            Partials pf = partials(fu, q, h);
            return gu(q) * holo(pf, i);
        };
        for (int j = 0; j < 2; ++j) {
            int a = 2 * j, b = 2 * j + 1;
            auto shifted = [&](int coord, double d) {
                auto qq = q0;
                qq[coord] += d;
                return hi(qq);
            };
            cplx dx = (shifted(a, h) - shifted(a, -h)) / (2.0 * h);
            cplx dy = (shifted(b, h) - shifted(b, -h)) / (2.0 * h);
            out(i, j) = -0.5 * (dx + cplx(0.0, 1.0) * dy);
        }
    }
    return out;
}

} // namespace greenlift
