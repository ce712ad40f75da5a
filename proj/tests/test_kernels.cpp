#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "greenlift/errors.hpp"
#include "greenlift/kernels.hpp"
#include "greenlift/quadrature.hpp"
#include "greenlift/quat.hpp"

#include <cmath>

using namespace greenlift;

namespace {

RatMat diag(std::vector<Rat> d) {
    RatMat g(d.size(), RatVec(d.size(), 0));
    for (size_t i = 0; i < d.size(); ++i) g[i][i] = d[i];
    return g;
}

// Q = x1^2 + x2^2 - x3^2 - x4^2
QuadSpace split_space() { return QuadSpace::make(diag({2, 2, -2, -2})); }

QuadSpace quat_space() {
    auto s = QuadSpace::make(diag({2, 2, -6, -6}));
    s.splitting = archimedean_embedding(QuaternionAlgebra::make(-1, 3));
    return s;
}

Eigen::VectorXd vec4(double a, double b, double c, double d) {
    Eigen::VectorXd v(4);
    v << a, b, c, d;
    return v;
}

// plane with prescribed Q(v_perp) for v = e1 in split_space: u1 = (t,0,1,0)
PlanePoint tuned_plane(const QuadSpace& s, double qperp) {
    double t = std::sqrt(1.0 - 1.0 / qperp);
    return make_plane(s, vec4(t, 0, 1, 0), vec4(0, 0, 0, 1));
}

} // namespace

TEST_CASE("parameter bundle guards") {
    CHECK_THROWS_AS(KernelParams(cplx(0.4), 2), std::invalid_argument);
    CHECK_THROWS_AS(KernelParams(cplx(2.0), 0), std::invalid_argument);
    KernelParams p(cplx(2.0), 2);
    CHECK(p.s0() == 0.5);
    CHECK(p.rho0() == 1.0);
    CHECK(p.kappa() == 2.0);
    CHECK(p.k() == 0.5);
    CHECK_THROWS_AS(KernelParams(cplx(2.0, 1.0), 2).sr(), std::invalid_argument);
    CHECK_THROWS_AS(KernelParams(cplx(2.0), 3).require_even_dim(),
                    std::invalid_argument);
}

TEST_CASE("hypergeometric kernel power law and log singularity") {
    for (double s : {2.0, 3.0, 4.5})
        for (double lam : {0.5, 1.0, 1.5}) {
            // r -> 0: power law r^{(s+lam)/2}
            double p1 = phi_hyp(1e-6, s, lam), p2 = phi_hyp(2e-6, s, lam);
            CHECK(p2 / p1 ==
                  doctest::Approx(std::pow(2.0, 0.5 * (s + lam))).epsilon(1e-5));
            CHECK(p1 < 0.0);
            // r -> 1: phi = (1/2) log(1-r) + O(1)
            double eps = 1e-7;
            double d = phi_hyp(1.0 - eps, s, lam) - phi_hyp(1.0 - 2.0 * eps, s, lam);
            CHECK(d == doctest::Approx(-0.5 * std::log(2.0)).epsilon(1e-4));
        }
    CHECK_THROWS_AS(phi_hyp(0.0, 2.0, 1.0), RatioOutOfRange);
    CHECK_THROWS_AS(phi_hyp(1.0, 2.0, 1.0), RatioOutOfRange);

    // complex version matches the real one on the real axis
    for (double r : {0.2, 0.6, 0.9}) {
        cplx c = phi_hyp_c(r, cplx(2.5), 1.0);
        CHECK(c.imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(c.real() == doctest::Approx(phi_hyp(r, 2.5, 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("secondary spherical function") {
    KernelParams p(cplx(2.5), 2);
    CHECK(phi2(1.0, 3.0, p) ==
          doctest::Approx(phi_hyp(1.0 / 3.0, 2.5, 1.0)).epsilon(1e-13));
    CHECK_THROWS_AS(phi2(3.0, 1.0, p), RatioOutOfRange);
    CHECK_THROWS_AS(phi2(-1.0, 1.0, p), RatioOutOfRange);
    // needs Re s > n/2
    CHECK_THROWS_AS(phi2(1.0, 3.0, KernelParams(cplx(0.9), 2)), std::invalid_argument);
    // complex parameter evaluation agrees on the real axis
    cplx c = phi2_c(1.0, 3.0, KernelParams(cplx(2.5, 0.0), 2));
    CHECK(c.real() == doctest::Approx(phi2(1.0, 3.0, p)).epsilon(1e-12));
}

TEST_CASE("two-vector kernel ratio and invariances") {
    auto s = split_space();
    KernelParams p(cplx(2.0), 2);
    Eigen::VectorXd v = vec4(1, 0, 0, 0), w = vec4(0, 1, 0, 0);
    auto z = tuned_plane(s, 2.0);

    // manual ratio: Q(p_w v) = (v,w)^2/(4Q(w)) = 0 here, so r = Q(v)/Q(v_perp)
    CHECK(phi_ratio(s, v, w, z) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(phi(s, v, w, z, p) ==
          doctest::Approx(phi_hyp(0.5, 2.0, 0.5)).epsilon(1e-12));

    // scaling either vector leaves the ratio fixed
    CHECK(phi(s, 3.0 * v, w, z, p) == doctest::Approx(phi(s, v, w, z, p)));
    CHECK(phi(s, v, 0.5 * w, z, p) == doctest::Approx(phi(s, v, w, z, p)));

    // non positive-definite span rejected
    CHECK_THROWS_AS(phi(s, v, vec4(0, 0, 1, 0), z, p), DegeneratePair);
    // z on the divisor of v: ratio hits 1 and is rejected
    auto on_div = make_plane(s, vec4(0, 0, 1, 0), vec4(0, 0, 0, 1));
    CHECK_THROWS_AS(phi(s, v, w, on_div, p), RatioOutOfRange);

    // nonzero (v,w): Q(p_w v) = b^2/c enters both parts
    Eigen::VectorXd w2 = vec4(0.5, 2.0, 1.5, 0.0);  // Q = 2, (v,w2) = 1
    double b = s.bilinear(v, w2);
    CHECK(b == doctest::Approx(1.0));
    double qpw = b * b / (4.0 * s.q(w2));
    auto [vz, vperp] = project(s, v, z);
    double want = (s.q(v) - qpw) / (s.q(vperp) - qpw);
    CHECK(phi_ratio(s, v, w2, z) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("moment constant scaling") {
    KernelParams p(cplx(2.0), 2);
    MomentMatrix t{1, Rat(1, 2), 2};
    MomentMatrix t4{4, 2, 8};  // 4T: det scales by 16, c by 4
    cplx c1 = c_const(t, p), c4 = c_const(t4, p);
    CHECK(std::abs(c4 / c1 - std::pow(4.0, -0.5 * p.k())) < 1e-12);
    CHECK_THROWS_AS(c_const(MomentMatrix{1, 2, 1}, p), DegenerateT);
    CHECK_THROWS_AS(c_const(t, KernelParams(cplx(2.0), 3)), std::invalid_argument);
}

TEST_CASE("whittaker seed function") {
    KernelParams p(cplx(2.0), 2);
    MomentMatrix t{1, Rat(1, 2), 2};
    double beta = 4.0 * M_PI * to_double(t.det()) / to_double(t.c);

    for (double y : {0.3, 1.0, 4.0}) {
        // direct (non-log) evaluation of the same closed form
        double direct = -0.5 *
                        std::exp(std::lgamma(0.5 * (2.0 - 0.5) + 1.0) -
                                 std::lgamma(3.0)) *
                        std::pow(beta, -0.5 * p.k()) * std::pow(y, -0.5 * p.k()) *
                        whittaker_m(-0.5 * p.k(), 1.0, beta * y) *
                        std::exp(2.0 * M_PI * 0.25 * y / 2.0);
        CHECK(m_t(t, y, p) == doctest::Approx(direct).epsilon(1e-11));
        auto [lg, sign] = m_t_log(t, y, p);
        CHECK(sign == -1);
        CHECK(m_t(t, y, p) < 0.0);
        CHECK(lg == doctest::Approx(std::log(-direct)).epsilon(1e-11));
    }
    CHECK_THROWS_AS(m_t(MomentMatrix{1, 1, 1}, 1.0, p), DegenerateT);
    CHECK_THROWS_AS(m_t(t, -1.0, p), std::invalid_argument);
}

TEST_CASE("laplace transform identity") {
    auto s = split_space();
    KernelParams p(cplx(2.0), 2);
    RatVec v = {1, 0, 0, 0}, w = {0, 1, 0, 0};

    for (double qperp : {1.5, 2.0, 4.0}) {
        auto z = tuned_plane(s, qperp);
        auto r = laplace_check(s, v, w, z, p);
        CHECK(r.rel_err < 1e-9);
    }
    // nonzero off-diagonal moment
    RatVec w2 = {Rat(1, 2), 2, Rat(3, 2), 0};
    auto z = tuned_plane(s, 3.0);
    auto r2 = laplace_check(s, v, w2, z, p);
    CHECK(r2.rel_err < 1e-9);

    // s = 3 as well
    auto r3 = laplace_check(s, v, w, z, KernelParams(cplx(3.0), 2));
    CHECK(r3.rel_err < 1e-9);

    // divergent configuration rejected: majorant(v,z) <= Q(v)
    auto zdiv = make_plane(s, vec4(0, 0, 1, 0), vec4(0, 0, 0, 1));
    CHECK_THROWS_AS(laplace_check(s, v, w, zdiv, p), RatioOutOfRange);
}

TEST_CASE("weight kernel normalization") {
    for (int n : {2, 4}) {
        KernelParams p(cplx((n + 1) / 2.0 + 1.0), n);
        double kap = p.kappa();
        for (double a : {0.5, 1.0, 3.0}) {
            double total = integrate_zero_to_inf([&](double y) {
                return w_kernel(a, y, p) * std::pow(y, 0.5 * kap) *
                       std::exp(-2.0 * M_PI * a * y) / (y * y);
            });
            CHECK(total == doctest::Approx(1.0).epsilon(1e-11));
        }
    }
    CHECK_THROWS_AS(w_kernel(-1.0, 1.0, KernelParams(cplx(2.0), 2)),
                    std::invalid_argument);
}

TEST_CASE("character and product seed") {
    MomentMatrix t{1, Rat(1, 2), 2};
    Eigen::Matrix2d x;
    x << 0.25, -0.5, -0.5, 0.125;
    cplx ps = psi_t(t, x);
    CHECK(std::abs(ps) == doctest::Approx(1.0).epsilon(1e-13));
    double tr = 0.25 + 0.5 * (-1.0) + 2.0 * 0.125;
    CHECK(ps.real() == doctest::Approx(std::cos(2 * M_PI * tr)).epsilon(1e-12));
    CHECK(ps.imag() == doctest::Approx(std::sin(2 * M_PI * tr)).epsilon(1e-12));

    KernelParams p(cplx(2.0), 2);  // dim 4: leading constant 2/2 = 1
    double y = 0.7, tt = 1.3;
    cplx got = big_m_t(t, x, y, tt, p);
    cplx want = std::conj(ps) * m_t(t, y, p) * m_t(iota(t), tt, p) *
                std::pow(y * tt, 1.0 - 0.5 * p.kappa());
    CHECK(std::abs(got - want) < 1e-12 * std::abs(want));

    KernelParams p6(cplx(3.0), 4);  // dim 6: leading constant 2
    cplx got6 = big_m_t(t, x, y, tt, p6);
    cplx want6 = 2.0 * std::conj(ps) * m_t(t, y, p6) * m_t(iota(t), tt, p6) *
                 std::pow(y * tt, 1.0 - 0.5 * p6.kappa());
    CHECK(std::abs(got6 - want6) < 1e-12 * std::abs(want6));

    // dim 5 has no product normalization
    CHECK_THROWS_AS(big_m_t(t, x, y, tt, KernelParams(cplx(2.0), 3)),
                    std::invalid_argument);
}

TEST_CASE("gaussian seed for the lift") {
    auto s = split_space();
    KernelParams p(cplx(2.0), 2);
    auto z = tuned_plane(s, 2.0);
    cplx tau(0.3, 0.8);

    CHECK(std::abs(weil_gaussian(s, Eigen::VectorXd::Zero(4), z, tau, p) - 0.8) <
          1e-13);
    Eigen::VectorXd v = vec4(1, 0, 0, 0);
    cplx g = weil_gaussian(s, v, z, tau, p);
    // |value| = y * exp(-2 pi y maj(v,z))
    CHECK(std::abs(g) ==
          doctest::Approx(0.8 * std::exp(-2 * M_PI * 0.8 * majorant(s, v, z)))
              .epsilon(1e-12));
    // phase carries e^{2 pi i x Q(v)}
    CHECK(std::arg(g / std::abs(g)) ==
          doctest::Approx(2 * M_PI * 0.3 * s.q(v)).epsilon(1e-12));
    CHECK_THROWS_AS(weil_gaussian(s, v, z, cplx(0.0, -1.0), p), NotInUpperHalfPlane);
}

TEST_CASE("iterated integral factorizes into a kernel product") {
    auto s = split_space();
    KernelParams p(cplx(2.0), 2);
    RatVec v = {1, 0, 0, 0}, w = {0, 1, 0, 0};
    // plane far from both divisors, generic position
    auto z = make_plane(s, vec4(0.5, 0.3, 1, 0), vec4(0.2, -0.4, 0, 1));
    auto r = scalar_lift_check(s, v, w, z, p);
    CHECK(r.rel_err < 1e-7);
    CHECK(r.separability_gap < 1e-9 * std::abs(r.lhs));
    CHECK_THROWS_AS(scalar_lift_check(s, v, {0, 0, 1, 0}, z, p), DegeneratePair);
}

TEST_CASE("antiholomorphic derivative closed form") {
    KernelParams p(cplx(2.0), 2);
    MomentMatrix t{1, Rat(1, 2), 2};
    for (cplx tau : {cplx(0.0, 0.7), cplx(0.4, 1.2), cplx(-0.3, 2.0)}) {
        cplx closed = m_t_tilde(t, tau, p);
        cplx fd = m_t_tilde_fd(t, tau, p);
        CHECK(std::abs(closed - fd) < 1e-6 * std::abs(closed));
        // prefactor relation against the moment constant
        cplx ct = closed / (std::pow(tau.imag(), 1.0 - 0.5 * p.k()) *
                            whittaker_m(1.0 - 0.5 * p.k(), 0.5 * p.sr(),
                                        4.0 * M_PI * to_double(t.det()) /
                                            to_double(t.c) * tau.imag()) *
                            std::exp(2.0 * M_PI * 0.25 * tau.imag() / 2.0) *
                            std::exp(cplx(0.0, -2.0 * M_PI * tau.real())));
        cplx want = cplx(0.0, M_PI) * c_const(t, p) * (p.s + p.s0());
        CHECK(std::abs(ct - want) < 1e-10 * std::abs(want));
    }
    CHECK_THROWS_AS(m_t_tilde(t, cplx(0.0, -1.0), p), NotInUpperHalfPlane);
}

TEST_CASE("form coefficients: product rule and symmetry relation") {
    auto s = quat_space();
    KernelParams p(cplx(2.0), 2);
    Eigen::VectorXd v = vec4(1, 0, 0, 0), w = vec4(0, 2, 1, 0);  // T = diag(1,1)
    auto z = hxh_to_plane(cplx(0.3, 0.5), cplx(0.5, 0.5), s);
    REQUIRE(phi_ratio(s, v, w, z) < 0.9);
    REQUIRE(phi_ratio(s, w, v, z) < 0.9);

    auto om = form_coefficients(s, v, w, z, p, FormKind::omega);
    auto omd = form_coefficients(s, v, w, z, p, FormKind::omega_direct);
    double scale = om.cwiseAbs().maxCoeff();
    CHECK((om - omd).cwiseAbs().maxCoeff() < 1e-4 * scale);

    // omega(v,w) + conj(omega(w,v)) = omega_tilde(v,w) - omega_tilde(w,v), where
    // conjugating a (1,1)-form sends the coefficient matrix to -conj(transpose)
    auto omw = form_coefficients(s, w, v, z, p, FormKind::omega);
    auto otv = form_coefficients(s, v, w, z, p, FormKind::omega_tilde);
    auto otw = form_coefficients(s, w, v, z, p, FormKind::omega_tilde);
    Eigen::Matrix2cd lhs = om, rhs = otv - otw;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) lhs(i, j) -= std::conj(omw(j, i));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-4 * scale);

    // chart required
    auto plain = make_plane(s, vec4(0.1, 0.1, 1, 0), vec4(0.1, -0.1, 0, 1));
    CHECK_THROWS_AS(form_coefficients(s, v, w, plain, p, FormKind::omega),
                    DegenerateForm);
}
