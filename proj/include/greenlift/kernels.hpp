#pragma once

#include "greenlift/qspace.hpp"
#include "greenlift/specfun.hpp"

#include <Eigen/Dense>

namespace greenlift {

// Parameter bundle for the analytic kernels; all derived exponents come from n.
struct KernelParams {
    cplx s;
    int n;
    SeriesPolicy pol;

    KernelParams(cplx s_, int n_, SeriesPolicy pol_ = {});

    double rho0() const { return n / 2.0; }
    double s0() const { return (n - 1) / 2.0; }
    double kappa() const { return (n + 2) / 2.0; }
    double k() const { return 1.0 - s0(); }
    double sr() const;             // real s; throws if Im(s) != 0
    void require_even_dim() const; // dim V = n+2 must be even
};

// Hypergeometric kernel -(1/2) G(s,lam) r^((s+lam)/2) F((s+lam)/2,(s-lam)/2+1,s+1,r).
double phi_hyp(double r, double s, double lam, SeriesPolicy pol = {});
cplx phi_hyp_c(double r, cplx s, double lam, SeriesPolicy pol = {});

// Secondary spherical function of m=Q(v), mz=Q(v_perp).
double phi2(double m, double mz, const KernelParams& p);
cplx phi2_c(double m, double mz, const KernelParams& p);

// Two-vector kernel; ratio (Q(v)-Q(p_w v)) / (Q(v_perp)-Q(p_w v)).
double phi(const QuadSpace& space, const Eigen::VectorXd& v, const Eigen::VectorXd& w,
           const PlanePoint& z, const KernelParams& p);
// Its hypergeometric ratio (for divisor-proximity guards).
double phi_ratio(const QuadSpace& space, const Eigen::VectorXd& v,
                 const Eigen::VectorXd& w, const PlanePoint& z);

cplx c_const(const MomentMatrix& t, const KernelParams& p);

double m_t(const MomentMatrix& t, double y, const KernelParams& p);
// log|m_t| with sign, overflow-safe (m_t < 0 throughout the allowed region)
std::pair<double, int> m_t_log(const MomentMatrix& t, double y, const KernelParams& p);

struct CheckResult {
    double lhs = 0, rhs = 0, abs_err = 0, rel_err = 0;
};

CheckResult laplace_check(const QuadSpace& space, const RatVec& v, const RatVec& w,
                          const PlanePoint& z, const KernelParams& p);

double w_kernel(double a, double y, const KernelParams& p);

cplx psi_t(const MomentMatrix& t, const Eigen::Matrix2d& x);

cplx big_m_t(const MomentMatrix& t, const Eigen::Matrix2d& x, double y, double tt,
             const KernelParams& p);

cplx weil_gaussian(const QuadSpace& space, const Eigen::VectorXd& v,
                   const PlanePoint& z, cplx tau, const KernelParams& p);

struct LiftCheckResult : CheckResult {
    double separability_gap = 0;
};

LiftCheckResult scalar_lift_check(const QuadSpace& space, const RatVec& v,
                                  const RatVec& w, const PlanePoint& z,
                                  const KernelParams& p);

cplx m_t_tilde(const MomentMatrix& t, cplx tau, const KernelParams& p);
// Numerical 4*pi*y^2 d/dtaubar of M_T(y,s) e^{-2*pi*i*a*x}, for cross-checking.
cplx m_t_tilde_fd(const MomentMatrix& t, cplx tau, const KernelParams& p,
                  double h = 1e-5);

enum class FormKind { omega, omega_direct, omega_tilde };

// (1,1)-form coefficients in the dz_i ^ dzbar_j basis of the (z1,z2) chart,
// by central finite differences of the two-vector kernel.
Eigen::Matrix2cd form_coefficients(const QuadSpace& space, const Eigen::VectorXd& v,
                                   const Eigen::VectorXd& w, const PlanePoint& z,
                                   const KernelParams& p, FormKind which,
                                   double h = 1e-4);

} // namespace greenlift
