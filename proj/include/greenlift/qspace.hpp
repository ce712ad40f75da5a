#pragma once

#include "greenlift/rational.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>
#include <utility>

namespace greenlift {

// Rational quadratic space: bilinear form gram, Q(v) = (v,v)/2.
struct QuadSpace {
    int dim = 0;
    RatMat gram;
    std::pair<int, int> sig;
    Eigen::MatrixXd gram_d;  // double copy of gram
    // Optional splitting of V (x) R as 2x2 matrices with Q = det: images of the
    // standard basis vectors. Installed for signature-(2,2) spaces only.
    std::optional<std::array<Eigen::Matrix2d, 4>> splitting;

    static QuadSpace make(RatMat gram);

    double bilinear(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
    double q(const Eigen::VectorXd& x) const { return 0.5 * bilinear(x, x); }
    Rat bilinear_exact(const RatVec& x, const RatVec& y) const;
    Rat q_exact(const RatVec& x) const;
};

std::pair<int, int> signature(const QuadSpace& space);

// Oriented negative-definite 2-plane; basis orthogonalized at construction.
struct PlanePoint {
    Eigen::VectorXd u1, u2;   // (u1,u2)=0, (u1,u1)<0, (u2,u2)<0
    double n1 = 0, n2 = 0;    // cached (u1,u1), (u2,u2)
    int orientation = 1;
    std::optional<std::pair<std::complex<double>, std::complex<double>>> chart;
};

PlanePoint make_plane(const QuadSpace& space, const Eigen::VectorXd& b1,
                      const Eigen::VectorXd& b2, int orientation = 1);

std::pair<Eigen::VectorXd, Eigen::VectorXd> project(const QuadSpace& space,
                                                    const Eigen::VectorXd& v,
                                                    const PlanePoint& z);

double majorant(const QuadSpace& space, const Eigen::VectorXd& v, const PlanePoint& z);

// Symmetric M with majorant(v,z) = (1/2) v^T M v.
Eigen::MatrixXd majorant_gram(const QuadSpace& space, const PlanePoint& z);

double gaussian(const QuadSpace& space, const Eigen::VectorXd& v, const PlanePoint& z);

struct MomentMatrix {
    Rat a, b, c;  // T = [[a,b],[b,c]]
    Rat det() const { return a * c - b * b; }
    bool positive_definite() const { return a > 0 && det() > 0; }
};

MomentMatrix moment_matrix(const QuadSpace& space, const RatVec& v, const RatVec& w);
MomentMatrix iota(const MomentMatrix& t);

// Point of the (2,2) chart H x H: plane spanned by Re(w), Im(w) where w is the
// rank-1 matrix [[z1 z2, z1],[z2, 1]] pulled back through the installed splitting.
PlanePoint hxh_to_plane(std::complex<double> z1, std::complex<double> z2,
                        const QuadSpace& space);

RatVec to_ratvec(const std::vector<long>& v);
Eigen::VectorXd to_eigen(const RatVec& v);

} // namespace greenlift
