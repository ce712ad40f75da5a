#pragma once

#include "greenlift/kernels.hpp"
#include "greenlift/rational.hpp"

#include <Eigen/Dense>

#include <vector>

namespace greenlift {

struct Lattice {
    int rank = 0;
    RatMat gram;  // q(v) = v^T gram v for short-vector enumeration
};

using IVec = std::vector<long>;

// Complete enumeration of nonzero integer c with c^T a c <= bound (+slack);
// throws BoundTooLarge past `cap` candidates.
std::vector<IVec> enumerate_ellipsoid(const Eigen::MatrixXd& a, double bound, long cap);

// Nonzero v with q(v) <= bound, rational membership, lexicographic order.
std::vector<IVec> short_vectors(const Lattice& latt, const Rat& bound,
                                long cap = 10000000);

// All lambda with Q_ambient(lambda) = m (Q = v^T gram v / 2, exact) and
// majorant(lambda) = (1/2) lambda^T maj_gram lambda <= radius.
std::vector<IVec> vectors_of_norm(const RatMat& ambient_gram,
                                  const Eigen::MatrixXd& maj_gram, const Rat& m,
                                  double radius, long cap = 10000000);

// All pairs with moment matrix exactly T and both majorants <= radius.
std::vector<std::pair<IVec, IVec>> pairs_with_moment(const RatMat& ambient_gram,
                                                     const Eigen::MatrixXd& maj_gram,
                                                     const MomentMatrix& t,
                                                     double radius,
                                                     long cap = 10000000);

double domination_sum(const RatMat& ambient_gram, const Eigen::MatrixXd& maj_gram,
                      const Rat& m, const KernelParams& p, double radius);

Rat ambient_q(const RatMat& gram, const IVec& v);
Rat ambient_bilinear(const RatMat& gram, const IVec& v, const IVec& w);
double majorant_value(const Eigen::MatrixXd& maj_gram, const IVec& v);

} // namespace greenlift
