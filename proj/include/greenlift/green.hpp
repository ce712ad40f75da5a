#pragma once

#include "greenlift/kernels.hpp"
#include "greenlift/lattice.hpp"
#include "greenlift/quat.hpp"

#include <vector>

namespace greenlift {

struct TruncationReport {
    std::vector<double> schedule;
    std::vector<double> partial_sums;
    std::vector<double> tail_estimates;
    bool converged = false;
};

// Truncated orbit sum 2 * sum over {lambda in L : Q(lambda)=Q(v), maj <= R}
// of the secondary spherical function. `basis` rows span the lattice in
// space coordinates.
std::pair<double, TruncationReport> green_truncated(
    const QuadSpace& space, const RatMat& basis, const RatVec& v,
    const PlanePoint& z, const KernelParams& p,
    const std::vector<double>& radius_schedule);

// Same, restricted to the sub-domain of v: z must be orthogonal to v, and the
// sum runs over the norm class of the projection of w in the projected lattice,
// with the subspace exponent (n-1)/2.
std::pair<double, TruncationReport> green_pair_truncated(
    const QuadSpace& space, const RatMat& basis, const RatVec& v, const RatVec& w,
    const PlanePoint& z, const KernelParams& p,
    const std::vector<double>& radius_schedule);

struct CycleReport {
    long pair_count = 0;
    long class_count = 0;       // two-sided unit reduction
    long expected_coset = 0;    // |W_B| = 2^omega(d(B))
    long expected_degree = 0;   // h(D) * 2^omega
    long cm_class_count = 0;
    bool degree_match = false;
};

CycleReport weighted_cycle_count(const MomentMatrix& t, const QuaternionOrder& o,
                                 double radius);

struct IotaReport {
    long count = 0;         // pairs for T (equals the count for T^iota)
    bool bijection_exact = false;
    bool v_norm_matches = true;   // every v-component has nrd = T.a
    bool iota_v_norm_matches = true;  // every v-component for T^iota has nrd = T.c
};

IotaReport iota_pair_report(const MomentMatrix& t, const QuaternionOrder& o,
                            double radius);

} // namespace greenlift
