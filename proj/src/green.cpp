#include "greenlift/green.hpp"
#include "greenlift/errors.hpp"
#include "greenlift/ratlin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace greenlift {

namespace {

RatMat lattice_gram(const QuadSpace& space, const RatMat& basis) {
    size_t r = basis.size();
    RatMat g(r, RatVec(r));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            g[i][j] = space.bilinear_exact(basis[i], basis[j]);
    return g;
}

Eigen::MatrixXd lattice_majorant(const QuadSpace& space, const RatMat& basis,
                                 const PlanePoint& z) {
    Eigen::MatrixXd m = majorant_gram(space, z);
    Eigen::MatrixXd b((long)basis.size(), space.dim);
    for (size_t i = 0; i < basis.size(); ++i)
        for (int k = 0; k < space.dim; ++k) b((long)i, k) = to_double(basis[i][k]);
    Eigen::MatrixXd out = b * m * b.transpose();
    return 0.5 * (out + out.transpose());
}

std::pair<double, TruncationReport> truncated_sum(
    const RatMat& gram, const Eigen::MatrixXd& maj, const Rat& m, double s,
    double lam, const SeriesPolicy& pol, const std::vector<double>& schedule) {
    double md = to_double(m);
    TruncationReport rep;
    rep.schedule = schedule;
    double sum = 0.0, prev = 0.0;
    auto vectors = vectors_of_norm(gram, maj, m, schedule.back());
    std::vector<double> majs(vectors.size());
    for (size_t i = 0; i < vectors.size(); ++i)
        majs[i] = majorant_value(maj, vectors[i]);
    for (size_t step = 0; step < schedule.size(); ++step) {
        double r = schedule[step];
        if (step > 0 && r <= schedule[step - 1])
            throw std::invalid_argument("radius schedule must be increasing");
        sum = 0.0;
        for (size_t i = 0; i < vectors.size(); ++i) {
            if (majs[i] > r) continue;
            double mz = 0.5 * (md + majs[i]);
            double ratio = md / mz;
            if (ratio > 1.0 - 1e-3)
                throw NearDivisor("point too close to a divisor of the orbit");
            sum += phi_hyp(ratio, s, lam, pol);
        }
        sum *= 2.0;
        rep.partial_sums.push_back(sum);
        rep.tail_estimates.push_back(step == 0 ? std::fabs(sum)
                                               : std::fabs(sum - prev));
        prev = sum;
    }
    size_t k = rep.tail_estimates.size();
    rep.converged = k >= 2 && rep.tail_estimates[k - 1] <= rep.tail_estimates[k - 2];
    return {sum, rep};
}

} // namespace

std::pair<double, TruncationReport> green_truncated(
    const QuadSpace& space, const RatMat& basis, const RatVec& v,
    const PlanePoint& z, const KernelParams& p,
    const std::vector<double>& radius_schedule) {
    if (radius_schedule.empty())
        throw std::invalid_argument("empty radius schedule");
    Rat m = space.q_exact(v);
    if (m <= 0) throw std::invalid_argument("Q(v) must be positive");
    return truncated_sum(lattice_gram(space, basis), lattice_majorant(space, basis, z),
                         m, p.sr(), p.rho0(), p.pol, radius_schedule);
}

std::pair<double, TruncationReport> green_pair_truncated(
    const QuadSpace& space, const RatMat& basis, const RatVec& v, const RatVec& w,
    const PlanePoint& z, const KernelParams& p,
    const std::vector<double>& radius_schedule) {
    if (radius_schedule.empty())
        throw std::invalid_argument("empty radius schedule");
    Eigen::VectorXd vd = to_eigen(v);
    if (std::abs(space.bilinear(vd, z.u1)) > 1e-9 ||
        std::abs(space.bilinear(vd, z.u2)) > 1e-9)
        throw std::invalid_argument("z must lie in the sub-domain of v");

    // project the lattice and w to the orthogonal complement of v
    Rat qv = space.q_exact(v);
    if (qv <= 0) throw std::invalid_argument("Q(v) must be positive");
    auto project_off = [&](const RatVec& x) {
        Rat f = space.bilinear_exact(x, v) / (2 * qv);
        RatVec out(x.size());
        for (size_t k = 0; k < x.size(); ++k) out[k] = x[k] - f * v[k];
        return out;
    };
    std::vector<RatVec> proj_rows;
    for (const auto& row : basis) proj_rows.push_back(project_off(row));
    RatMat proj_basis = rational_hnf(proj_rows);
    RatVec w0 = project_off(w);
    Rat m = space.q_exact(w0);
    if (m <= 0) throw DegeneratePair("projection of w has non-positive norm");
    return truncated_sum(lattice_gram(space, proj_basis),
                         lattice_majorant(space, proj_basis, z), m, p.sr(), p.s0(),
                         p.pol, radius_schedule);
}

namespace {

using DQuat = std::array<double, 4>;

DQuat dmul(double a, double b, const DQuat& u, const DQuat& v) {
    return {u[0] * v[0] + a * u[1] * v[1] + b * u[2] * v[2] - a * b * u[3] * v[3],
            u[0] * v[1] + u[1] * v[0] - b * u[2] * v[3] + b * u[3] * v[2],
            u[0] * v[2] + u[2] * v[0] + a * u[1] * v[3] - a * u[3] * v[1],
            u[0] * v[3] + u[3] * v[0] + u[1] * v[2] - u[2] * v[1]};
}

DQuat dquat(const QuatElem& x) {
    return {to_double(x.c[0]), to_double(x.c[1]), to_double(x.c[2]),
            to_double(x.c[3])};
}

struct Conjugator {
    QuatElem g;
    DQuat gd;
    double inv_nrd;  // +-1
};

// conjugacy of x, y under the enumerated norm +-1 units; double-precision
// prescreen, exact confirmation
bool unit_conjugate(const QuaternionOrder& o, const std::vector<Conjugator>& units,
                    const QuatElem& x, const QuatElem& y) {
    double a = to_double(o.alg.a), b = to_double(o.alg.b);
    DQuat xd = dquat(x), yd = dquat(y);
    double scale = 1.0;
    for (double c : yd) scale = std::max(scale, std::fabs(c));
    for (const auto& u : units) {
        const DQuat& gd = u.gd;
        DQuat cd = dmul(a, b, dmul(a, b, gd, xd), {gd[0], -gd[1], -gd[2], -gd[3]});
        double err = 0.0;
        for (int k = 0; k < 4; ++k)
            err = std::max(err, std::fabs(u.inv_nrd * cd[k] - yd[k]));
        if (err > 1e-6 * scale) continue;
        QuatElem t = q_mul(o.alg, q_mul(o.alg, u.g, x), q_inv(o.alg, u.g));
        if (t.c == y.c) return true;
    }
    return false;
}

} // namespace

CycleReport weighted_cycle_count(const MomentMatrix& t, const QuaternionOrder& o,
                                 double radius) {
    if (t.a != 1) throw DegenerateT("expected a moment matrix of the shape [[1,t/2],[t/2,n]]");
    Rat tt = 2 * t.b;
    if (denominator(tt) != 1 || denominator(t.c) != 1)
        throw DegenerateT("trace and norm must be integers");
    long tr = numerator(tt).convert_to<long>();
    long n = numerator(t.c).convert_to<long>();

    Eigen::MatrixXd maj = order_majorant_gram(o);
    auto pairs = pairs_with_moment(order_norm_gram(o), maj, t, radius);
    // conjugate by the full unit group: reduced norm +1 and -1
    std::vector<Conjugator> units;
    double ur = std::max(radius, 60.0);
    for (const auto& g : unit_elements(o, ur))
        units.push_back({g, dquat(g), 1.0});
    for (const auto& g : elements_of_norm(o, -1, ur))
        units.push_back({g, dquat(g), -1.0});

    // two-sided unit reduction: (v,w) classes correspond to unit-conjugacy
    // classes of u = v^-1 w. Dedupe the u values, and keep only those inside
    // the enumeration ball -- conjugators for larger representatives fall
    // outside the finite unit list. Every class has a representative in the
    // ball (take v = 1).
    std::set<std::array<Rat, 4>> distinct;
    for (const auto& [vc, wc] : pairs) {
        QuatElem v = from_coords(o, vc), w = from_coords(o, wc);
        QuatElem u = q_mul(o.alg, q_inv(o.alg, v), w);
        RatVec uc = coords_in_basis(o.basis, {u.c[0], u.c[1], u.c[2], u.c[3]});
        Eigen::VectorXd ud(4);
        for (int k = 0; k < 4; ++k) ud[k] = to_double(uc[k]);
        if (0.5 * ud.dot(maj * ud) > radius) continue;
        distinct.insert(u.c);
    }
    std::vector<QuatElem> reps;
    for (const auto& uc : distinct) {
        QuatElem u{uc};
        bool placed = false;
        for (const auto& r : reps)
            if (unit_conjugate(o, units, r, u)) { placed = true; break; }
        if (!placed) reps.push_back(u);
    }

    CycleReport rep;
    rep.pair_count = (long)pairs.size();
    rep.class_count = (long)reps.size();
    rep.expected_coset = 1L << ramified_set(o.alg.a, o.alg.b).size();
    long d = tr * tr - 4 * n;
    rep.expected_degree = class_number(d) * rep.expected_coset;
    rep.cm_class_count = cm_set(o, tr, n, radius).count;
    rep.degree_match = rep.class_count == rep.expected_degree &&
                       rep.cm_class_count == rep.expected_degree;
    return rep;
}

IotaReport iota_pair_report(const MomentMatrix& t, const QuaternionOrder& o,
                            double radius) {
    RatMat gram = order_norm_gram(o);
    Eigen::MatrixXd maj = order_majorant_gram(o);
    auto pairs = pairs_with_moment(gram, maj, t, radius);
    auto pairs_i = pairs_with_moment(gram, maj, iota(t), radius);

    std::vector<std::pair<IVec, IVec>> swapped;
    swapped.reserve(pairs.size());
    for (const auto& [v, w] : pairs) swapped.emplace_back(w, v);
    std::sort(swapped.begin(), swapped.end());
    auto sorted_i = pairs_i;
    std::sort(sorted_i.begin(), sorted_i.end());

    IotaReport rep;
    rep.count = (long)pairs.size();
    rep.bijection_exact = swapped == sorted_i;
    for (const auto& [vc, wc] : pairs)
        if (nrd(o.alg, from_coords(o, vc)) != t.a) rep.v_norm_matches = false;
    for (const auto& [vc, wc] : pairs_i)
        if (nrd(o.alg, from_coords(o, vc)) != t.c) rep.iota_v_norm_matches = false;
    return rep;
}

} // namespace greenlift
