#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "greenlift/errors.hpp"
#include "greenlift/green.hpp"
#include "greenlift/ratlin.hpp"

#include <cmath>

using namespace greenlift;

namespace {

RatMat diag(std::vector<Rat> d) {
    RatMat g(d.size(), RatVec(d.size(), 0));
    for (size_t i = 0; i < d.size(); ++i) g[i][i] = d[i];
    return g;
}

QuadSpace split_space() { return QuadSpace::make(diag({2, 2, -2, -2})); }

Eigen::VectorXd vec4(double a, double b, double c, double d) {
    Eigen::VectorXd v(4);
    v << a, b, c, d;
    return v;
}

PlanePoint generic_plane(const QuadSpace& s) {
    return make_plane(s, vec4(0.21, 0.33, 1, 0), vec4(0.17, -0.29, 0, 1));
}

} // namespace

TEST_CASE("truncated orbit sum assembles the spherical terms") {
    auto s = split_space();
    KernelParams p(cplx(2.5), 2);
    RatMat basis = rat_identity(4);
    RatVec v = {1, 0, 0, 0};
    auto z = generic_plane(s);

    std::vector<double> schedule{2.0, 4.0, 8.0};
    auto [sum, rep] = green_truncated(s, basis, v, z, p, schedule);

    // manual reassembly from the enumerated fiber
    RatMat g = diag({2, 2, -2, -2});
    Eigen::MatrixXd mg = majorant_gram(s, z);
    double want = 0.0;
    auto fiber = vectors_of_norm(g, mg, 1, 8.0);
    CHECK_FALSE(fiber.empty());
    for (const auto& lam : fiber) {
        double maj = majorant_value(mg, lam);
        want += phi2(1.0, 0.5 * (1.0 + maj), p);
    }
    want *= 2.0;
    CHECK(sum == doctest::Approx(want).epsilon(1e-12));
    CHECK(rep.partial_sums.size() == 3);
    CHECK(rep.partial_sums.back() == doctest::Approx(sum));
    CHECK(sum < 0.0);

    CHECK_THROWS_AS(green_truncated(s, basis, {0, 0, 1, 0}, z, p, schedule),
                    std::invalid_argument);  // Q(v) <= 0
    CHECK_THROWS_AS(green_truncated(s, basis, v, z, p, {}), std::invalid_argument);
    CHECK_THROWS_AS(green_truncated(s, basis, v, z, p, {4.0, 2.0}),
                    std::invalid_argument);  // non-increasing schedule
}

TEST_CASE("tail estimates shrink along the schedule") {
    auto s = split_space();
    KernelParams p(cplx(3.0), 2);
    RatMat basis = rat_identity(4);
    RatVec v = {1, 0, 0, 0};
    auto z = generic_plane(s);

    std::vector<double> schedule{4.0, 8.0, 16.0, 32.0, 64.0};
    auto [sum, rep] = green_truncated(s, basis, v, z, p, schedule);
    REQUIRE(rep.tail_estimates.size() == 5);
    CHECK(rep.converged);
    // increments decay as the radius doubles
    CHECK(rep.tail_estimates[4] < rep.tail_estimates[2]);
    CHECK(rep.tail_estimates[4] < 1e-2 * std::fabs(sum));
    // dominated by the majorant power sum at the same radius
    RatMat g = diag({2, 2, -2, -2});
    Eigen::MatrixXd mg = majorant_gram(s, z);
    double dom = domination_sum(g, mg, 1, p, 64.0) - domination_sum(g, mg, 1, p, 16.0);
    CHECK(rep.tail_estimates[3] + rep.tail_estimates[4] <=
          std::max(dom, 1e-12) * 10.0);
}

TEST_CASE("orbit sum respects lattice isometries") {
    auto s = split_space();
    KernelParams p(cplx(2.0), 2);
    RatMat basis = rat_identity(4);
    RatVec v = {1, 1, 0, 0};
    auto z = generic_plane(s);
    std::vector<double> schedule{6.0, 12.0};
    auto [sum, rep] = green_truncated(s, basis, v, z, p, schedule);

    // reflect coordinates 1 and 2: a lattice automorphism of the split form
    auto h = [](const Eigen::VectorXd& x) { return vec4(x[1], x[0], x[2], x[3]); };
    auto hz = make_plane(s, h(z.u1), h(z.u2));
    RatVec hv = {1, 1, 0, 0};
    auto [hsum, hrep] = green_truncated(s, basis, hv, hz, p, schedule);
    CHECK(hsum == doctest::Approx(sum).epsilon(1e-10));

    // sublattice orbit sums are subsums (every term is negative)
    RatMat sub = diag({2, 2, 2, 2});  // basis of the index-16 sublattice 2Z^4
    RatVec v2 = {2, 2, 0, 0};
    auto [subsum, subrep] = green_truncated(s, sub, v2, z, p, {24.0, 48.0});
    (void)subrep;
    CHECK(subsum >= green_truncated(s, basis, v2, z, p, {24.0, 48.0}).first);
}

TEST_CASE("pair sum on the sub-domain") {
    auto s = split_space();
    KernelParams p(cplx(2.0), 2);
    RatMat basis = rat_identity(4);
    RatVec v = {1, 0, 0, 0}, w = {0, 1, 0, 0};
    // plane orthogonal to v
    auto z = make_plane(s, vec4(0, 0.3, 1, 0), vec4(0, -0.2, 0, 1));

    std::vector<double> schedule{4.0, 16.0, 64.0};
    auto [sum, rep] = green_pair_truncated(s, basis, v, w, z, p, schedule);
    CHECK(sum < 0.0);
    CHECK(rep.converged);

    // translation of w along v leaves the projected datum unchanged
    RatVec wv = {1, 1, 0, 0};
    auto [sum2, rep2] = green_pair_truncated(s, basis, v, wv, z, p, schedule);
    CHECK(sum2 == doctest::Approx(sum).epsilon(1e-13));

    // z not orthogonal to v
    CHECK_THROWS_AS(green_pair_truncated(s, basis, v, w, generic_plane(s), p, schedule),
                    std::invalid_argument);
    // w parallel to v: zero projection
    CHECK_THROWS_AS(green_pair_truncated(s, basis, v, {2, 0, 0, 0}, z, p, schedule),
                    DegeneratePair);
}

TEST_CASE("cycle classes for the norm-5 trace-1 moment") {
    auto o = maximal_order(QuaternionAlgebra::make(-1, 3));
    MomentMatrix t{1, Rat(1, 2), 5};  // trace 1, norm 5: discriminant -19
    auto rep = weighted_cycle_count(t, o, 120.0);
    CHECK(rep.pair_count > 0);
    CHECK(rep.expected_coset == 4);
    CHECK(rep.expected_degree == 4);  // h(-19) = 1
    CHECK(rep.class_count == 4);
    CHECK(rep.cm_class_count == 4);
    CHECK(rep.degree_match);

    CHECK_THROWS_AS(weighted_cycle_count(MomentMatrix{2, 0, 5}, o, 60.0), DegenerateT);
}

TEST_CASE("swap bijection between a moment matrix and its involute") {
    auto o = maximal_order(QuaternionAlgebra::make(-1, 3));
    auto rep = iota_pair_report(MomentMatrix{1, Rat(1, 2), 5}, o, 60.0);
    CHECK(rep.count > 0);
    CHECK(rep.bijection_exact);
    CHECK(rep.v_norm_matches);
    CHECK(rep.iota_v_norm_matches);

    // diag(1,5) has empty support here: sqrt(-5) does not embed
    auto empty = iota_pair_report(MomentMatrix{1, 0, 5}, o, 60.0);
    CHECK(empty.count == 0);
    CHECK(empty.bijection_exact);
}
