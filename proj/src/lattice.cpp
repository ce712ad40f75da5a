#include "greenlift/lattice.hpp"
#include "greenlift/errors.hpp"
#include "greenlift/ratlin.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace greenlift {

Rat ambient_q(const RatMat& gram, const IVec& v) {
    return ambient_bilinear(gram, v, v) / 2;
}

Rat ambient_bilinear(const RatMat& gram, const IVec& v, const IVec& w) {
    Rat s = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (size_t j = 0; j < w.size(); ++j)
            if (w[j] != 0) s += Rat(v[i]) * gram[i][j] * w[j];
    }
    return s;
}

double majorant_value(const Eigen::MatrixXd& maj_gram, const IVec& v) {
    Eigen::VectorXd x(v.size());
    for (size_t i = 0; i < v.size(); ++i) x[(long)i] = (double)v[i];
    return 0.5 * x.dot(maj_gram * x);
}

std::vector<IVec> enumerate_ellipsoid(const Eigen::MatrixXd& a, double bound, long cap) {
    const int n = (int)a.rows();
    // quadratic completion q(v) = sum_i qd[i] (v_i + sum_{j>i} qo(i,j) v_j)^2
    Eigen::MatrixXd w = a;
    Eigen::VectorXd qd(n);
    Eigen::MatrixXd qo = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        qd[i] = w(i, i);
        if (!(qd[i] > 0.0)) throw DegenerateForm("form not positive definite");
        for (int j = i + 1; j < n; ++j) qo(i, j) = w(i, j) / qd[i];
        for (int k = i + 1; k < n; ++k)
            for (int l = i + 1; l < n; ++l)
                w(k, l) -= qd[i] * qo(i, k) * qo(i, l);
    }
    double slack = bound + 1e-9 * std::max(1.0, bound);

    std::vector<IVec> out;
    IVec v(n, 0);
    long count = 0;
    // depth-first from the last coordinate down
    std::function<void(int, double)> rec = [&](int i, double remaining) {
        double u = 0.0;
        for (int j = i + 1; j < n; ++j) u += qo(i, j) * (double)v[j];
        double half = std::sqrt(std::max(0.0, remaining / qd[i]));
        long lo = (long)std::ceil(-half - u - 1e-12);
        long hi = (long)std::floor(half - u + 1e-12);
        for (long t = lo; t <= hi; ++t) {
            v[i] = t;
            double used = qd[i] * (t + u) * (t + u);
            if (used > remaining + 1e-12) continue;
            if (i == 0) {
                bool zero = std::all_of(v.begin(), v.end(),
                                        [](long x) { return x == 0; });
                if (!zero) {
                    if (++count > cap)
                        throw BoundTooLarge("enumeration cap exceeded");
                    out.push_back(v);
                }
            } else {
                rec(i - 1, remaining - used);
            }
        }
        v[i] = 0;
    };
    if (n > 0 && slack > 0.0) rec(n - 1, slack);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IVec> short_vectors(const Lattice& latt, const Rat& bound, long cap) {
    if (!is_positive_definite(latt.gram))
        throw DegenerateForm("short_vectors needs a positive-definite gram");
    Eigen::MatrixXd a(latt.rank, latt.rank);
    for (int i = 0; i < latt.rank; ++i)
        for (int j = 0; j < latt.rank; ++j) a(i, j) = to_double(latt.gram[i][j]);
    auto cands = enumerate_ellipsoid(a, to_double(bound), cap);
    std::vector<IVec> out;
    for (auto& v : cands)
        if (2 * ambient_q(latt.gram, v) <= bound) out.push_back(std::move(v));
    return out;
}

std::vector<IVec> vectors_of_norm(const RatMat& ambient_gram,
                                  const Eigen::MatrixXd& maj_gram, const Rat& m,
                                  double radius, long cap) {
    auto cands = enumerate_ellipsoid(0.5 * maj_gram, radius, cap);
    std::vector<IVec> out;
    for (auto& v : cands)
        if (ambient_q(ambient_gram, v) == m) out.push_back(std::move(v));
    return out;
}

std::vector<std::pair<IVec, IVec>> pairs_with_moment(const RatMat& ambient_gram,
                                                     const Eigen::MatrixXd& maj_gram,
                                                     const MomentMatrix& t,
                                                     double radius, long cap) {
    if (!t.positive_definite()) throw DegenerateT("moment matrix not positive definite");
    auto vs = vectors_of_norm(ambient_gram, maj_gram, t.a, radius, cap);
    auto ws = vectors_of_norm(ambient_gram, maj_gram, t.c, radius, cap);
    Rat two_b = 2 * t.b;
    std::vector<std::pair<IVec, IVec>> out;
    for (const auto& v : vs)
        for (const auto& w : ws)
            if (ambient_bilinear(ambient_gram, v, w) == two_b)
                out.emplace_back(v, w);
    return out;
}

double domination_sum(const RatMat& ambient_gram, const Eigen::MatrixXd& maj_gram,
                      const Rat& m, const KernelParams& p, double radius) {
    double expo = -0.5 * (p.s.real() + p.s0());
    double sum = 0.0;
    for (const auto& v : vectors_of_norm(ambient_gram, maj_gram, m, radius))
        sum += std::pow(majorant_value(maj_gram, v), expo);
    return sum;
}

} // namespace greenlift
