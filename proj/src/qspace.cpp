#include "greenlift/qspace.hpp"
#include "greenlift/errors.hpp"
#include "greenlift/ratlin.hpp"

#include <cmath>

namespace greenlift {

QuadSpace QuadSpace::make(RatMat gram) {
    QuadSpace s;
    s.dim = (int)gram.size();
    for (int i = 0; i < s.dim; ++i) {
        if ((int)gram[i].size() != s.dim) throw DegenerateForm("gram not square");
        for (int j = 0; j < s.dim; ++j)
            if (gram[i][j] != gram[j][i]) throw DegenerateForm("gram not symmetric");
    }
    if (rat_det(gram) == 0) throw DegenerateForm("gram degenerate");
    s.sig = sym_signature(gram);
    s.gram_d.resize(s.dim, s.dim);
    for (int i = 0; i < s.dim; ++i)
        for (int j = 0; j < s.dim; ++j) s.gram_d(i, j) = to_double(gram[i][j]);
    s.gram = std::move(gram);
    return s;
}

double QuadSpace::bilinear(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return x.dot(gram_d * y);
}

Rat QuadSpace::bilinear_exact(const RatVec& x, const RatVec& y) const {
    Rat s = 0;
    for (int i = 0; i < dim; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < dim; ++j) s += x[i] * gram[i][j] * y[j];
    }
    return s;
}

Rat QuadSpace::q_exact(const RatVec& x) const { return bilinear_exact(x, x) / 2; }

std::pair<int, int> signature(const QuadSpace& space) { return space.sig; }

PlanePoint make_plane(const QuadSpace& space, const Eigen::VectorXd& b1,
                      const Eigen::VectorXd& b2, int orientation) {
    double g11 = space.bilinear(b1, b1);
    double g12 = space.bilinear(b1, b2);
    double g22 = space.bilinear(b2, b2);
    double det = g11 * g22 - g12 * g12;
    if (std::abs(det) <= 1e-10 * std::abs(g11 * g22) || g11 >= 0 || det <= 0)
        throw DegenerateForm("basis does not span a negative-definite plane");
    PlanePoint z;
    z.u1 = b1;
    z.u2 = b2 - (g12 / g11) * b1;
    z.n1 = g11;
    z.n2 = space.bilinear(z.u2, z.u2);
    if (z.n2 >= 0) throw DegenerateForm("plane not negative definite");
    z.orientation = orientation;
    return z;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> project(const QuadSpace& space,
                                                    const Eigen::VectorXd& v,
                                                    const PlanePoint& z) {
    Eigen::VectorXd vz = (space.bilinear(v, z.u1) / z.n1) * z.u1 +
                         (space.bilinear(v, z.u2) / z.n2) * z.u2;
    return {vz, v - vz};
}

double majorant(const QuadSpace& space, const Eigen::VectorXd& v, const PlanePoint& z) {
    auto [vz, vperp] = project(space, v, z);
    return space.q(vperp) - space.q(vz);
}

Eigen::MatrixXd majorant_gram(const QuadSpace& space, const PlanePoint& z) {
    const Eigen::MatrixXd& g = space.gram_d;
    Eigen::MatrixXd p = (z.u1 * (z.u1.transpose() * g)) / z.n1 +
                        (z.u2 * (z.u2.transpose() * g)) / z.n2;
    Eigen::MatrixXd m = g - 2.0 * (p.transpose() * g * p);
    return 0.5 * (m + m.transpose());
}

double gaussian(const QuadSpace& space, const Eigen::VectorXd& v, const PlanePoint& z) {
    return std::exp(-2.0 * M_PI * majorant(space, v, z));
}

MomentMatrix moment_matrix(const QuadSpace& space, const RatVec& v, const RatVec& w) {
    MomentMatrix t;
    t.a = space.q_exact(v);
    t.b = space.bilinear_exact(v, w) / 2;
    t.c = space.q_exact(w);
    return t;
}

MomentMatrix iota(const MomentMatrix& t) { return {t.c, t.b, t.a}; }

PlanePoint hxh_to_plane(std::complex<double> z1, std::complex<double> z2,
                        const QuadSpace& space) {
    if (!space.splitting || space.sig != std::make_pair(2, 2))
        throw DegenerateForm("chart requires a signature-(2,2) space with a splitting");
    if (z1.imag() <= 0 || z2.imag() <= 0)
        throw NotInUpperHalfPlane("chart points must have positive imaginary part");
    const auto& mats = *space.splitting;
    Eigen::Matrix4d m;  // columns: vec of each basis image
    for (int k = 0; k < 4; ++k) {
        m(0, k) = mats[k](0, 0);
        m(1, k) = mats[k](0, 1);
        m(2, k) = mats[k](1, 0);
        m(3, k) = mats[k](1, 1);
    }
    Eigen::Matrix4d minv = m.inverse();
    Eigen::Vector4cd wmat;
    wmat << z1 * z2, z1, z2, std::complex<double>(1.0, 0.0);
    Eigen::Vector4cd c = minv.cast<std::complex<double>>() * wmat;
    PlanePoint z = make_plane(space, c.real(), c.imag(), 1);
    z.chart = std::make_pair(z1, z2);
    return z;
}

RatVec to_ratvec(const std::vector<long>& v) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = v[i];
    return r;
}

Eigen::VectorXd to_eigen(const RatVec& v) {
    Eigen::VectorXd r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[(long)i] = to_double(v[i]);
    return r;
}

} // namespace greenlift
