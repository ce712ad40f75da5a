#include "greenlift/quat.hpp"
#include "greenlift/errors.hpp"
#include "greenlift/lattice.hpp"
#include "greenlift/ratlin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace greenlift {

namespace {

Int isqrt_exact(const Int& n) {
    Int r = sqrt(n);
    if (r * r != n) return Int(-1);
    return r;
}

std::vector<long> prime_factors(Int n) {
    std::vector<long> out;
    if (n < 0) n = -n;
    for (long p = 2; Int(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n.convert_to<long>());
    return out;
}

long modpow(long base, long exp, long mod) {
    long long r = 1, b = ((base % mod) + mod) % mod;
    while (exp > 0) {
        if (exp & 1) r = (r * b) % mod;
        b = (b * b) % mod;
        exp >>= 1;
    }
    return (long)r;
}

int legendre(long a, long p) {  // odd prime p, p coprime to a
    long r = modpow(a, (p - 1) / 2, p);
    return r == 1 ? 1 : -1;
}

// square-class integer representative of a rational
Int square_class(const Rat& x) { return numerator(x) * denominator(x); }

} // namespace

int hilbert_symbol(const Rat& a, const Rat& b, long p) {
    if (a == 0 || b == 0) throw std::invalid_argument("hilbert symbol needs a,b != 0");
    if (p == 0) return (a < 0 && b < 0) ? -1 : 1;

    Int ai = square_class(a), bi = square_class(b);
    long alpha = 0, beta = 0;
    while (ai % p == 0) { ai /= p; ++alpha; }
    while (bi % p == 0) { bi /= p; ++beta; }
    long u = (ai % p).convert_to<long>();
    long v = (bi % p).convert_to<long>();
    if (p != 2) {
        int sign = 1;
        if ((alpha & 1) && (beta & 1) && ((p - 1) / 2) % 2 == 1) sign = -sign;
        if ((beta & 1) && legendre(u, p) == -1) sign = -sign;
        if ((alpha & 1) && legendre(v, p) == -1) sign = -sign;
        return sign;
    }
    long u8 = ((ai % 8 + 8) % 8).convert_to<long>();
    long v8 = ((bi % 8 + 8) % 8).convert_to<long>();
    long eps_u = ((u8 - 1) / 2) & 1, eps_v = ((v8 - 1) / 2) & 1;
    long om_u = ((u8 * u8 - 1) / 8) & 1, om_v = ((v8 * v8 - 1) / 8) & 1;
    long e = (eps_u * eps_v + alpha * om_v + beta * om_u) & 1;
    return e ? -1 : 1;
}

std::vector<long> ramified_set(const Rat& a, const Rat& b) {
    std::vector<long> cand{2};
    for (long p : prime_factors(square_class(a))) cand.push_back(p);
    for (long p : prime_factors(square_class(b))) cand.push_back(p);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::vector<long> out;
    for (long p : cand)
        if (hilbert_symbol(a, b, p) == -1) out.push_back(p);
    return out;
}

QuaternionAlgebra QuaternionAlgebra::make(const Rat& a, const Rat& b) {
    if (a == 0 || b == 0) throw std::invalid_argument("need a,b != 0");
    if (a < 0 && b < 0)
        throw std::invalid_argument("definite algebra: infinite place ramified");
    QuaternionAlgebra alg;
    alg.a = a;
    alg.b = b;
    alg.ramified = ramified_set(a, b);
    if (alg.ramified.size() % 2 != 0)
        throw std::logic_error("odd ramified set (Hilbert reciprocity violated)");
    alg.disc = 1;
    for (long p : alg.ramified) alg.disc *= p;
    if (alg.disc == 1) throw std::invalid_argument("split algebra (B = M2(Q)) excluded");
    return alg;
}

long discriminant(const QuaternionAlgebra& alg) { return alg.disc; }

QuatElem q_add(const QuatElem& x, const QuatElem& y) {
    QuatElem z;
    for (int k = 0; k < 4; ++k) z.c[k] = x.c[k] + y.c[k];
    return z;
}

QuatElem q_sub(const QuatElem& x, const QuatElem& y) {
    QuatElem z;
    for (int k = 0; k < 4; ++k) z.c[k] = x.c[k] - y.c[k];
    return z;
}

QuatElem q_scale(const Rat& s, const QuatElem& x) {
    QuatElem z;
    for (int k = 0; k < 4; ++k) z.c[k] = s * x.c[k];
    return z;
}

QuatElem q_mul(const QuaternionAlgebra& alg, const QuatElem& x, const QuatElem& y) {
    const Rat &a = alg.a, &b = alg.b;
    const auto& u = x.c;
    const auto& v = y.c;
    QuatElem z;
    z.c[0] = u[0] * v[0] + a * u[1] * v[1] + b * u[2] * v[2] - a * b * u[3] * v[3];
    z.c[1] = u[0] * v[1] + u[1] * v[0] - b * u[2] * v[3] + b * u[3] * v[2];
    z.c[2] = u[0] * v[2] + u[2] * v[0] + a * u[1] * v[3] - a * u[3] * v[1];
    z.c[3] = u[0] * v[3] + u[3] * v[0] + u[1] * v[2] - u[2] * v[1];
    return z;
}

QuatElem q_conj(const QuatElem& x) {
    return {{x.c[0], -x.c[1], -x.c[2], -x.c[3]}};
}

Rat trd(const QuatElem& x) { return 2 * x.c[0]; }

Rat nrd(const QuaternionAlgebra& alg, const QuatElem& x) {
    return q_mul(alg, x, q_conj(x)).c[0];
}

QuatElem q_inv(const QuaternionAlgebra& alg, const QuatElem& x) {
    Rat n = nrd(alg, x);
    if (n == 0) throw std::invalid_argument("non-invertible element");
    return q_scale(Rat(1) / n, q_conj(x));
}

namespace {

QuatElem row_elem(const RatVec& row) {
    return {{row[0], row[1], row[2], row[3]}};
}

RatVec elem_row(const QuatElem& x) { return {x.c[0], x.c[1], x.c[2], x.c[3]}; }

Int order_disc(const QuaternionAlgebra& alg, const RatMat& basis) {
    RatMat g(4, RatVec(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            g[i][j] = trd(q_mul(alg, row_elem(basis[i]), q_conj(row_elem(basis[j]))));
    Rat d2 = rat_det(g);
    if (d2 < 0) d2 = -d2;
    if (denominator(d2) != 1)
        throw SaturationFailure("trace form determinant not integral");
    Int r = isqrt_exact(numerator(d2));
    if (r < 0) throw SaturationFailure("trace form determinant not a square");
    return r;
}

bool in_lattice(const RatMat& basis, const RatVec& x) {
    return all_integral(coords_in_basis(basis, x));
}

bool ring_closed(const QuaternionAlgebra& alg, const RatMat& basis) {
    if (!in_lattice(basis, {1, 0, 0, 0})) return false;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            QuatElem p = q_mul(alg, row_elem(basis[i]), row_elem(basis[j]));
            if (!in_lattice(basis, elem_row(p))) return false;
        }
    return true;
}

} // namespace

QuaternionOrder make_order(const QuaternionAlgebra& alg, RatMat basis) {
    if (basis.size() != 4) throw std::invalid_argument("order basis must have 4 elements");
    if (!ring_closed(alg, basis))
        throw std::invalid_argument("basis does not span a ring containing 1");
    QuaternionOrder o;
    o.alg = alg;
    o.disc = order_disc(alg, basis);
    o.basis = std::move(basis);
    return o;
}

QuaternionOrder maximal_order(const QuaternionAlgebra& alg) {
    if (denominator(alg.a) != 1 || denominator(alg.b) != 1)
        throw std::invalid_argument("order machinery expects integral a, b");
    RatMat basis = rat_identity(4);
    Int d = order_disc(alg, basis);
    Int target = alg.disc;
    while (d != target) {
        if (d % target != 0) throw SaturationFailure("discriminant drifted off target");
        Int f = d / target;
        long p = prime_factors(f).front();
        bool found = false;
        for (long c0 = 0; c0 < p && !found; ++c0)
            for (long c1 = 0; c1 < p && !found; ++c1)
                for (long c2 = 0; c2 < p && !found; ++c2)
                    for (long c3 = 0; c3 < p && !found; ++c3) {
                        if (c0 == 0 && c1 == 0 && c2 == 0 && c3 == 0) continue;
                        RatVec x(4);
                        for (int k = 0; k < 4; ++k)
                            x[k] = Rat(c0, p) * basis[0][k] + Rat(c1, p) * basis[1][k] +
                                   Rat(c2, p) * basis[2][k] + Rat(c3, p) * basis[3][k];
                        if (in_lattice(basis, x)) continue;
                        QuatElem e = row_elem(x);
                        if (denominator(trd(e)) != 1 ||
                            denominator(nrd(alg, e)) != 1)
                            continue;
                        auto rows = basis;
                        rows.push_back(x);
                        RatMat nb = rational_hnf(rows);
                        if (nb.size() != 4) continue;
                        if (!ring_closed(alg, nb)) continue;
                        Int nd = order_disc(alg, nb);
                        if (nd < d) {
                            basis = nb;
                            d = nd;
                            found = true;
                        }
                    }
        if (!found) throw SaturationFailure("saturation search exhausted");
    }
    return make_order(alg, basis);
}

std::array<Eigen::Matrix2d, 4> archimedean_embedding(const QuaternionAlgebra& alg) {
    double a = to_double(alg.a), b = to_double(alg.b);
    Eigen::Matrix2d one = Eigen::Matrix2d::Identity(), mi, mj;
    if (a > 0) {
        double sa = std::sqrt(a);
        mi << sa, 0, 0, -sa;
        mj << 0, b, 1, 0;
    } else {
        // b > 0: use j as the split generator
        double sb = std::sqrt(b);
        mj << sb, 0, 0, -sb;
        mi << 0, a, 1, 0;
    }
    return {one, mi, mj, mi * mj};
}

Eigen::Matrix2d embed(const QuaternionAlgebra& alg, const QuatElem& x) {
    auto mats = archimedean_embedding(alg);
    Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
    for (int k = 0; k < 4; ++k) m += to_double(x.c[k]) * mats[k];
    return m;
}

RatMat order_norm_gram(const QuaternionOrder& o) {
    RatMat g(4, RatVec(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            g[i][j] = trd(q_mul(o.alg, row_elem(o.basis[i]), q_conj(row_elem(o.basis[j]))));
    return g;
}

Eigen::MatrixXd order_majorant_gram(const QuaternionOrder& o) {
    // base plane: pull back [[1,0],[0,-1]] and [[0,1],[1,0]] through the splitting
    auto mats = archimedean_embedding(o.alg);
    Eigen::Matrix4d m;
    for (int k = 0; k < 4; ++k) {
        m(0, k) = mats[k](0, 0);
        m(1, k) = mats[k](0, 1);
        m(2, k) = mats[k](1, 0);
        m(3, k) = mats[k](1, 1);
    }
    Eigen::Matrix4d minv = m.inverse();
    Eigen::Vector4d u1 = minv * Eigen::Vector4d(1, 0, 0, -1);
    Eigen::Vector4d u2 = minv * Eigen::Vector4d(0, 1, 1, 0);
    double a = to_double(o.alg.a), b = to_double(o.alg.b);
    Eigen::Matrix4d g = Eigen::Vector4d(2, -2 * a, -2 * b, 2 * a * b).asDiagonal();
    Eigen::Matrix4d p = (u1 * (u1.transpose() * g)) / (double)(u1.transpose() * g * u1) +
                        (u2 * (u2.transpose() * g)) / (double)(u2.transpose() * g * u2);
    Eigen::Matrix4d m4 = g - 2.0 * (p.transpose() * g * p);
    m4 = 0.5 * (m4 + m4.transpose());
    Eigen::Matrix4d bas;  // rows: basis coords
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) bas(i, k) = to_double(o.basis[i][k]);
    Eigen::Matrix4d out = bas * m4 * bas.transpose();
    return 0.5 * (out + out.transpose());
}

QuatElem from_coords(const QuaternionOrder& o, const std::vector<long>& coords) {
    QuatElem x;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i) x.c[i] += Rat(coords[k]) * o.basis[k][i];
    return x;
}

std::vector<QuatElem> elements_of_norm(const QuaternionOrder& o, const Rat& m,
                                       double radius, const std::optional<Rat>& trace) {
    auto coords = vectors_of_norm(order_norm_gram(o), order_majorant_gram(o), m, radius);
    std::vector<QuatElem> out;
    for (const auto& c : coords) {
        QuatElem x = from_coords(o, c);
        if (trace && trd(x) != *trace) continue;
        out.push_back(std::move(x));
    }
    return out;
}

std::vector<QuatElem> unit_elements(const QuaternionOrder& o, double radius) {
    return elements_of_norm(o, 1, radius);
}

bool is_fundamental_discriminant(long d) {
    if (d >= 0) return false;
    auto squarefree = [](long n) {
        n = std::labs(n);
        for (long q = 2; q * q <= n; ++q)
            if (n % (q * q) == 0) return false;
        return true;
    };
    long r = ((d % 4) + 4) % 4;
    if (r == 1) return squarefree(d);
    if (r == 0) {
        long e = d / 4;
        long re = ((e % 4) + 4) % 4;
        return squarefree(e) && (re == 2 || re == 3);
    }
    return false;
}

bool field_embeds(const QuaternionAlgebra& alg, long d) {
    for (long p : alg.ramified)
        if (kronecker_symbol(d, p) == 1) return false;
    return true;
}

std::vector<QuatElem> embeddings_with_invariants(const QuaternionOrder& o, long t,
                                                 long n, double radius) {
    long d = t * t - 4 * n;
    if (d >= 0) throw std::invalid_argument("t^2-4n must be negative");
    if (!is_fundamental_discriminant(d))
        throw NonFundamentalDiscriminant("t^2-4n not a fundamental discriminant");
    if (std::gcd(std::labs(d), o.alg.disc) != 1)
        throw NonFundamentalDiscriminant("discriminant not coprime to d(B)");
    return elements_of_norm(o, n, radius, Rat(t));
}

CMPoint cm_point(const QuaternionAlgebra& alg, const QuatElem& w) {
    Rat disc_r = trd(w) * trd(w) - 4 * nrd(alg, w);
    if (disc_r >= 0) throw std::invalid_argument("element has non-negative discriminant");
    Eigen::Matrix2d m = embed(alg, w);
    double c = m(1, 0);
    if (std::abs(c) < 1e-12)
        throw NotInUpperHalfPlane("upper-triangular embedding has no finite fixed point");
    double ad = m(0, 0) - m(1, 1);
    double disc = to_double(disc_r);
    CMPoint p;
    p.tau = {ad / (2.0 * c), std::sqrt(-disc) / (2.0 * std::abs(c))};
    p.gen = w;
    p.disc = (long)std::llround(disc);
    return p;
}

namespace {

std::complex<double> mobius(const Eigen::Matrix2d& m, std::complex<double> z) {
    return (m(0, 0) * z + m(0, 1)) / (m(1, 0) * z + m(1, 1));
}

} // namespace

std::optional<QuatElem> gamma_equivalent(std::complex<double> tau1,
                                         std::complex<double> tau2,
                                         const QuaternionOrder& o, double radius,
                                         double tol) {
    for (const auto& g : unit_elements(o, radius)) {
        if (std::abs(mobius(embed(o.alg, g), tau1) - tau2) < tol) return g;
    }
    return std::nullopt;
}

CMClasses cm_set(const QuaternionOrder& o, long t, long n, double radius) {
    auto ws = embeddings_with_invariants(o, t, n, radius);
    auto units = unit_elements(o, std::max(radius, 60.0));
    std::vector<Eigen::Matrix2d> unit_mats;
    unit_mats.reserve(units.size());
    for (const auto& g : units) unit_mats.push_back(embed(o.alg, g));

    CMClasses out;
    for (const auto& w : ws) {
        CMPoint p = cm_point(o.alg, w);
        bool placed = false;
        for (auto& cls : out.classes) {
            for (const auto& m : unit_mats) {
                if (std::abs(mobius(m, cls.front().tau) - p.tau) < 1e-8) {
                    cls.push_back(p);
                    placed = true;
                    break;
                }
            }
            if (placed) break;
        }
        if (!placed) out.classes.push_back({p});
    }
    out.count = (long)out.classes.size();
    return out;
}

long class_number(long d) {
    if (!is_fundamental_discriminant(d))
        throw NonFundamentalDiscriminant("class_number needs a fundamental discriminant");
    long h = 0;
    for (long a = 1; 3 * a * a <= -d; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b - d;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
            ++h;
        }
    }
    return h;
}

int kronecker_symbol(long d, long n) {
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (d < 0) sign = -sign;
    }
    // factor out twos
    int res = 1;
    while (n % 2 == 0) {
        n /= 2;
        long dm = ((d % 8) + 8) % 8;
        if (dm % 2 == 0) return 0;
        if (dm == 3 || dm == 5) res = -res;
    }
    // now n odd: Jacobi symbol (d/n)
    long a = ((d % n) + n) % n;
    long m = n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long mm = m % 8;
            if (mm == 3 || mm == 5) res = -res;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3) res = -res;
        a %= m;
    }
    if (m != 1) return 0;
    return sign * res;
}

long class_number_dirichlet(long d) {
    if (!is_fundamental_discriminant(d))
        throw NonFundamentalDiscriminant("needs a fundamental discriminant");
    long w = (d == -3) ? 6 : (d == -4) ? 4 : 2;
    long long sum = 0;
    long ad = -d;
    for (long k = 1; k < ad; ++k) sum += (long long)kronecker_symbol(d, k) * k;
    long long num = (sum < 0 ? -sum : sum) * w;
    if (num % (2 * ad) != 0)
        throw std::logic_error("class number formula gave a non-integer");
    return (long)(num / (2 * ad));
}

QuaternionOrder eichler_order(const QuaternionOrder& o, const QuatElem& v) {
    Rat p = nrd(o.alg, v);
    if (denominator(p) != 1 || p <= 1)
        throw std::invalid_argument("conjugating element must have prime reduced norm");
    long pl = numerator(p).convert_to<long>();
    if (o.alg.disc % pl == 0)
        throw std::invalid_argument("level must be coprime to d(B)");
    // conjugate lattice v^-1 O v
    QuatElem vinv = q_inv(o.alg, v);
    RatMat conj_basis;
    for (int i = 0; i < 4; ++i) {
        QuatElem e = q_mul(o.alg, q_mul(o.alg, vinv, row_elem(o.basis[i])), v);
        conj_basis.push_back(elem_row(e));
    }
    // intersection via duals: (L1* + L2*)*
    RatMat d1 = rat_transpose(rat_inverse(o.basis));
    RatMat d2 = rat_transpose(rat_inverse(conj_basis));
    std::vector<RatVec> rows = d1;
    for (auto& r : d2) rows.push_back(r);
    RatMat dsum = rational_hnf(rows);
    RatMat inter = rat_transpose(rat_inverse(dsum));
    RatMat basis = rational_hnf(inter);
    return make_order(o.alg, basis);
}

Int order_index(const QuaternionOrder& o, const QuaternionOrder& sub) {
    Rat ratio = rat_det(sub.basis) / rat_det(o.basis);
    if (ratio < 0) ratio = -ratio;
    if (denominator(ratio) != 1)
        throw std::invalid_argument("not a sublattice");
    return numerator(ratio);
}

QuatElem atkin_lehner_element(const QuaternionOrder& o, long d) {
    if (d <= 1 || o.alg.disc % d != 0)
        throw std::invalid_argument("d must be a nontrivial divisor of d(B)");
    for (double radius = 10.0; radius <= 1e4; radius *= 2.0) {
        auto found = elements_of_norm(o, d, radius);
        if (!found.empty()) return found.front();
    }
    throw std::runtime_error("no element of the requested norm found");
}

} // namespace greenlift
