#pragma once

#include "greenlift/rational.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>
#include <vector>

namespace greenlift {

// B = (a,b / Q): i^2 = a, j^2 = b, ij = -ji. Must be indefinite and division.
struct QuaternionAlgebra {
    Rat a, b;
    std::vector<long> ramified;  // finite ramified primes
    long disc = 1;               // d(B)

    static QuaternionAlgebra make(const Rat& a, const Rat& b);
};

// element in 1, i, j, ij coordinates
struct QuatElem {
    std::array<Rat, 4> c{};
};

QuatElem q_add(const QuatElem& x, const QuatElem& y);
QuatElem q_sub(const QuatElem& x, const QuatElem& y);
QuatElem q_scale(const Rat& s, const QuatElem& x);
QuatElem q_mul(const QuaternionAlgebra& alg, const QuatElem& x, const QuatElem& y);
QuatElem q_conj(const QuatElem& x);
Rat trd(const QuatElem& x);
Rat nrd(const QuaternionAlgebra& alg, const QuatElem& x);
QuatElem q_inv(const QuaternionAlgebra& alg, const QuatElem& x);

// p = 0 encodes the infinite place
int hilbert_symbol(const Rat& a, const Rat& b, long p);
std::vector<long> ramified_set(const Rat& a, const Rat& b);
long discriminant(const QuaternionAlgebra& alg);

struct QuaternionOrder {
    QuaternionAlgebra alg;
    RatMat basis;  // rows: basis elements in 1,i,j,ij coordinates
    Int disc;      // reduced discriminant d(O)
};

// Validates ring axioms (1 in O, closure) and computes d(O).
QuaternionOrder make_order(const QuaternionAlgebra& alg, RatMat basis);

QuaternionOrder maximal_order(const QuaternionAlgebra& alg);

// images of 1, i, j, ij as real 2x2 matrices
std::array<Eigen::Matrix2d, 4> archimedean_embedding(const QuaternionAlgebra& alg);
Eigen::Matrix2d embed(const QuaternionAlgebra& alg, const QuatElem& x);

// bilinear gram trd(e_i conj(e_j)) of the order basis (exact)
RatMat order_norm_gram(const QuaternionOrder& o);
// majorant gram at the base plane, in order-basis coordinates (maj = c^T M c / 2)
Eigen::MatrixXd order_majorant_gram(const QuaternionOrder& o);

QuatElem from_coords(const QuaternionOrder& o, const std::vector<long>& coords);

std::vector<QuatElem> elements_of_norm(const QuaternionOrder& o, const Rat& m,
                                       double radius,
                                       const std::optional<Rat>& trace = std::nullopt);

std::vector<QuatElem> unit_elements(const QuaternionOrder& o, double radius);

std::vector<QuatElem> embeddings_with_invariants(const QuaternionOrder& o, long t,
                                                 long n, double radius);

struct CMPoint {
    std::complex<double> tau;
    QuatElem gen;
    long disc = 0;  // t^2 - 4n
};

CMPoint cm_point(const QuaternionAlgebra& alg, const QuatElem& w);

std::optional<QuatElem> gamma_equivalent(std::complex<double> tau1,
                                         std::complex<double> tau2,
                                         const QuaternionOrder& o, double radius,
                                         double tol = 1e-8);

struct CMClasses {
    std::vector<std::vector<CMPoint>> classes;
    long count = 0;
};

CMClasses cm_set(const QuaternionOrder& o, long t, long n, double radius);

long class_number(long d);            // reduced primitive forms
long class_number_dirichlet(long d);  // analytic class number formula

int kronecker_symbol(long d, long n);
bool is_fundamental_discriminant(long d);
// true iff Q(sqrt(d)) embeds into the algebra (no ramified prime splits)
bool field_embeds(const QuaternionAlgebra& alg, long d);

QuaternionOrder eichler_order(const QuaternionOrder& o, const QuatElem& v);
Int order_index(const QuaternionOrder& o, const QuaternionOrder& sub);

QuatElem atkin_lehner_element(const QuaternionOrder& o, long d);

} // namespace greenlift
