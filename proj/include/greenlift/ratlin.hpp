#pragma once

#include "greenlift/rational.hpp"

#include <utility>

namespace greenlift {

RatMat rat_identity(int n);
RatMat rat_mul(const RatMat& a, const RatMat& b);
RatMat rat_transpose(const RatMat& a);
RatVec rat_apply(const RatMat& a, const RatVec& v);
Rat rat_dot(const RatVec& a, const RatVec& b);

Rat rat_det(RatMat a);
RatMat rat_inverse(const RatMat& a);      // throws DegenerateForm
RatVec rat_solve(const RatMat& a, const RatVec& b);

// Signature of a symmetric matrix by congruence diagonalization.
// Throws DegenerateForm if singular.
std::pair<int, int> sym_signature(const RatMat& g);

bool is_positive_definite(const RatMat& g);  // leading principal minors

// Row-style Hermite normal form of an integer matrix; zero rows dropped,
// pivots positive, entries above a pivot reduced into [0, pivot).
std::vector<std::vector<Int>> hnf_rows(std::vector<std::vector<Int>> rows);

// HNF basis of the lattice generated by rational rows (common-denominator scaling).
RatMat rational_hnf(const std::vector<RatVec>& rows);

// Coordinates x with x^T * basis = v (rows of `basis` are the spanning vectors).
RatVec coords_in_basis(const RatMat& basis, const RatVec& v);

bool all_integral(const RatVec& v);

} // namespace greenlift
