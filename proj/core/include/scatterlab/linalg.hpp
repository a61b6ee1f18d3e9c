#pragma once

#include <vector>

#include "scatterlab/rational.hpp"

namespace scatterlab {

using RatMat = std::vector<std::vector<Rat>>;

// reduced row echelon form in place; returns pivot column indices
std::vector<int> rref(RatMat& m);

int rat_rank(RatMat m);

// basis of the right kernel {x : m x = 0}, rows are basis vectors
RatMat kernel_basis(const RatMat& m);

// integer kernel basis: primitive integer vectors spanning the rational kernel.
// For rational input the integer kernel lattice is saturated, so clearing
// denominators rowwise and reducing to primitive gives a valid basis of it.
std::vector<NVec> kernel_basis_int(const RatMat& m);

Rat dot(const MVec& a, const MVec& b);

// scale a rational vector to a primitive integer vector with the same direction
NVec to_primitive_int(const MVec& v);
MVec to_mvec(const NVec& v);

}  // namespace scatterlab
