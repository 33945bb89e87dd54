#pragma once

#include "pappus/linalg.hpp"

namespace pappus {

struct SymEigen {
    Vec3d values;   // descending
    Mat3d vectors;  // column k is the unit eigenvector for values[k]
    int sweeps = 0;
};

// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is below
// tol * (Frobenius norm of a).  Throws NumericalFailure if that does not
// happen within max_sweeps.
SymEigen jacobi_eigen(const Mat3d& a, double tol = 1e-13, int max_sweeps = 64);

}  // namespace pappus
