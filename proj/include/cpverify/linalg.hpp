#pragma once

#include <vector>

#include "cpverify/common.hpp"

namespace cpv {

// Dense complex matrix, row-major.  Sizes here stay tiny (N^2 tensor blocks,
// spin-chain Hilbert spaces up to a few hundred), so no BLAS.
class CMat {
public:
    CMat() = default;
    CMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static CMat identity(int n) {
        CMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    CMat operator*(const CMat& o) const;
    CMat operator+(const CMat& o) const;
    CMat operator-(const CMat& o) const;
    CMat& operator*=(cplx s);
    friend CMat operator*(cplx s, CMat m) {
        m *= s;
        return m;
    }

    CMat dagger() const;
    double fro_norm() const;
    double max_abs() const;

    static CMat kron(const CMat& a, const CMat& b);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

double commutator_norm(const CMat& a, const CMat& b);

// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
// Returns them sorted ascending.
std::vector<double> hermitian_eigenvalues(CMat a, double tol = 1e-13);

}  // namespace cpv
