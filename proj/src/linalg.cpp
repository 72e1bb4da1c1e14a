#include "cpverify/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace cpv {

CMat CMat::operator*(const CMat& o) const {
    CMat out(rows_, o.cols_);
    // Most operands here are built from clock/shift monomials and are very
    // sparse; skipping zero entries of the left factor keeps the tensor
    // verification loops cheap without a sparse type.
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const cplx v = (*this)(i, k);
            if (v == cplx{}) continue;
            const cplx* brow = &o.a_[static_cast<size_t>(k) * o.cols_];
            cplx* orow = &out.a_[static_cast<size_t>(i) * o.cols_];
            for (int j = 0; j < o.cols_; ++j) orow[j] += v * brow[j];
        }
    }
    return out;
}

CMat CMat::operator+(const CMat& o) const {
    CMat out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
    return out;
}

CMat CMat::operator-(const CMat& o) const {
    CMat out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] -= o.a_[i];
    return out;
}

CMat& CMat::operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
}

CMat CMat::dagger() const {
    CMat out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

double CMat::fro_norm() const {
    double s = 0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double CMat::max_abs() const {
    double m = 0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

CMat CMat::kron(const CMat& a, const CMat& b) {
    CMat out(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j) {
            const cplx v = a(i, j);
            if (v == cplx{}) continue;
            for (int k = 0; k < b.rows_; ++k)
                for (int l = 0; l < b.cols_; ++l) out(i * b.rows_ + k, j * b.cols_ + l) = v * b(k, l);
        }
    return out;
}

double commutator_norm(const CMat& a, const CMat& b) { return (a * b - b * a).fro_norm(); }

std::vector<double> hermitian_eigenvalues(CMat a, double tol) {
    const int n = a.rows();
    if (n == 0) return {};
    const double scale = std::max(a.fro_norm(), 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= tol * scale) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const cplx phase = apq / std::abs(apq);
                const double tau = (aqq - app) / (2.0 * std::abs(apq));
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // columns
                for (int i = 0; i < n; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * std::conj(phase) * aiq;
                    a(i, q) = s * phase * aip + c * aiq;
                }
                // rows
                for (int i = 0; i < n; ++i) {
                    const cplx api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - s * phase * aqi;
                    a(q, i) = s * std::conj(phase) * api + c * aqi;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace cpv
