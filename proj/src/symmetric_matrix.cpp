#include "slag/symmetric_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "slag/errors.hpp"
#include "slag/linalg.hpp"

namespace slag {

SymmetricMatrix SymmetricMatrix::identity(std::size_t n) { return scaled_identity(n, 1.0); }

SymmetricMatrix SymmetricMatrix::scaled_identity(std::size_t n, double s) {
    SymmetricMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, s);
    return m;
}

SymmetricMatrix SymmetricMatrix::diagonal(const std::vector<double>& d) {
    SymmetricMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
    return m;
}

SymmetricMatrix SymmetricMatrix::from_dense(std::size_t n, const std::vector<double>& dense) {
    if (dense.size() != n * n) throw InvalidInput("from_dense: size mismatch");
    SymmetricMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            m.set(i, j, 0.5 * (dense[i * n + j] + dense[j * n + i]));
    return m;
}

SymmetricMatrix SymmetricMatrix::operator+(const SymmetricMatrix& o) const {
    if (o.n_ != n_) throw InvalidInput("matrix dimension mismatch");
    SymmetricMatrix r(n_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
    return r;
}

SymmetricMatrix SymmetricMatrix::operator-(const SymmetricMatrix& o) const {
    if (o.n_ != n_) throw InvalidInput("matrix dimension mismatch");
    SymmetricMatrix r(n_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
    return r;
}

SymmetricMatrix SymmetricMatrix::operator*(double s) const {
    SymmetricMatrix r(n_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] * s;
    return r;
}

SymmetricMatrix SymmetricMatrix::shifted(double s) const {
    SymmetricMatrix r = *this;
    for (std::size_t i = 0; i < n_; ++i) r.add(i, i, s);
    return r;
}

std::vector<double> SymmetricMatrix::matvec(const std::vector<double>& x) const {
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double SymmetricMatrix::quadratic_form(const std::vector<double>& x) const {
    const std::vector<double> y = matvec(x);
    return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

double SymmetricMatrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

double SymmetricMatrix::max_abs_diff(const SymmetricMatrix& o) const {
    if (o.n_ != n_) throw InvalidInput("matrix dimension mismatch");
    double m = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k) m = std::max(m, std::abs(data_[k] - o.data_[k]));
    return m;
}

std::vector<double> SymmetricMatrix::to_dense() const {
    std::vector<double> d(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) d[i * n_ + j] = (*this)(i, j);
    return d;
}

double SymmetricMatrix::determinant() const { return det_dense(to_dense(), n_); }

double SymmetricMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double EigenDecomposition::frame_orthogonality_error() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < n; ++k) dot += frame[k * n + i] * frame[k * n + j];
            worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

SymmetricMatrix EigenDecomposition::reconstruct() const { return from_spectrum(eigenvalues, frame); }

EigenDecomposition jacobi_eigen(const SymmetricMatrix& m) {
    const std::size_t n = m.dim();
    if (n == 0) throw InvalidInput("jacobi_eigen: empty matrix");

    std::vector<double> a = m.to_dense();
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    const double scale = std::max(m.max_abs(), 1e-300);
    const double thresh = 1e-14 * scale;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a[p * n + q]));
        if (off <= thresh) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::abs(apq) <= thresh) continue;
                const double tau = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p];
                    const double vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a[i * n + i] > a[j * n + j]; });

    EigenDecomposition out;
    out.n = n;
    out.eigenvalues.resize(n);
    out.frame.assign(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a[order[k] * n + order[k]];
        for (std::size_t r = 0; r < n; ++r) out.frame[r * n + k] = v[r * n + order[k]];
    }
    return out;
}

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw InvalidInput("Spectrum: empty");
    std::sort(values_.begin(), values_.end(), std::greater<double>());
}

Spectrum spectrum_of(const SymmetricMatrix& m) { return Spectrum(jacobi_eigen(m).eigenvalues); }

SymmetricMatrix conjugate_by(const SymmetricMatrix& m, const std::vector<double>& q) {
    const std::size_t n = m.dim();
    if (q.size() != n * n) throw InvalidInput("conjugate_by: frame size mismatch");
    // B = Q^T M Q
    std::vector<double> mq(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += m(i, k) * q[k * n + j];
            mq[i * n + j] = s;
        }
    std::vector<double> b(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += q[k * n + i] * mq[k * n + j];
            b[i * n + j] = s;
        }
    return SymmetricMatrix::from_dense(n, b);
}

SymmetricMatrix from_spectrum(const std::vector<double>& d, const std::vector<double>& q) {
    const std::size_t n = d.size();
    if (q.size() != n * n) throw InvalidInput("from_spectrum: frame size mismatch");
    std::vector<double> dense(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += q[i * n + k] * d[k] * q[j * n + k];
            dense[i * n + j] = s;
        }
    return SymmetricMatrix::from_dense(n, dense);
}

}  // namespace slag
