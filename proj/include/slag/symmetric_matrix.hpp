#pragma once

#include <cstddef>
#include <vector>

namespace slag {

// Dense n x n real symmetric matrix.  Only the upper triangle is stored, so
// the representation is exactly symmetric by construction.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t n) : n_(n), data_(n * (n + 1) / 2, 0.0) {}

    static SymmetricMatrix identity(std::size_t n);
    static SymmetricMatrix scaled_identity(std::size_t n, double s);
    static SymmetricMatrix diagonal(const std::vector<double>& d);
    /// Builds from a row-major dense array, averaging the two triangles.
    static SymmetricMatrix from_dense(std::size_t n, const std::vector<double>& dense);

    std::size_t dim() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }
    void set(std::size_t i, std::size_t j, double v) { data_[index(i, j)] = v; }
    void add(std::size_t i, std::size_t j, double v) { data_[index(i, j)] += v; }

    SymmetricMatrix operator+(const SymmetricMatrix& o) const;
    SymmetricMatrix operator-(const SymmetricMatrix& o) const;
    SymmetricMatrix operator*(double s) const;
    /// this + s*I
    SymmetricMatrix shifted(double s) const;

    std::vector<double> matvec(const std::vector<double>& x) const;
    double quadratic_form(const std::vector<double>& x) const;

    double max_abs() const;
    double max_abs_diff(const SymmetricMatrix& o) const;

    std::vector<double> to_dense() const;
    double determinant() const;
    double trace() const;

private:
    std::size_t index(std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        return i * n_ - i * (i - 1) / 2 + (j - i);
    }

    std::size_t n_ = 0;
    std::vector<double> data_;
};

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // descending
    std::vector<double> frame;        // row-major n x n; column k is the k-th eigenvector
    std::size_t n = 0;

    double frame_orthogonality_error() const;  // max |Q^T Q - I|
    SymmetricMatrix reconstruct() const;       // Q diag(lambda) Q^T
};

// Cyclic Jacobi sweeps, deterministic row-major pivot order, off-diagonal
// threshold 1e-14 (relative to the matrix scale).  Matrices here are tiny, so
// this wins on robustness and reproducibility.
EigenDecomposition jacobi_eigen(const SymmetricMatrix& m);

// Hessian eigenvalues sorted descending.
class Spectrum {
public:
    explicit Spectrum(std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double top() const { return values_.front(); }
    double bottom() const { return values_.back(); }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
};

Spectrum spectrum_of(const SymmetricMatrix& m);

/// Q^T M Q for the orthogonal frame Q (row-major n x n).
SymmetricMatrix conjugate_by(const SymmetricMatrix& m, const std::vector<double>& q);

/// Q diag(d) Q^T.
SymmetricMatrix from_spectrum(const std::vector<double>& d, const std::vector<double>& q);

}  // namespace slag
