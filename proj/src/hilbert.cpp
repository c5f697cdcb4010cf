// hilbert.cpp — Operator constructors, tensor products, and partial trace
#include "qreset/hilbert.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qreset::hilbert {

namespace {

int checked_product(const std::vector<int>& dims) {
    if (dims.empty()) {
        throw std::invalid_argument("subsystem dimension list must be non-empty");
    }
    long long p = 1;
    for (int d : dims) {
        if (d < 1) {
            throw std::invalid_argument("subsystem dimensions must be >= 1");
        }
        p *= d;
    }
    return static_cast<int>(p);
}

void check_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) {
        throw std::invalid_argument(std::string(what) + ": non-finite entries");
    }
}

} // namespace

Operator::Operator(Matrix m, std::vector<int> subsystem_dims)
    : data(std::move(m)), dims(std::move(subsystem_dims)) {
    if (data.rows() != data.cols()) {
        throw std::invalid_argument("Operator: matrix must be square");
    }
    if (checked_product(dims) != data.rows()) {
        throw std::invalid_argument("Operator: product of dims does not match matrix dimension");
    }
    check_finite(data, "Operator");
}

DensityMatrix::DensityMatrix(Matrix m, std::vector<int> subsystem_dims)
    : data(std::move(m)), dims(std::move(subsystem_dims)) {
    if (data.rows() != data.cols()) {
        throw std::invalid_argument("DensityMatrix: matrix must be square");
    }
    if (checked_product(dims) != data.rows()) {
        throw std::invalid_argument("DensityMatrix: product of dims does not match matrix dimension");
    }
    check_finite(data, "DensityMatrix");
    if (std::abs(data.trace() - Complex(1.0, 0.0)) > kTraceTol) {
        throw std::invalid_argument("DensityMatrix: trace deviates from one");
    }
    if ((data - data.adjoint()).cwiseAbs().maxCoeff() > kHermTol) {
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (data + data.adjoint()),
                                             Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kEigTol) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
    }
}

Operator annihilation(int n_max) {
    if (n_max < 1) {
        throw std::invalid_argument("annihilation: n_max must be >= 1");
    }
    const int d = n_max + 1;
    Matrix a = Matrix::Zero(d, d);
    for (int k = 1; k < d; ++k) {
        a(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    return {std::move(a), {d}};
}

Operator transition(int dim, int i, int j) {
    if (dim < 1) {
        throw std::invalid_argument("transition: dim must be >= 1");
    }
    if (i < 0 || j < 0 || i >= dim || j >= dim) {
        throw std::out_of_range("transition: level index out of range");
    }
    Matrix m = Matrix::Zero(dim, dim);
    m(i, j) = 1.0;
    return {std::move(m), {dim}};
}

Operator identity(int dim) {
    if (dim < 1) {
        throw std::invalid_argument("identity: dim must be >= 1");
    }
    return {Matrix::Identity(dim, dim), {dim}};
}

Operator tensor(std::span<const Operator> ops) {
    if (ops.empty()) {
        throw std::invalid_argument("tensor: operator list must be non-empty");
    }
    Matrix out = ops[0].data;
    std::vector<int> dims = ops[0].dims;
    for (std::size_t n = 1; n < ops.size(); ++n) {
        const Matrix& b = ops[n].data;
        const Eigen::Index ra = out.rows(), ca = out.cols();
        const Eigen::Index rb = b.rows(), cb = b.cols();
        Matrix k(ra * rb, ca * cb);
        for (Eigen::Index i = 0; i < ra; ++i) {
            for (Eigen::Index j = 0; j < ca; ++j) {
                k.block(i * rb, j * cb, rb, cb) = out(i, j) * b;
            }
        }
        out = std::move(k);
        dims.insert(dims.end(), ops[n].dims.begin(), ops[n].dims.end());
    }
    return {std::move(out), std::move(dims)};
}

Operator tensor(std::initializer_list<Operator> ops) {
    return tensor(std::span<const Operator>(ops.begin(), ops.size()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, int keep) {
    const int n = static_cast<int>(rho.dims.size());
    if (keep < 0 || keep >= n) {
        throw std::out_of_range("partial_trace: invalid subsystem index");
    }
    const int dk = rho.dims[keep];
    // Row-major strides over the composite index.
    std::vector<long long> stride(n, 1);
    for (int s = n - 2; s >= 0; --s) {
        stride[s] = stride[s + 1] * rho.dims[s + 1];
    }
    const long long env = rho.data.rows() / dk;  // number of traced-out configurations

    Matrix red = Matrix::Zero(dk, dk);
    // Enumerate all multi-indices of the traced subsystems once, reusing them for
    // every (a, b) pair of the kept subsystem.
    std::vector<int> idx(n, 0);
    for (long long e = 0; e < env; ++e) {
        long long base = 0;
        for (int s = 0; s < n; ++s) {
            if (s != keep) {
                base += static_cast<long long>(idx[s]) * stride[s];
            }
        }
        for (int a = 0; a < dk; ++a) {
            const long long row = base + a * stride[keep];
            for (int b = 0; b < dk; ++b) {
                red(a, b) += rho.data(row, base + b * stride[keep]);
            }
        }
        for (int s = n - 1; s >= 0; --s) {
            if (s == keep) continue;
            if (++idx[s] < rho.dims[s]) break;
            idx[s] = 0;
        }
    }
    return {std::move(red), {dk}};
}

DensityMatrix basis_state(std::vector<int> subsystem_dims, std::span<const int> levels) {
    const int d = checked_product(subsystem_dims);
    if (levels.size() != subsystem_dims.size()) {
        throw std::invalid_argument("basis_state: one level per subsystem required");
    }
    long long index = 0;
    for (std::size_t s = 0; s < subsystem_dims.size(); ++s) {
        if (levels[s] < 0 || levels[s] >= subsystem_dims[s]) {
            throw std::out_of_range("basis_state: level out of range");
        }
        index = index * subsystem_dims[s] + levels[s];
    }
    Matrix m = Matrix::Zero(d, d);
    m(index, index) = 1.0;
    return {std::move(m), std::move(subsystem_dims)};
}

} // namespace qreset::hilbert
