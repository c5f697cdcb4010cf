// hilbert.hpp — Dense complex operators and states on small composite Hilbert spaces
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace qreset::hilbert {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Construction tolerances for DensityMatrix (see type invariants below).
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kHermTol = 1e-10;
inline constexpr double kEigTol = 1e-9;

// A square operator on a composite space, tagged with the subsystem dimensions.
// Subsystem ordering convention: [main system, auxiliary qubit (if any), cavity (if any)].
struct Operator {
    Matrix data;
    std::vector<int> dims;

    Operator(Matrix m, std::vector<int> subsystem_dims);

    int dim() const { return static_cast<int>(data.rows()); }
    Operator adjoint() const { return {data.adjoint(), dims}; }
};

// Trace-one, Hermitian, positive-semidefinite matrix (all checked at construction).
struct DensityMatrix {
    Matrix data;
    std::vector<int> dims;

    DensityMatrix(Matrix m, std::vector<int> subsystem_dims);

    int dim() const { return static_cast<int>(data.rows()); }
};

// Bosonic annihilation operator truncated at n_max photons ((n_max+1)-dimensional).
Operator annihilation(int n_max);

// |i><j| on a single dim-level subsystem.
Operator transition(int dim, int i, int j);

// Identity on a single subsystem.
Operator identity(int dim);

// Kronecker product in list order; dims are concatenated.
Operator tensor(std::span<const Operator> ops);
Operator tensor(std::initializer_list<Operator> ops);

// Reduced density matrix over subsystem `keep`, tracing out all others.
DensityMatrix partial_trace(const DensityMatrix& rho, int keep);

// Pure-state density matrix |basis_index><basis_index| on the composite space.
DensityMatrix basis_state(std::vector<int> subsystem_dims, std::span<const int> levels);

} // namespace qreset::hilbert
