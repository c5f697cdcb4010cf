#include "qreset/hilbert.hpp"

#include "doctest.h"

#include <random>

using namespace qreset;
using hilbert::Complex;
using hilbert::Matrix;

namespace {

Matrix random_matrix(int d, std::mt19937& rng) {
    std::normal_distribution<double> dist;
    Matrix m(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            m(i, j) = Complex(dist(rng), dist(rng));
        }
    }
    return m;
}

hilbert::DensityMatrix random_density(std::vector<int> dims, std::mt19937& rng) {
    int d = 1;
    for (int x : dims) d *= x;
    Matrix a = random_matrix(d, rng);
    Matrix rho = a * a.adjoint();
    rho /= rho.trace();
    return {std::move(rho), std::move(dims)};
}

} // namespace

TEST_CASE("annihilation matrix elements") {
    const auto a1 = hilbert::annihilation(1);
    CHECK(a1.dim() == 2);
    CHECK(a1.data(0, 1) == Complex(1.0, 0.0));
    CHECK(a1.data(0, 0) == Complex(0.0, 0.0));
    CHECK(a1.data(1, 0) == Complex(0.0, 0.0));
    CHECK(a1.data(1, 1) == Complex(0.0, 0.0));

    const auto a2 = hilbert::annihilation(2);
    CHECK(a2.data(1, 2).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    // number operator eigenvalue on Fock |2> with n_max = 3
    const auto a3 = hilbert::annihilation(3);
    const Matrix n = a3.data.adjoint() * a3.data;
    Eigen::VectorXcd fock2 = Eigen::VectorXcd::Zero(4);
    fock2(2) = 1.0;
    CHECK((n * fock2 - 2.0 * fock2).norm() == doctest::Approx(0.0).epsilon(1e-14));

    // <k-1| a |k> = sqrt(k) for all k
    for (int k = 1; k <= 3; ++k) {
        CHECK(a3.data(k - 1, k).real() == doctest::Approx(std::sqrt(double(k))));
    }

    CHECK_THROWS_AS(hilbert::annihilation(0), std::invalid_argument);
}

TEST_CASE("transition operators") {
    const auto sp = hilbert::transition(2, 1, 0);
    CHECK(sp.data(1, 0) == Complex(1.0, 0.0));
    CHECK(sp.data.cwiseAbs().sum() == doctest::Approx(1.0));

    const auto gf = hilbert::transition(3, 0, 2);
    CHECK(gf.data(0, 2) == Complex(1.0, 0.0));

    const Matrix ident =
        hilbert::transition(2, 0, 0).data + hilbert::transition(2, 1, 1).data;
    CHECK((ident - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(hilbert::transition(2, 2, 0), std::out_of_range);
    CHECK_THROWS_AS(hilbert::transition(2, 0, -1), std::out_of_range);
}

TEST_CASE("tensor products") {
    const auto i2 = hilbert::identity(2);
    const auto sm = hilbert::transition(2, 0, 1);

    // (I ⊗ σ₋)|e,e> = |e,g>
    const auto op = hilbert::tensor({i2, sm});
    Eigen::VectorXcd ee = Eigen::VectorXcd::Zero(4);
    ee(3) = 1.0;  // |1,1>
    Eigen::VectorXcd eg = Eigen::VectorXcd::Zero(4);
    eg(2) = 1.0;  // |1,0>
    CHECK((op.data * ee - eg).norm() == doctest::Approx(0.0));

    SUBCASE("operators on disjoint subsystems commute") {
        std::mt19937 rng(7);
        const hilbert::Operator a{random_matrix(2, rng), {2}};
        const hilbert::Operator b{random_matrix(3, rng), {3}};
        const auto left = hilbert::tensor({a, hilbert::identity(3)});
        const auto right = hilbert::tensor({hilbert::identity(2), b});
        const Matrix comm = left.data * right.data - right.data * left.data;
        CHECK(comm.cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-14));
    }

    SUBCASE("dims concatenate") {
        const auto t = hilbert::tensor({i2, i2, hilbert::identity(4)});
        CHECK(t.dims == std::vector<int>{2, 2, 4});
        CHECK(t.dim() == 16);
    }

    SUBCASE("associativity is exact") {
        std::mt19937 rng(11);
        const hilbert::Operator a{random_matrix(2, rng), {2}};
        const hilbert::Operator b{random_matrix(2, rng), {2}};
        const hilbert::Operator c{random_matrix(3, rng), {3}};
        const auto ab_c = hilbert::tensor({hilbert::tensor({a, b}), c});
        const auto abc = hilbert::tensor({a, b, c});
        CHECK((ab_c.data - abc.data).cwiseAbs().maxCoeff() == 0.0);
    }

    CHECK_THROWS_AS(hilbert::tensor(std::span<const hilbert::Operator>{}),
                    std::invalid_argument);
}

TEST_CASE("partial trace") {
    SUBCASE("product state returns the kept factor") {
        const int eg[] = {1, 0};
        const auto rho = hilbert::basis_state({2, 2}, eg);
        const auto main = hilbert::partial_trace(rho, 0);
        CHECK(main.data(1, 1).real() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(main.data(0, 0).real() == doctest::Approx(0.0).epsilon(1e-14));
        const auto aux = hilbert::partial_trace(rho, 1);
        CHECK(aux.data(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
    }

    SUBCASE("Bell state reduces to the maximally mixed state") {
        Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
        bell(1) = 1.0 / std::sqrt(2.0);  // |g,e>
        bell(2) = 1.0 / std::sqrt(2.0);  // |e,g>
        hilbert::DensityMatrix rho{bell * bell.adjoint(), {2, 2}};
        const auto red = hilbert::partial_trace(rho, 0);
        CHECK((red.data - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() ==
              doctest::Approx(0.0).epsilon(1e-12));
    }

    SUBCASE("trace preserved on random states") {
        std::mt19937 rng(23);
        for (int rep = 0; rep < 20; ++rep) {
            const auto rho = random_density({2, 3, 2}, rng);
            for (int keep = 0; keep < 3; ++keep) {
                const auto red = hilbert::partial_trace(rho, keep);
                CHECK(std::abs(red.data.trace() - Complex(1.0, 0.0)) < 1e-12);
            }
        }
    }

    SUBCASE("tensor-factor recovery within 1e-12") {
        std::mt19937 rng(29);
        const auto a = random_density({2}, rng);
        const auto b = random_density({3}, rng);
        hilbert::DensityMatrix joint{
            hilbert::tensor({hilbert::Operator{a.data, {2}}, hilbert::Operator{b.data, {3}}})
                .data,
            {2, 3}};
        CHECK((hilbert::partial_trace(joint, 0).data - a.data).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((hilbert::partial_trace(joint, 1).data - b.data).cwiseAbs().maxCoeff() < 1e-12);
    }

    const int gg[] = {0, 0};
    const auto rho = hilbert::basis_state({2, 2}, gg);
    CHECK_THROWS_AS(hilbert::partial_trace(rho, 2), std::out_of_range);
}

TEST_CASE("adjoint of a product reverses factors") {
    std::mt19937 rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const Matrix a = random_matrix(4, rng);
        const Matrix b = random_matrix(4, rng);
        const Matrix lhs = (a * b).adjoint();
        const Matrix rhs = b.adjoint() * a.adjoint();
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("density matrix construction guards") {
    CHECK_THROWS_AS(hilbert::DensityMatrix(2.0 * Matrix::Identity(2, 2), {2}),
                    std::invalid_argument);

    Matrix nonherm = 0.5 * Matrix::Identity(2, 2);
    nonherm(0, 1) = Complex(0.1, 0.0);
    CHECK_THROWS_AS(hilbert::DensityMatrix(nonherm, {2}), std::invalid_argument);

    Matrix indefinite = Matrix::Zero(2, 2);
    indefinite(0, 0) = 1.5;
    indefinite(1, 1) = -0.5;
    CHECK_THROWS_AS(hilbert::DensityMatrix(indefinite, {2}), std::invalid_argument);

    CHECK_THROWS_AS(hilbert::Operator(Matrix::Identity(2, 3), {2}), std::invalid_argument);
    CHECK_THROWS_AS(hilbert::Operator(Matrix::Identity(4, 4), {2}), std::invalid_argument);
}
