#include <doctest.h>

#include "gen.hpp"
#include "quatern/pinv.hpp"
#include "quatern/random.hpp"
#include "quatern/selftest.hpp"
#include "quatern/spectral.hpp"

using namespace quatern;

TEST_CASE("sigma_max on simple operators") {
    CHECK(sigma_max(QMat::Identity(3)) == doctest::Approx(1.0).epsilon(1e-9));

    QMat d(2, 2);
    d(0, 0) = Quat(3.0);
    d(1, 1) = Quat(1.0);
    CHECK(sigma_max(d) == doctest::Approx(3.0).epsilon(1e-9));

    CHECK_THROWS_AS(sigma_max(QMat::Zero(2, 2)), NumericError);
}

TEST_CASE("sigma_max matches the full Jacobi SVD on the selftest matrix") {
    const QMat a = selftest_matrix();
    const double est = sigma_max(a);
    const SvdResult svd = jacobi_svd(embed(a));
    CHECK(est == doctest::Approx(svd.sigma(0)).epsilon(1e-8));
    CHECK(1.0 / (est * est) == doctest::Approx(2.058856e-3).epsilon(1e-6));
}

TEST_CASE("sigma_max estimates are nondecreasing and below sigma_1") {
    const QMat a = random_qmat(6, 4, 81);
    const SvdResult svd = jacobi_svd(embed(a));
    double prev = 0.0;
    for (int iters = 1; iters <= 40; iters += 3) {
        const double est = sigma_max(a, iters, 123);
        CHECK(est >= prev * (1.0 - 1e-13));
        CHECK(est <= svd.sigma(0) * (1.0 + 1e-12));
        prev = est;
    }
}

TEST_CASE("scaling_alpha in both modes") {
    CHECK(scaling_alpha(QMat::Identity(2), AlphaMode::Spectral) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(scaling_alpha(QMat::Identity(2), AlphaMode::Frobenius) == doctest::Approx(0.5));
    CHECK(scaling_alpha(selftest_matrix(), AlphaMode::Spectral) ==
          doctest::Approx(2.058856e-3).epsilon(1e-6));
    CHECK_THROWS_AS(scaling_alpha(QMat::Zero(3, 3), AlphaMode::Spectral), NumericError);
}

TEST_CASE("jacobi_svd identity and rank detection") {
    const SvdResult id = jacobi_svd(CMat::Identity(4, 4));
    for (long i = 0; i < 4; ++i) CHECK(id.sigma(i) == doctest::Approx(1.0).epsilon(1e-14));

    CMat d = CMat::Zero(2, 2);
    d(0, 0) = 2.0;
    const SvdResult dd = jacobi_svd(d);
    CHECK(dd.sigma(0) == doctest::Approx(2.0));
    CHECK(dd.sigma(1) == doctest::Approx(0.0));
    CHECK((dd.U.adjoint() * dd.U - CMat::Identity(2, 2)).norm() <= 1e-12);
}

TEST_CASE("jacobi_svd reconstruction and orthonormality invariants") {
    for (std::uint64_t seed : {90, 91}) {
        const QMat g = random_qmat(3, 2, seed);
        const CMat c = embed(g);  // 6x4
        const SvdResult svd = jacobi_svd(c);
        const long n = c.cols();
        CHECK((svd.U.adjoint() * svd.U - CMat::Identity(n, n)).norm() <= 1e-10 * n);
        CHECK((svd.V.adjoint() * svd.V - CMat::Identity(n, n)).norm() <= 1e-10 * n);
        const CMat rec = svd.U * svd.sigma.asDiagonal() * svd.V.adjoint();
        CHECK((c - rec).norm() <= 1e-10 * (1.0 + c.norm()));
        for (long i = 0; i + 1 < svd.sigma.size(); ++i) CHECK(svd.sigma(i) >= svd.sigma(i + 1));
    }
}

TEST_CASE("jacobi_svd handles wide input by conjugate transposition") {
    const CMat c = embed(random_qmat(2, 5, 92));
    const SvdResult svd = jacobi_svd(c);
    const CMat rec = svd.U * svd.sigma.asDiagonal() * svd.V.adjoint();
    CHECK((c - rec).norm() <= 1e-10 * (1.0 + c.norm()));
}

TEST_CASE("qsvd_pinv basics") {
    CHECK(fro_dist(qsvd_pinv(QMat::Identity(3)), QMat::Identity(3)) <= 1e-12);

    const QMat z = qsvd_pinv(QMat::Zero(3, 2));
    CHECK(z.rows() == 2);
    CHECK(z.cols() == 3);
    CHECK(frobenius(z) == 0.0);
}

TEST_CASE("qsvd_pinv reproduces the 4-decimal reference pseudoinverse") {
    const QMat x = qsvd_pinv(selftest_matrix());
    const QMat ref = selftest_expected_pinv();
    double worst = 0.0;
    for (long i = 0; i < x.size(); ++i) {
        const Quat d = x.data()[i] - ref.data()[i];
        worst = std::max({worst, std::abs(d.s), std::abs(d.x), std::abs(d.y), std::abs(d.z)});
    }
    CHECK(worst <= 5.05e-5);
    CHECK(x(0, 0).s == doctest::Approx(0.0627).epsilon(1e-2));
}

TEST_CASE("qsvd_pinv satisfies the Penrose equations across shapes") {
    int caseno = 0;
    for (const auto& dims : {std::pair<long, long>{3, 3}, {5, 2}, {2, 5}}) {
        const QMat a = random_qmat(dims.first, dims.second, 200 + caseno++);
        const auto pe = penrose_errors(a, qsvd_pinv(a));
        for (double e : pe) CHECK(e <= 1e-9 * (1.0 + frobenius(a)));
    }
    const QMat rd = testgen::rank_deficient(4, 4, 2, 210);
    const auto pe = penrose_errors(rd, qsvd_pinv(rd));
    for (double e : pe) CHECK(e <= 1e-9 * (1.0 + frobenius(rd)));
}

TEST_CASE("pseudoinverse uniqueness: QSVD route agrees with an iterative route") {
    const QMat a = random_qmat(5, 5, 220);
    const QMat x_svd = qsvd_pinv(a);
    const PinvReport rep = qsai(a);
    CHECK(rep.converged);
    CHECK(fro_dist(x_svd, rep.X) <= 1e-8 * frobenius(x_svd));
}

TEST_CASE("prescribed-spectrum generator hits its target spectrum") {
    const QMat a = testgen::with_spectrum(5, 3, {2.0, 1.0, 0.5}, 300);
    const SvdResult svd = jacobi_svd(embed(a));
    CHECK(svd.sigma(0) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(svd.sigma(2) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(svd.sigma(4) == doctest::Approx(0.5).epsilon(1e-10));
}
