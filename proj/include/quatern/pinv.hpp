#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quatern/qmat.hpp"
#include "quatern/spectral.hpp"

namespace quatern {

/// Constants of the order-19 factorized update and the golden-ratio pair of
/// the order-10 one. All are roots of the coefficient-matching system for the
/// even-power polynomial sum_{t=0}^{8} R^{2t}.
struct HyperCoeffs {
    double a1, a2, a3;
    double b1, b2, b3;
    double c1, c2;
    double d1, d2, d3;
    double e1, e2;
    double beta1, beta2;  // beta1+beta2 = 1, beta1*beta2 = -1

    static const HyperCoeffs& values();
};

enum class PinvMethod { Qns, Hyperpower, Qrapid, Qsai, Qhpi19, Qhon };

const char* method_name(PinvMethod m);

/// Solver configuration. `order` carries k for Hyperpower, p for Qhon and the
/// step parameter N for Qrapid; it is ignored by the fixed-order methods.
struct PinvConfig {
    PinvMethod method = PinvMethod::Qsai;
    int order = 0;
    double tol = 1e-10;        // Frobenius norm of the step X_{j+1} - X_j
    bool relative_tol = false;  // measure the step against |X_{j+1}|_F instead
    int max_iters = 500;
    AlphaMode alpha_mode = AlphaMode::Spectral;
    std::optional<double> alpha_value;  // explicit alpha overrides alpha_mode
    bool count_matmuls = true;
    bool keep_iterates = false;
    int sigma_max_iters = 200;
    std::uint64_t sigma_max_seed = 42;

    void validate() const;
};

enum class StopReason { Converged, MaxIters, Stagnated };

struct PinvReport {
    QMat X;
    int iterations = 0;
    std::vector<double> step_history;      // |X_{j+1} - X_j|_F per iteration
    std::array<double, 4> penrose{};       // E1..E4, computed off the tally
    std::int64_t matmuls = 0;
    double alpha_used = 0.0;
    bool converged = false;
    StopReason stop_reason = StopReason::MaxIters;
    std::vector<QMat> iterates;            // X_0..X_final when keep_iterates
};

/// The four Penrose defects of a candidate pseudoinverse X of A:
/// E1 = |AXA - A|_F, E2 = |XAX - X|_F, E3 = |(AX)^H - AX|_F, E4 = |(XA)^H - XA|_F.
std::array<double, 4> penrose_errors(const QMat& a, const QMat& x);

/// One generic hyperpower update X(I + R + ... + R^{k-1}) with R = I - AX,
/// evaluated by Horner's rule.
QMat hyperpower_step(const QMat& a, const QMat& x, int k, MulCounter* tally = nullptr);

/// One update of the configured method from an arbitrary iterate.
QMat pinv_step(const QMat& a, const QMat& x, PinvMethod method, int order,
               MulCounter* tally = nullptr);

/// Full solver run from X0 = alpha * A^H. Non-convergence is reported through
/// the flags, never thrown, so sweeps over many matrices can proceed.
PinvReport run_pinv(const QMat& a, const PinvConfig& cfg);

PinvReport qns(const QMat& a, PinvConfig cfg = {});
PinvReport qrapid(const QMat& a, int n_steps = 0, PinvConfig cfg = {});
PinvReport qsai(const QMat& a, PinvConfig cfg = {});
PinvReport qhpi19(const QMat& a, PinvConfig cfg = {});
PinvReport qhon(const QMat& a, int p, PinvConfig cfg = {});

/// Computational efficiency index k^(1/eta): convergence order per quaternion
/// matrix multiplication.
double cei(int order, int matmuls_per_iter);

struct PerturbationRecord {
    double delta_in = 0.0;         // |dX_j|_F actually injected
    double delta_out = 0.0;        // |dX_{j+1}|_F after one step
    double growth_ratio = 0.0;     // delta_out / delta_in, 0 when delta_in = 0
    double residual_norm = 0.0;    // |R_j|_F at the injection point
    double iterate_norm = 0.0;     // |X_j|_F at the injection point
    double matrix_norm = 0.0;      // |A|_F
    bool converged_after = false;  // perturbed run still reaches tol
    std::array<double, 4> final_penrose{};
    int iterations_after = 0;
};

/// Runs the method, injects a seeded random perturbation of the given
/// magnitude at iteration j_inject, and measures the one-step growth plus
/// whether the perturbed trajectory still converges.
PerturbationRecord perturbation_probe(const QMat& a, const PinvConfig& cfg, int j_inject,
                                      double magnitude, std::uint64_t seed);

}  // namespace quatern
