#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "quatern/pinv.hpp"
#include "quatern/qmat.hpp"

namespace quatern {

/// RGB image as a purely imaginary quaternion matrix: pixel (r,c) is
/// 0 + R i + G j + B k with channels scaled to [0, 1]. Scalar parts are
/// exactly zero on construction.
struct QuatImage {
    long height = 0, width = 0;
    QMat pixels;

    static QuatImage from_channels(const Eigen::MatrixXd& r, const Eigen::MatrixXd& g,
                                   const Eigen::MatrixXd& b);
    std::array<Eigen::MatrixXd, 3> channels() const;  // x, y, z planes
};

enum class PinvBackend { Qsvd, Qns, Qsai, Qrapid, Qhpi19 };
enum class UMode { Opt, Cross };
enum class Selection { UniformRandom, Leverage };

const char* backend_name(PinvBackend b);

struct CurConfig {
    long rank = 8;
    int iters = 15;
    PinvBackend backend = PinvBackend::Qsai;
    UMode u_mode = UMode::Opt;
    std::optional<double> gaussian_sigma;  // spatial regularizer; absent = off
    Selection selection = Selection::UniformRandom;
    bool redraw_each_sweep = false;  // default: indices drawn once and held
    std::uint64_t select_seed = 1;
    std::uint64_t mask_seed = 2;
    double missing_fraction = 0.5;
    double pinv_tol = 1e-10;
    int pinv_max_iters = 500;
};

/// Pseudoinverse through the configured backend. Iterative backends that end
/// flagged are accepted only if their Penrose defects are still small;
/// otherwise NumericError carries the context.
QMat backend_pinv(const QMat& a, PinvBackend backend, double tol = 1e-10, int max_iters = 500);

struct CurFactors {
    QMat C, U, R;
    std::vector<long> row_idx, col_idx;
};

/// CUR factors from explicit row/column index sets (size r, duplicate-free,
/// in range). Opt mode couples through U = pinv(C) * A * pinv(R); Cross mode
/// uses U = pinv(A[I,J]).
CurFactors cur_factor(const QMat& a, const std::vector<long>& row_idx,
                      const std::vector<long>& col_idx, UMode u_mode,
                      PinvBackend backend = PinvBackend::Qsvd, double pinv_tol = 1e-10,
                      int pinv_max_iters = 500);

struct SweepMetrics {
    int iter = 0;
    double psnr_db = 0.0;
    double ssim = 0.0;
};

struct CompletionResult {
    QuatImage completed;
    std::vector<SweepMetrics> history;  // empty without ground truth
    std::vector<long> row_idx, col_idx;
};

/// Impute-reconstruct completion: missing entries start at zero; each sweep
/// reconstructs a rank-r CUR estimate, optionally blurs it channelwise, and
/// reinserts the observed entries verbatim. Metrics are recorded per sweep
/// when ground truth is supplied.
CompletionResult impute_reconstruct(const QuatImage& m, const Eigen::MatrixXd& mask,
                                    const CurConfig& cfg, const QuatImage* ground_truth = nullptr);

/// Peak signal-to-noise ratio over all three channels with peak 1.0;
/// +infinity for identical images (serialized as 999 dB in CSV output).
double psnr(const QuatImage& x, const QuatImage& truth);

/// Mean SSIM over 8x8 sliding windows with the standard constants
/// (C1 = 0.01^2, C2 = 0.03^2 at unit peak), averaged over channels.
double ssim(const QuatImage& x, const QuatImage& truth);

/// Separable Gaussian convolution, kernel radius ceil(3*sigma), kernel
/// normalized to unit sum, reflect padding at the borders.
Eigen::MatrixXd gaussian_blur(const Eigen::MatrixXd& channel, double sigma);

}  // namespace quatern
