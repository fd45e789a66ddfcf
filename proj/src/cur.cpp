#include "quatern/cur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "quatern/random.hpp"

namespace quatern {

QuatImage QuatImage::from_channels(const Eigen::MatrixXd& r, const Eigen::MatrixXd& g,
                                   const Eigen::MatrixXd& b) {
    QuatImage img;
    img.height = r.rows();
    img.width = r.cols();
    img.pixels = QMat::from_planes(Eigen::MatrixXd::Zero(r.rows(), r.cols()), r, g, b);
    return img;
}

std::array<Eigen::MatrixXd, 3> QuatImage::channels() const {
    auto p = pixels.to_planes();
    return {p[1], p[2], p[3]};
}

const char* backend_name(PinvBackend b) {
    switch (b) {
        case PinvBackend::Qsvd: return "qsvd";
        case PinvBackend::Qns: return "qns";
        case PinvBackend::Qsai: return "qsai";
        case PinvBackend::Qrapid: return "qrapid";
        case PinvBackend::Qhpi19: return "qhpi19";
    }
    return "?";
}

QMat backend_pinv(const QMat& a, PinvBackend backend, double tol, int max_iters) {
    if (backend == PinvBackend::Qsvd) return qsvd_pinv(a);
    if (squared_frobenius(a) == 0.0) return QMat::Zero(a.cols(), a.rows());

    PinvConfig cfg;
    cfg.tol = tol;
    cfg.max_iters = max_iters;
    switch (backend) {
        case PinvBackend::Qns: cfg.method = PinvMethod::Qns; break;
        case PinvBackend::Qsai: cfg.method = PinvMethod::Qsai; break;
        case PinvBackend::Qrapid: cfg.method = PinvMethod::Qrapid; break;
        case PinvBackend::Qhpi19: cfg.method = PinvMethod::Qhpi19; break;
        default: break;
    }
    PinvReport rep = run_pinv(a, cfg);
    if (!rep.converged) {
        const double scale = 1.0 + frobenius(a);
        const double worst = *std::max_element(rep.penrose.begin(), rep.penrose.end());
        if (worst > 1e-6 * scale)
            throw NumericError(std::string("backend_pinv: ") + method_name(cfg.method) +
                               " did not converge on " + std::to_string(a.rows()) + "x" +
                               std::to_string(a.cols()) + ", worst Penrose defect " +
                               std::to_string(worst));
    }
    return rep.X;
}

namespace {

void check_indices(const std::vector<long>& idx, long bound, const char* what) {
    std::set<long> seen;
    for (long i : idx) {
        if (i < 0 || i >= bound)
            throw std::out_of_range(std::string(what) + ": index " + std::to_string(i) +
                                    " out of range [0, " + std::to_string(bound) + ")");
        if (!seen.insert(i).second)
            throw std::invalid_argument(std::string(what) + ": duplicate index " +
                                        std::to_string(i));
    }
}

}  // namespace

CurFactors cur_factor(const QMat& a, const std::vector<long>& row_idx,
                      const std::vector<long>& col_idx, UMode u_mode, PinvBackend backend,
                      double pinv_tol, int pinv_max_iters) {
    if (row_idx.size() != col_idx.size())
        throw std::invalid_argument("cur_factor: |I| and |J| must match");
    check_indices(row_idx, a.rows(), "cur_factor rows");
    check_indices(col_idx, a.cols(), "cur_factor cols");

    CurFactors f;
    f.row_idx = row_idx;
    f.col_idx = col_idx;
    f.C = select_cols(a, col_idx);
    f.R = select_rows(a, row_idx);

    if (u_mode == UMode::Cross) {
        const QMat w = select_cols(f.R, col_idx);  // A[I, J]
        f.U = backend_pinv(w, backend, pinv_tol, pinv_max_iters);
    } else {
        const QMat c_pinv = backend_pinv(f.C, backend, pinv_tol, pinv_max_iters);
        const QMat r_pinv = backend_pinv(f.R, backend, pinv_tol, pinv_max_iters);
        f.U = mat_mul(mat_mul(c_pinv, a), r_pinv);
    }
    return f;
}

namespace {

// Deterministic leverage-style selection: top-r squared row norms of the
// leading left (rows) / right (columns) singular blocks of the embedding.
std::vector<long> top_leverage(const CMat& basis, long half, long r) {
    Eigen::VectorXd lev = Eigen::VectorXd::Zero(half);
    for (long i = 0; i < half; ++i)
        lev(i) = basis.row(i).squaredNorm() + basis.row(i + half).squaredNorm();
    std::vector<long> order(half);
    std::iota(order.begin(), order.end(), 0L);
    std::stable_sort(order.begin(), order.end(), [&](long i, long j) { return lev(i) > lev(j); });
    order.resize(r);
    std::sort(order.begin(), order.end());
    return order;
}

void draw_indices(const QMat& m, const CurConfig& cfg, std::uint64_t seed_offset,
                  std::vector<long>& rows, std::vector<long>& cols) {
    if (cfg.selection == Selection::UniformRandom) {
        rows = sample_without_replacement(m.rows(), cfg.rank, cfg.select_seed + 2 * seed_offset);
        cols = sample_without_replacement(m.cols(), cfg.rank,
                                          cfg.select_seed + 2 * seed_offset + 1);
        return;
    }
    const SvdResult svd = jacobi_svd(embed(m));
    const long k = std::min<long>(2 * cfg.rank, svd.sigma.size());
    rows = top_leverage(svd.U.leftCols(k), m.rows(), cfg.rank);
    cols = top_leverage(svd.V.leftCols(k), m.cols(), cfg.rank);
}

QMat zero_scalar_part(const QMat& a) {
    QMat out = a;
    for (long i = 0; i < out.size(); ++i) out.data()[i].s = 0.0;
    return out;
}

}  // namespace

CompletionResult impute_reconstruct(const QuatImage& m, const Eigen::MatrixXd& mask,
                                    const CurConfig& cfg, const QuatImage* ground_truth) {
    if (mask.rows() != m.height || mask.cols() != m.width)
        throw ShapeError("impute_reconstruct(mask)", mask.rows(), mask.cols(), m.height, m.width);
    if (cfg.rank > std::min(m.height, m.width))
        throw std::invalid_argument("impute_reconstruct: rank exceeds min(m, n)");

    const QMat zero = QMat::Zero(m.height, m.width);
    QMat current = real_mask_apply(mask, m.pixels, zero);  // missing entries start at 0

    CompletionResult res;
    draw_indices(current, cfg, 0, res.row_idx, res.col_idx);

    for (int t = 1; t <= cfg.iters; ++t) {
        if (cfg.redraw_each_sweep && t > 1)
            draw_indices(current, cfg, static_cast<std::uint64_t>(t), res.row_idx, res.col_idx);

        const CurFactors f = cur_factor(current, res.row_idx, res.col_idx, cfg.u_mode, cfg.backend,
                                        cfg.pinv_tol, cfg.pinv_max_iters);
        QMat x = mat_mul(mat_mul(f.C, f.U), f.R);
        // The valid image manifold has zero scalar parts; project back before
        // reinsertion so every iterate is itself an image.
        x = zero_scalar_part(x);

        if (cfg.gaussian_sigma) {
            auto planes = x.to_planes();
            for (int c = 1; c < 4; ++c) planes[c] = gaussian_blur(planes[c], *cfg.gaussian_sigma);
            x = QMat::from_planes(Eigen::MatrixXd::Zero(m.height, m.width), planes[1], planes[2],
                                  planes[3]);
        }

        current = real_mask_apply(mask, m.pixels, x);

        if (ground_truth) {
            QuatImage est{m.height, m.width, current};
            res.history.push_back(
                SweepMetrics{t, psnr(est, *ground_truth), ssim(est, *ground_truth)});
        }
    }

    res.completed = QuatImage{m.height, m.width, zero_scalar_part(current)};
    return res;
}

double psnr(const QuatImage& x, const QuatImage& truth) {
    detail::require_same_shape("psnr", x.pixels, truth.pixels);
    const long n = x.pixels.size();
    double mse = 0.0;
    for (long i = 0; i < n; ++i) {
        const Quat d = x.pixels.data()[i] - truth.pixels.data()[i];
        mse += d.x * d.x + d.y * d.y + d.z * d.z;
    }
    mse /= static_cast<double>(3 * n);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / mse);
}

namespace {

// Mean of f over all 8x8 windows via a summed-area table.
Eigen::MatrixXd window_sums(const Eigen::MatrixXd& f, int w) {
    const long h = f.rows(), n = f.cols();
    Eigen::MatrixXd sat = Eigen::MatrixXd::Zero(h + 1, n + 1);
    for (long r = 0; r < h; ++r)
        for (long c = 0; c < n; ++c)
            sat(r + 1, c + 1) = f(r, c) + sat(r, c + 1) + sat(r + 1, c) - sat(r, c);
    Eigen::MatrixXd out(h - w + 1, n - w + 1);
    for (long r = 0; r + w <= h; ++r)
        for (long c = 0; c + w <= n; ++c)
            out(r, c) = sat(r + w, c + w) - sat(r, c + w) - sat(r + w, c) + sat(r, c);
    return out;
}

double ssim_channel(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    constexpr int w = 8;
    constexpr double c1 = 0.01 * 0.01;
    constexpr double c2 = 0.03 * 0.03;
    const double area = w * w;

    const Eigen::MatrixXd sx = window_sums(x, w);
    const Eigen::MatrixXd sy = window_sums(y, w);
    const Eigen::MatrixXd sxx = window_sums(x.cwiseProduct(x), w);
    const Eigen::MatrixXd syy = window_sums(y.cwiseProduct(y), w);
    const Eigen::MatrixXd sxy = window_sums(x.cwiseProduct(y), w);

    double acc = 0.0;
    for (long r = 0; r < sx.rows(); ++r)
        for (long c = 0; c < sx.cols(); ++c) {
            const double mx = sx(r, c) / area, my = sy(r, c) / area;
            const double vx = sxx(r, c) / area - mx * mx;
            const double vy = syy(r, c) / area - my * my;
            const double cov = sxy(r, c) / area - mx * my;
            acc += (2.0 * mx * my + c1) * (2.0 * cov + c2) /
                   ((mx * mx + my * my + c1) * (vx + vy + c2));
        }
    return acc / (sx.rows() * sx.cols());
}

}  // namespace

double ssim(const QuatImage& x, const QuatImage& truth) {
    detail::require_same_shape("ssim", x.pixels, truth.pixels);
    if (x.height < 8 || x.width < 8) throw std::invalid_argument("ssim: image smaller than 8x8");
    const auto cx = x.channels();
    const auto ct = truth.channels();
    double acc = 0.0;
    for (int c = 0; c < 3; ++c) acc += ssim_channel(cx[c], ct[c]);
    return acc / 3.0;
}

Eigen::MatrixXd gaussian_blur(const Eigen::MatrixXd& channel, double sigma) {
    if (sigma <= 0.0) throw std::invalid_argument("gaussian_blur: sigma must be positive");
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    Eigen::VectorXd kernel(2 * radius + 1);
    for (int t = -radius; t <= radius; ++t)
        kernel(t + radius) = std::exp(-0.5 * t * t / (sigma * sigma));
    kernel /= kernel.sum();

    // reflect padding: index -1 maps to 0, n maps to n-1
    const auto reflect = [](long i, long n) {
        while (i < 0 || i >= n) {
            if (i < 0) i = -i - 1;
            if (i >= n) i = 2 * n - 1 - i;
        }
        return i;
    };

    const long h = channel.rows(), w = channel.cols();
    Eigen::MatrixXd tmp(h, w), out(h, w);
    for (long r = 0; r < h; ++r)
        for (long c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int t = -radius; t <= radius; ++t)
                acc += kernel(t + radius) * channel(r, reflect(c + t, w));
            tmp(r, c) = acc;
        }
    for (long r = 0; r < h; ++r)
        for (long c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int t = -radius; t <= radius; ++t)
                acc += kernel(t + radius) * tmp(reflect(r + t, h), c);
            out(r, c) = acc;
        }
    return out;
}

}  // namespace quatern
