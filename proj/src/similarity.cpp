#include "voa/similarity.hpp"

#include "voa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace voa {
namespace {

double l2_distance(std::span<const double> a, std::span<const double> b)
{
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sq += d * d;
    }
    return std::sqrt(sq);
}

double squared_distance(std::span<const double> a, std::span<const double> b)
{
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sq += d * d;
    }
    return sq;
}

double margin_score(std::span<const double> a, std::span<const double> b, double margin)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > margin)
            return 0.0;
    }
    return 1.0;
}

struct WindowStats {
    double mean_a = 0.0;
    double mean_b = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    double cov = 0.0;
};

// Mean of the SSIM structure term (cov + c2/2) / (sd_a * sd_b + c2/2) over
// square windows, affinely mapped from [-1, 1] to [0, 1]. Bitwise-identical
// windows score 1 directly, which also settles the zero-variance case.
double ssim_structure_score(const DepthImage& a, const DepthImage& b,
                            const SimilarityMetric& metric)
{
    const double c3 = metric.c2 / 2.0;
    const double scale = 1.0 / metric.value_scale;
    double total = 0.0;
    std::size_t n_windows = 0;
    for (int r0 = 0; r0 < a.height; r0 += metric.stride) {
        const int r1 = std::min(r0 + metric.window, a.height);
        for (int c0 = 0; c0 < a.width; c0 += metric.stride) {
            const int c1 = std::min(c0 + metric.window, a.width);
            ++n_windows;

            bool identical = true;
            for (int r = r0; r < r1 && identical; ++r)
                for (int c = c0; c < c1; ++c)
                    if (a.at(r, c) != b.at(r, c)) {
                        identical = false;
                        break;
                    }
            if (identical) {
                total += 1.0;
                continue;
            }

            WindowStats w;
            const double count = static_cast<double>((r1 - r0) * (c1 - c0));
            for (int r = r0; r < r1; ++r)
                for (int c = c0; c < c1; ++c) {
                    w.mean_a += a.at(r, c) * scale;
                    w.mean_b += b.at(r, c) * scale;
                }
            w.mean_a /= count;
            w.mean_b /= count;
            for (int r = r0; r < r1; ++r)
                for (int c = c0; c < c1; ++c) {
                    const double da = a.at(r, c) * scale - w.mean_a;
                    const double db = b.at(r, c) * scale - w.mean_b;
                    w.var_a += da * da;
                    w.var_b += db * db;
                    w.cov += da * db;
                }
            w.var_a /= count;
            w.var_b /= count;
            w.cov /= count;

            const double structure =
                (w.cov + c3) / (std::sqrt(w.var_a) * std::sqrt(w.var_b) + c3);
            total += (std::clamp(structure, -1.0, 1.0) + 1.0) / 2.0;
        }
    }
    return total / static_cast<double>(n_windows);
}

double mask_iou_score(const Mask& a, const Mask& b)
{
    long inter = 0;
    long uni = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const bool pa = a.values[i] != 0;
        const bool pb = b.values[i] != 0;
        inter += (pa && pb) ? 1 : 0;
        uni += (pa || pb) ? 1 : 0;
    }
    if (uni == 0)
        return 1.0; // both masks empty
    return static_cast<double>(inter) / static_cast<double>(uni);
}

// Normalized central moments eta_pq for pq in
// {20, 11, 02, 30, 21, 12, 03}; translation- and scale-invariant mask
// signature.
std::array<double, 7> moment_signature(const Mask& mask)
{
    double m00 = 0.0, m10 = 0.0, m01 = 0.0;
    for (int r = 0; r < mask.height; ++r)
        for (int c = 0; c < mask.width; ++c)
            if (mask.values[static_cast<std::size_t>(r) * mask.width + c]) {
                m00 += 1.0;
                m10 += c;
                m01 += r;
            }
    std::array<double, 7> eta{};
    if (m00 == 0.0)
        return eta;
    const double xc = m10 / m00;
    const double yc = m01 / m00;
    double mu[4][4] = {};
    for (int r = 0; r < mask.height; ++r)
        for (int c = 0; c < mask.width; ++c)
            if (mask.values[static_cast<std::size_t>(r) * mask.width + c]) {
                const double dx = c - xc;
                const double dy = r - yc;
                mu[2][0] += dx * dx;
                mu[1][1] += dx * dy;
                mu[0][2] += dy * dy;
                mu[3][0] += dx * dx * dx;
                mu[2][1] += dx * dx * dy;
                mu[1][2] += dx * dy * dy;
                mu[0][3] += dy * dy * dy;
            }
    const auto norm = [m00](double value, int order) {
        return value / std::pow(m00, 1.0 + order / 2.0);
    };
    eta[0] = norm(mu[2][0], 2);
    eta[1] = norm(mu[1][1], 2);
    eta[2] = norm(mu[0][2], 2);
    eta[3] = norm(mu[3][0], 3);
    eta[4] = norm(mu[2][1], 3);
    eta[5] = norm(mu[1][2], 3);
    eta[6] = norm(mu[0][3], 3);
    return eta;
}

double moment_match_score(const Mask& a, const Mask& b)
{
    const bool empty_a = a.area() == 0;
    const bool empty_b = b.area() == 0;
    if (empty_a && empty_b)
        return 1.0;
    if (empty_a || empty_b)
        return 0.0;
    const auto sig_a = moment_signature(a);
    const auto sig_b = moment_signature(b);
    double d = 0.0;
    for (std::size_t i = 0; i < sig_a.size(); ++i)
        d += std::abs(sig_a[i] - sig_b[i]);
    return std::exp(-d);
}

} // namespace

const char* metric_name(MetricKind kind)
{
    switch (kind) {
    case MetricKind::margin_deterministic: return "margin_deterministic";
    case MetricKind::exp_neg_norm: return "exp_neg_norm";
    case MetricKind::gaussian_likelihood: return "gaussian_likelihood";
    case MetricKind::windowed_ssim_structure: return "windowed_ssim_structure";
    case MetricKind::mask_iou: return "mask_iou";
    case MetricKind::moment_shape_match: return "moment_shape_match";
    }
    return "unknown";
}

MetricKind metric_from_name(const std::string& name)
{
    for (MetricKind kind :
         {MetricKind::margin_deterministic, MetricKind::exp_neg_norm,
          MetricKind::gaussian_likelihood, MetricKind::windowed_ssim_structure,
          MetricKind::mask_iou, MetricKind::moment_shape_match}) {
        if (name == metric_name(kind))
            return kind;
    }
    throw InputError("unknown similarity metric '" + name + "'");
}

bool metric_needs_depth(MetricKind kind)
{
    return kind == MetricKind::windowed_ssim_structure || kind == MetricKind::mask_iou ||
           kind == MetricKind::moment_shape_match;
}

void validate_metric(const SimilarityMetric& metric)
{
    if (metric.kind == MetricKind::margin_deterministic && metric.margin <= 0.0)
        throw InputError("similarity margin must be positive");
    if (metric.kind == MetricKind::gaussian_likelihood && metric.sigma <= 0.0)
        throw InputError("similarity sigma must be positive");
    if (metric.kind == MetricKind::windowed_ssim_structure) {
        if (metric.window < 2)
            throw InputError("similarity window must be at least 2");
        if (metric.stride < 1)
            throw InputError("similarity stride must be at least 1");
        if (metric.c2 <= 0.0)
            throw InputError("similarity c2 must be positive");
        if (metric.value_scale <= 0.0)
            throw InputError("similarity value_scale must be positive");
    }
}

double similarity(const SimilarityMetric& metric, const Observation& a, const Observation& b)
{
    validate_metric(metric);
    check_compatible(a, b);
    if (metric_needs_depth(metric.kind) && !std::holds_alternative<DepthImage>(a))
        throw InputError(std::string("metric '") + metric_name(metric.kind) +
                         "' requires depth-image observations");

    switch (metric.kind) {
    case MetricKind::margin_deterministic:
        return margin_score(observation_values(a), observation_values(b), metric.margin);
    case MetricKind::exp_neg_norm:
        return std::exp(-l2_distance(observation_values(a), observation_values(b)));
    case MetricKind::gaussian_likelihood:
        return std::exp(-squared_distance(observation_values(a), observation_values(b)) /
                        (2.0 * metric.sigma * metric.sigma));
    case MetricKind::windowed_ssim_structure:
        return ssim_structure_score(std::get<DepthImage>(a), std::get<DepthImage>(b), metric);
    case MetricKind::mask_iou:
        return mask_iou_score(mask_from_depth(std::get<DepthImage>(a)),
                              mask_from_depth(std::get<DepthImage>(b)));
    case MetricKind::moment_shape_match:
        return moment_match_score(mask_from_depth(std::get<DepthImage>(a)),
                                  mask_from_depth(std::get<DepthImage>(b)));
    }
    throw ComputeError("unhandled metric kind");
}

SimilarityMatrix similarity_matrix(const SimilarityMetric& metric,
                                   std::span<const Observation> observations,
                                   std::vector<std::string> ids)
{
    if (ids.size() != observations.size())
        throw InputError("similarity matrix needs one id per observation");
    const std::size_t n = observations.size();
    SimilarityMatrix out;
    out.ids = std::move(ids);
    out.values.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.values[i * n + j] = similarity(metric, observations[i], observations[j]);
    return out;
}

} // namespace voa
