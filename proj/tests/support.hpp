#ifndef DQM_TESTS_SUPPORT_HPP
#define DQM_TESTS_SUPPORT_HPP

// Test-side reference machinery, kept independent of the library code it
// checks: explicit n*n scatter matrices built with plain loops, generalized
// eigenvalues from the characteristic polynomial (n <= 3), counting-based
// ranks and two-pass moments.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "dqm/dataset.hpp"
#include "dqm/rng.hpp"

namespace support {

// ---------- dataset generators ----------

/// Gaussian blobs: class i centered at means[i], isotropic unit variance
/// scaled by sigma. Rows grouped by class.
inline dqm::LabeledDataset gaussian_blobs(const std::vector<std::vector<double>>& means,
                                          std::size_t rows_per_class, double sigma,
                                          dqm::rng::Stream& stream) {
    dqm::LabeledDataset ds;
    ds.c = static_cast<int>(means.size());
    ds.n = means.front().size();
    for (int cls = 0; cls < ds.c; ++cls) {
        for (std::size_t r = 0; r < rows_per_class; ++r) {
            for (std::size_t j = 0; j < ds.n; ++j)
                ds.data.push_back(means[static_cast<std::size_t>(cls)][j] +
                                  sigma * stream.normal());
            ds.labels.push_back(cls);
        }
    }
    ds.m = ds.labels.size();
    for (int i = 0; i < ds.c; ++i) ds.label_names.push_back("c" + std::to_string(i));
    return ds;
}

/// Unstructured dataset: iid normal features, labels cycling through c
/// classes so every class is nonempty.
inline dqm::LabeledDataset random_dataset(std::size_t m, std::size_t n, int c,
                                          dqm::rng::Stream& stream) {
    dqm::LabeledDataset ds;
    ds.m = m;
    ds.n = n;
    ds.c = c;
    ds.data.resize(m * n);
    for (double& v : ds.data) v = stream.normal();
    ds.labels.resize(m);
    for (std::size_t i = 0; i < m; ++i) ds.labels[i] = static_cast<int>(i % static_cast<std::size_t>(c));
    for (int i = 0; i < c; ++i) ds.label_names.push_back("c" + std::to_string(i));
    return ds;
}

inline std::vector<double> random_unit_direction(std::size_t n, dqm::rng::Stream& stream) {
    std::vector<double> v(n);
    double norm_sq = 0.0;
    for (double& x : v) {
        x = stream.normal();
        norm_sq += x * x;
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& x : v) x *= inv;
    return v;
}

// ---------- explicit scatter-matrix oracle ----------

struct ScatterMatrices {
    std::size_t n = 0;
    std::vector<double> s_w;                // n*n row-major
    std::vector<double> s_b;                // n*n row-major
    std::vector<std::vector<double>> s_wi;  // per class, n*n row-major
};

/// Normalized scatter matrices built elementwise, the O(m*n^2) way.
inline ScatterMatrices explicit_scatter(const dqm::LabeledDataset& ds) {
    const std::size_t n = ds.n;
    const auto c = static_cast<std::size_t>(ds.c);
    ScatterMatrices out;
    out.n = n;
    out.s_w.assign(n * n, 0.0);
    out.s_b.assign(n * n, 0.0);
    out.s_wi.assign(c, std::vector<double>(n * n, 0.0));

    std::vector<std::vector<double>> class_mean(c, std::vector<double>(n, 0.0));
    std::vector<double> global_mean(n, 0.0);
    std::vector<std::size_t> counts(c, 0);
    for (std::size_t i = 0; i < ds.m; ++i) {
        const auto y = static_cast<std::size_t>(ds.labels[i]);
        ++counts[y];
        for (std::size_t j = 0; j < n; ++j) {
            class_mean[y][j] += ds.row(i)[j];
            global_mean[j] += ds.row(i)[j];
        }
    }
    for (std::size_t cls = 0; cls < c; ++cls)
        for (std::size_t j = 0; j < n; ++j)
            class_mean[cls][j] /= static_cast<double>(counts[cls]);
    for (std::size_t j = 0; j < n; ++j) global_mean[j] /= static_cast<double>(ds.m);

    for (std::size_t i = 0; i < ds.m; ++i) {
        const auto y = static_cast<std::size_t>(ds.labels[i]);
        for (std::size_t a = 0; a < n; ++a) {
            const double da = ds.row(i)[a] - class_mean[y][a];
            for (std::size_t b = 0; b < n; ++b) {
                const double db = ds.row(i)[b] - class_mean[y][b];
                out.s_wi[y][a * n + b] += da * db / static_cast<double>(counts[y]);
            }
        }
    }
    for (std::size_t cls = 0; cls < c; ++cls)
        for (std::size_t e = 0; e < n * n; ++e) out.s_w[e] += out.s_wi[cls][e];

    for (std::size_t cls = 0; cls < c; ++cls) {
        const double w = static_cast<double>(counts[cls]) / static_cast<double>(ds.m);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                out.s_b[a * n + b] += w * (class_mean[cls][a] - global_mean[a]) *
                                      (class_mean[cls][b] - global_mean[b]);
    }
    return out;
}

inline double quad_form(std::span<const double> matrix, std::span<const double> v) {
    const std::size_t n = v.size();
    double acc = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) acc += v[a] * matrix[a * n + b] * v[b];
    return acc;
}

// ---------- characteristic-polynomial generalized eigenvalues (n <= 3) ----------

/// Real roots of x^3 + a x^2 + b x + c (trigonometric/Cardano), polished
/// with a few Newton steps.
inline std::vector<double> cubic_roots(double a, double b, double c) {
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    std::vector<double> roots;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        const double u = std::cbrt(-q / 2.0 + s);
        const double v = std::cbrt(-q / 2.0 - s);
        roots.push_back(u + v - a / 3.0);
    } else if (p == 0.0) {
        roots.assign(3, std::cbrt(-q) - a / 3.0);
    } else {
        const double r = std::sqrt(-p * p * p / 27.0);
        const double phi = std::acos(std::clamp(-q / (2.0 * r), -1.0, 1.0));
        const double mag = 2.0 * std::sqrt(-p / 3.0);
        for (int k = 0; k < 3; ++k)
            roots.push_back(mag * std::cos((phi + 2.0 * M_PI * k) / 3.0) - a / 3.0);
    }
    for (double& x : roots) {
        for (int it = 0; it < 3; ++it) {
            const double f = ((x + a) * x + b) * x + c;
            const double df = (3.0 * x + 2.0 * a) * x + b;
            if (df != 0.0) x -= f / df;
        }
    }
    return roots;
}

/// All generalized eigenvalues of (B, W), i.e. roots of det(B - lambda W),
/// for n in {1,2,3} with W nonsingular. Matrices row-major.
inline std::vector<double> generalized_eigenvalues_smalln(std::span<const double> bmat,
                                                          std::span<const double> wmat,
                                                          std::size_t n) {
    if (n == 1) {
        if (wmat[0] == 0.0) throw std::invalid_argument("singular W");
        return {bmat[0] / wmat[0]};
    }
    if (n == 2) {
        // det(B - t W) = alpha t^2 + beta t + gamma
        const double alpha = wmat[0] * wmat[3] - wmat[1] * wmat[2];
        const double beta =
            -(bmat[0] * wmat[3] + bmat[3] * wmat[0] - bmat[1] * wmat[2] - bmat[2] * wmat[1]);
        const double gamma = bmat[0] * bmat[3] - bmat[1] * bmat[2];
        if (alpha == 0.0) throw std::invalid_argument("singular W");
        const double disc = std::sqrt(std::max(0.0, beta * beta - 4.0 * alpha * gamma));
        const double q = -0.5 * (beta + (beta >= 0.0 ? disc : -disc));
        std::vector<double> roots{q / alpha};
        roots.push_back(q != 0.0 ? gamma / q : 0.0);
        return roots;
    }
    if (n == 3) {
        // Entries of B - t W are degree-1 polynomials; expand the 3x3
        // determinant over permutations into a cubic in t.
        struct Poly {
            double c0, c1;  // c0 + c1 t
        };
        auto entry = [&](std::size_t r, std::size_t col) {
            return Poly{bmat[r * 3 + col], -wmat[r * 3 + col]};
        };
        double coeff[4] = {0, 0, 0, 0};  // coeff[k] multiplies t^k
        const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                {2, 1, 0}, {1, 0, 2}, {0, 2, 1}};
        const double sign[6] = {1, 1, 1, -1, -1, -1};
        for (int pi = 0; pi < 6; ++pi) {
            const Poly e0 = entry(0, static_cast<std::size_t>(perm[pi][0]));
            const Poly e1 = entry(1, static_cast<std::size_t>(perm[pi][1]));
            const Poly e2 = entry(2, static_cast<std::size_t>(perm[pi][2]));
            // (e0*e1)*e2, collecting powers of t
            const double p0 = e0.c0 * e1.c0, p1 = e0.c0 * e1.c1 + e0.c1 * e1.c0,
                         p2 = e0.c1 * e1.c1;
            coeff[0] += sign[pi] * p0 * e2.c0;
            coeff[1] += sign[pi] * (p0 * e2.c1 + p1 * e2.c0);
            coeff[2] += sign[pi] * (p1 * e2.c1 + p2 * e2.c0);
            coeff[3] += sign[pi] * p2 * e2.c1;
        }
        if (coeff[3] == 0.0) throw std::invalid_argument("singular W");
        return cubic_roots(coeff[2] / coeff[3], coeff[1] / coeff[3], coeff[0] / coeff[3]);
    }
    throw std::invalid_argument("generalized_eigenvalues_smalln: n must be 1..3");
}

inline double max_generalized_eigenvalue_smalln(std::span<const double> bmat,
                                                std::span<const double> wmat, std::size_t n) {
    const auto roots = generalized_eigenvalues_smalln(bmat, wmat, n);
    return *std::max_element(roots.begin(), roots.end());
}

/// Smallest ordinary eigenvalue of a symmetric matrix, n <= 3, via the
/// characteristic polynomial with W = I.
inline double min_eigenvalue_smalln(std::span<const double> matrix, std::size_t n) {
    std::vector<double> identity(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) identity[i * n + i] = 1.0;
    const auto roots = generalized_eigenvalues_smalln(matrix, identity, n);
    return *std::min_element(roots.begin(), roots.end());
}

// ---------- brute-force statistics ----------

inline double pearson_bruteforce(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

/// Average ranks by pairwise counting (no sorting): 1 + #smaller + #ties/2.
inline std::vector<double> ranks_bruteforce(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t smaller = 0, equal = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            if (values[j] < values[i]) ++smaller;
            if (values[j] == values[i]) ++equal;
        }
        ranks[i] = 1.0 + static_cast<double>(smaller) + static_cast<double>(equal) / 2.0;
    }
    return ranks;
}

inline double spearman_bruteforce(std::span<const double> xs, std::span<const double> ys) {
    const auto rx = ranks_bruteforce(xs);
    const auto ry = ranks_bruteforce(ys);
    return pearson_bruteforce(rx, ry);
}

/// Textbook two-pass mean and population variance.
inline std::pair<double, double> twopass_moments(std::span<const double> values) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    return {mean, var};
}

// ---------- comparisons ----------

inline bool close_rel(double actual, double expected, double rel_tol, double abs_tol = 0.0) {
    const double diff = std::abs(actual - expected);
    return diff <= abs_tol + rel_tol * std::max(std::abs(actual), std::abs(expected));
}

}  // namespace support

#endif  // DQM_TESTS_SUPPORT_HPP
