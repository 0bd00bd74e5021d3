#include "orchid/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include <Eigen/Dense>

#include "orchid/generators.hpp"
#include "orchid/transport.hpp"

namespace orchid {

namespace {

/// Derived seed for the i-th independent replicate of a seeded procedure.
uint64_t replicate_seed(uint64_t seed, uint64_t i) { return splitmix64(seed ^ splitmix64(i + 1)); }

}  // namespace

FeatureKind feature_kind_from_string(const std::string& s) {
    if (s == "edge_curvature") return FeatureKind::EdgeCurvature;
    if (s == "directional_curvature") return FeatureKind::DirectionalCurvature;
    if (s == "node_curvature_edges") return FeatureKind::NodeCurvatureEdges;
    if (s == "node_curvature_neighborhood") return FeatureKind::NodeCurvatureNeighborhood;
    if (s == "edge_cardinality") return FeatureKind::EdgeCardinality;
    if (s == "edge_neighborhood_size") return FeatureKind::EdgeNeighborhoodSize;
    if (s == "node_degree") return FeatureKind::NodeDegree;
    if (s == "node_neighborhood_size") return FeatureKind::NodeNeighborhoodSize;
    throw SpecError("unknown feature kind '" + s + "'");
}

std::string to_string(FeatureKind k) {
    switch (k) {
        case FeatureKind::EdgeCurvature: return "edge_curvature";
        case FeatureKind::DirectionalCurvature: return "directional_curvature";
        case FeatureKind::NodeCurvatureEdges: return "node_curvature_edges";
        case FeatureKind::NodeCurvatureNeighborhood: return "node_curvature_neighborhood";
        case FeatureKind::EdgeCardinality: return "edge_cardinality";
        case FeatureKind::EdgeNeighborhoodSize: return "edge_neighborhood_size";
        case FeatureKind::NodeDegree: return "node_degree";
        case FeatureKind::NodeNeighborhoodSize: return "node_neighborhood_size";
    }
    return "?";
}

bool feature_kind_needs_curvature(FeatureKind k) {
    switch (k) {
        case FeatureKind::EdgeCurvature:
        case FeatureKind::DirectionalCurvature:
        case FeatureKind::NodeCurvatureEdges:
        case FeatureKind::NodeCurvatureNeighborhood: return true;
        default: return false;
    }
}

FeatureDistribution feature_from_result(const CurvatureResult& res, FeatureKind kind,
                                        const std::string& source_id) {
    FeatureDistribution out;
    out.source_id = source_id;
    out.kind = kind;
    switch (kind) {
        case FeatureKind::EdgeCurvature:
            for (const auto& v : res.edge_curvatures)
                if (v) out.samples.push_back(*v);
            break;
        case FeatureKind::DirectionalCurvature:
            for (const auto& [i, j, v] : res.directional) out.samples.push_back(v);
            break;
        case FeatureKind::NodeCurvatureEdges:
            for (const auto& v : res.node_edges)
                if (v) out.samples.push_back(*v);
            break;
        case FeatureKind::NodeCurvatureNeighborhood:
            for (const auto& v : res.node_neighborhood)
                if (v) out.samples.push_back(*v);
            break;
        default:
            throw SpecError("feature kind " + to_string(kind) + " is structural, not curvature-based");
    }
    if (out.samples.empty()) throw EmptyFeatureError(to_string(kind) + " has no defined samples");
    return out;
}

FeatureDistribution feature_from_hypergraph(const Hypergraph& h, FeatureKind kind,
                                            const std::string& source_id) {
    FeatureDistribution out;
    out.source_id = source_id;
    out.kind = kind;
    switch (kind) {
        case FeatureKind::EdgeCardinality:
            for (int e = 0; e < h.edge_count(); ++e)
                out.samples.push_back(static_cast<double>(h.edge(e).size()));
            break;
        case FeatureKind::EdgeNeighborhoodSize:
            for (int e = 0; e < h.edge_count(); ++e)
                out.samples.push_back(static_cast<double>(h.edge_neighborhood(e).size()));
            break;
        case FeatureKind::NodeDegree:
            for (int i = 0; i < h.node_count(); ++i)
                out.samples.push_back(static_cast<double>(h.degree(i)));
            break;
        case FeatureKind::NodeNeighborhoodSize:
            for (int i = 0; i < h.node_count(); ++i)
                out.samples.push_back(static_cast<double>(h.node_neighborhood(i).size()));
            break;
        default:
            throw SpecError("feature kind " + to_string(kind) + " needs a curvature result");
    }
    if (out.samples.empty()) throw EmptyFeatureError(to_string(kind) + " has no samples");
    return out;
}

std::vector<double> quantile_vector(const FeatureDistribution& dist, int v) {
    if (v < 1) throw SpecError("quantile vector length must be >= 1");
    if (dist.samples.empty()) throw EmptyFeatureError("quantile vector of empty distribution");
    std::vector<double> sorted = dist.samples;
    std::sort(sorted.begin(), sorted.end());
    int n = static_cast<int>(sorted.size());
    std::vector<double> out(v);
    for (int j = 0; j < v; ++j) {
        double p = (j + 0.5) / v;
        double h = p * n - 0.5;
        if (h <= 0) {
            out[j] = sorted.front();
        } else if (h >= n - 1) {
            out[j] = sorted.back();
        } else {
            int lo = static_cast<int>(std::floor(h));
            double frac = h - lo;
            out[j] = sorted[lo] * (1 - frac) + sorted[lo + 1] * frac;
        }
    }
    return out;
}

namespace {

/// Inverse median of the nonzero entries; nullopt if all are zero.
std::optional<double> inverse_median(std::vector<double> vals) {
    vals.erase(std::remove_if(vals.begin(), vals.end(), [](double v) { return v <= 0; }),
               vals.end());
    if (vals.empty()) return std::nullopt;
    size_t mid = vals.size() / 2;
    std::nth_element(vals.begin(), vals.begin() + mid, vals.end());
    double med = vals[mid];
    if (vals.size() % 2 == 0) {
        double lower = *std::max_element(vals.begin(), vals.begin() + mid);
        med = 0.5 * (med + lower);
    }
    return med > 0 ? std::optional<double>(1.0 / med) : std::nullopt;
}

}  // namespace

KernelMatrix rbf_kernel_matrix(const std::vector<std::vector<double>>& features,
                               const std::vector<std::string>& ids, std::optional<double> gamma) {
    size_t n = features.size();
    if (n < 2) throw SpecError("kernel matrix needs at least two sources");
    if (!ids.empty() && ids.size() != n) throw ShapeError("id count does not match feature count");
    for (const auto& f : features)
        if (f.size() != features[0].size()) throw ShapeError("feature vectors have mixed lengths");

    std::vector<std::vector<double>> sq(n, std::vector<double>(n, 0.0));
    std::vector<double> offdiag;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b) {
            double s = 0;
            for (size_t t = 0; t < features[a].size(); ++t) {
                double d = features[a][t] - features[b][t];
                s += d * d;
            }
            sq[a][b] = sq[b][a] = s;
            offdiag.push_back(s);
        }

    KernelMatrix K;
    K.kind = KernelKind::RBF;
    K.ids = ids.empty() ? std::vector<std::string>(n) : ids;
    if (gamma) {
        K.gamma = *gamma;
    } else if (auto g = inverse_median(offdiag)) {
        K.gamma = *g;
    } else {
        K.gamma = 1.0;
        K.gamma_fallback = true;
    }
    K.values.assign(n, std::vector<double>(n, 1.0));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            K.values[a][b] = K.values[b][a] = std::exp(-K.gamma * sq[a][b]);
    return K;
}

KernelMatrix expw_kernel_matrix(const std::vector<FeatureDistribution>& dists,
                                std::optional<double> gamma) {
    size_t n = dists.size();
    if (n < 2) throw SpecError("kernel matrix needs at least two sources");

    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    std::vector<double> offdiag;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b) {
            double d = w1_empirical_1d(dists[a].samples, dists[b].samples);
            w[a][b] = w[b][a] = d;
            offdiag.push_back(d);
        }

    KernelMatrix K;
    K.kind = KernelKind::ExpWasserstein;
    K.ids.reserve(n);
    for (const auto& d : dists) K.ids.push_back(d.source_id);
    if (gamma) {
        K.gamma = *gamma;
    } else if (auto g = inverse_median(offdiag)) {
        K.gamma = *g;
    } else {
        K.gamma = 1.0;
        K.gamma_fallback = true;
    }
    K.values.assign(n, std::vector<double>(n, 1.0));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            K.values[a][b] = K.values[b][a] = std::exp(-K.gamma * w[a][b]);
    return K;
}

namespace {

Eigen::MatrixXd to_eigen(const std::vector<std::vector<double>>& m) {
    Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m[0].size());
    for (size_t r = 0; r < m.size(); ++r)
        for (size_t c = 0; c < m[r].size(); ++c) out(r, c) = m[r][c];
    return out;
}

}  // namespace

std::vector<std::vector<double>> kpca_embed(const KernelMatrix& K, int dims) {
    int n = static_cast<int>(K.values.size());
    if (dims < 1 || dims > n) throw SpecError("kpca dims must lie in [1, source count]");

    Eigen::MatrixXd M = to_eigen(K.values);
    Eigen::MatrixXd ones = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    Eigen::MatrixXd C = M - ones * M - M * ones + ones * M * ones;
    C = 0.5 * (C + C.transpose());  // symmetrize against rounding

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
    std::vector<std::vector<double>> coords(n, std::vector<double>(dims, 0.0));
    for (int d = 0; d < dims; ++d) {
        int col = n - 1 - d;  // eigenvalues sorted ascending
        double lambda = std::max(0.0, es.eigenvalues()(col));
        Eigen::VectorXd v = es.eigenvectors().col(col);
        int arg = 0;
        for (int r = 1; r < n; ++r)
            if (std::abs(v(r)) > std::abs(v(arg))) arg = r;
        if (v(arg) < 0) v = -v;
        double scale = std::sqrt(lambda);
        for (int r = 0; r < n; ++r) coords[r][d] = scale * v(r);
    }
    return coords;
}

namespace {

/// Seeded k-means++ on rows; returns (labels, inertia).
std::pair<std::vector<int>, double> kmeans_once(const Eigen::MatrixXd& X, int k,
                                                std::mt19937_64& rng) {
    int n = static_cast<int>(X.rows());
    std::vector<Eigen::VectorXd> centers;
    std::uniform_int_distribution<int> first(0, n - 1);
    centers.push_back(X.row(first(rng)));
    std::vector<double> d2(n);
    while (static_cast<int>(centers.size()) < k) {
        double total = 0;
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centers)
                best = std::min(best, (X.row(i).transpose() - c).squaredNorm());
            d2[i] = best;
            total += best;
        }
        int pick = 0;
        if (total > 0) {
            std::uniform_real_distribution<double> u(0.0, total);
            double target = u(rng), acc = 0;
            for (int i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = first(rng);
        }
        centers.push_back(X.row(pick));
    }

    std::vector<int> labels(n, 0);
    for (int iter = 0; iter < 100; ++iter) {
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double bd = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                double d = (X.row(i).transpose() - centers[c]).squaredNorm();
                if (d < bd - 1e-15) {
                    bd = d;
                    best = c;
                }
            }
            if (labels[i] != best) {
                labels[i] = best;
                changed = true;
            }
        }
        std::vector<Eigen::VectorXd> sums(k, Eigen::VectorXd::Zero(X.cols()));
        std::vector<int> counts(k, 0);
        for (int i = 0; i < n; ++i) {
            sums[labels[i]] += X.row(i);
            ++counts[labels[i]];
        }
        for (int c = 0; c < k; ++c)
            if (counts[c] > 0) centers[c] = sums[c] / counts[c];
        if (!changed) break;
    }
    double inertia = 0;
    for (int i = 0; i < n; ++i)
        inertia += (X.row(i).transpose() - centers[labels[i]]).squaredNorm();
    return {std::move(labels), inertia};
}

}  // namespace

std::vector<int> spectral_cluster(const KernelMatrix& K, int k, uint64_t seed) {
    int n = static_cast<int>(K.values.size());
    if (k < 2 || k > n) throw SpecError("cluster count must lie in [2, source count]");

    Eigen::MatrixXd A = to_eigen(K.values).cwiseMax(0.0);
    Eigen::VectorXd deg = A.rowwise().sum();
    Eigen::VectorXd dinv = deg.unaryExpr([](double d) { return d > 0 ? 1.0 / std::sqrt(d) : 0.0; });
    Eigen::MatrixXd N = dinv.asDiagonal() * A * dinv.asDiagonal();
    N = 0.5 * (N + N.transpose());

    // Top-k eigenvectors of the normalized affinity = bottom-k of L_sym.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(N);
    Eigen::MatrixXd U(n, k);
    for (int d = 0; d < k; ++d) U.col(d) = es.eigenvectors().col(n - 1 - d);
    for (int r = 0; r < n; ++r) {
        double norm = U.row(r).norm();
        if (norm > 0) U.row(r) /= norm;
    }

    std::vector<int> best_labels;
    double best_inertia = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < 10; ++restart) {
        std::mt19937_64 rng(replicate_seed(seed, restart));
        auto [labels, inertia] = kmeans_once(U, k, rng);
        if (inertia < best_inertia - 1e-12) {
            best_inertia = inertia;
            best_labels = std::move(labels);
        }
    }
    return best_labels;
}

std::pair<double, double> mmd_test(const std::vector<double>& xs, const std::vector<double>& ys,
                                   int B, uint64_t seed) {
    if (xs.size() < 2 || ys.size() < 2) throw SpecError("mmd test needs >= 2 samples per side");
    if (B < 1) throw SpecError("mmd test needs B >= 1 permutations");
    size_t nx = xs.size(), ny = ys.size(), n = nx + ny;

    std::vector<double> pooled(xs);
    pooled.insert(pooled.end(), ys.begin(), ys.end());

    std::vector<double> sqd;
    sqd.reserve(n * (n - 1) / 2);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b) {
            double d = pooled[a] - pooled[b];
            sqd.push_back(d * d);
        }
    double gamma = inverse_median(sqd).value_or(1.0);

    std::vector<std::vector<double>> kmat(n, std::vector<double>(n, 1.0));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b) {
            double d = pooled[a] - pooled[b];
            kmat[a][b] = kmat[b][a] = std::exp(-gamma * d * d);
        }

    auto mmd2_of = [&](const std::vector<size_t>& idx) {
        double kxx = 0, kyy = 0, kxy = 0;
        for (size_t a = 0; a < nx; ++a)
            for (size_t b = 0; b < nx; ++b)
                if (a != b) kxx += kmat[idx[a]][idx[b]];
        for (size_t a = 0; a < ny; ++a)
            for (size_t b = 0; b < ny; ++b)
                if (a != b) kyy += kmat[idx[nx + a]][idx[nx + b]];
        for (size_t a = 0; a < nx; ++a)
            for (size_t b = 0; b < ny; ++b) kxy += kmat[idx[a]][idx[nx + b]];
        return kxx / (double(nx) * (nx - 1)) + kyy / (double(ny) * (ny - 1)) -
               2.0 * kxy / (double(nx) * ny);
    };

    std::vector<size_t> identity(n);
    for (size_t i = 0; i < n; ++i) identity[i] = i;
    double observed = mmd2_of(identity);

    int exceed = 0;
    for (int rep = 0; rep < B; ++rep) {
        std::mt19937_64 rng(replicate_seed(seed, rep));
        std::vector<size_t> perm = identity;
        std::shuffle(perm.begin(), perm.end(), rng);
        if (mmd2_of(perm) >= observed - 1e-15) ++exceed;
    }
    double p = (1.0 + exceed) / (B + 1.0);
    return {observed, p};
}

std::vector<double> bonferroni_adjust(const std::vector<double>& pvals) {
    double h = static_cast<double>(pvals.size());
    std::vector<double> out;
    out.reserve(pvals.size());
    for (double p : pvals) {
        if (p < 0 || p > 1) throw SpecError("p-values must lie in [0,1]");
        out.push_back(std::min(1.0, p * h));
    }
    return out;
}

double wcc(const std::vector<int>& clusters, const std::vector<FeatureDistribution>& dists) {
    if (clusters.size() != dists.size())
        throw ShapeError("cluster labels and distributions differ in count");
    if (clusters.empty()) throw SpecError("wcc needs at least one source");

    std::map<int, std::vector<int>> members;
    for (size_t i = 0; i < clusters.size(); ++i) members[clusters[i]].push_back(static_cast<int>(i));

    auto mean_w1 = [&](const std::vector<int>& xs, const std::vector<int>& ys, bool same) {
        double sum = 0;
        int count = 0;
        if (same) {
            for (size_t a = 0; a < xs.size(); ++a)
                for (size_t b = a + 1; b < xs.size(); ++b) {
                    sum += w1_empirical_1d(dists[xs[a]].samples, dists[xs[b]].samples);
                    ++count;
                }
        } else {
            for (int a : xs)
                for (int b : ys) {
                    sum += w1_empirical_1d(dists[a].samples, dists[b].samples);
                    ++count;
                }
        }
        return count > 0 ? sum / count : 0.0;
    };

    double intra = 0;
    for (const auto& [label, xs] : members) intra += mean_w1(xs, {}, true);

    double cross = 0;
    for (const auto& [lx, xs] : members)
        for (const auto& [ly, ys] : members)
            if (lx != ly) cross += mean_w1(xs, ys, false);

    return intra / (1.0 + cross);
}

NmiNormalizer nmi_normalizer_from_string(const std::string& s) {
    if (s == "max") return NmiNormalizer::Max;
    if (s == "min") return NmiNormalizer::Min;
    if (s == "mean") return NmiNormalizer::Mean;
    if (s == "sqrt") return NmiNormalizer::Sqrt;
    throw SpecError("unknown nmi normalizer '" + s + "' (expected max|min|mean|sqrt)");
}

namespace {

std::vector<int> discretize(const std::vector<double>& xs, int bins) {
    double lo = *std::min_element(xs.begin(), xs.end());
    double hi = *std::max_element(xs.begin(), xs.end());
    std::vector<int> out(xs.size(), 0);
    if (hi <= lo) return out;  // constant variable: one occupied bin
    double width = (hi - lo) / bins;
    for (size_t i = 0; i < xs.size(); ++i) {
        int b = static_cast<int>((xs[i] - lo) / width);
        out[i] = std::min(b, bins - 1);
    }
    return out;
}

double entropy(const std::vector<double>& probs) {
    double h = 0;
    for (double p : probs)
        if (p > 0) h -= p * std::log(p);
    return h;
}

}  // namespace

double nmi(const std::vector<double>& xs, const std::vector<double>& ys, int bins,
           NmiNormalizer norm) {
    if (xs.size() != ys.size()) throw ShapeError("nmi needs samples of equal length");
    if (xs.size() < 2) throw SpecError("nmi needs at least two samples");
    if (bins < 2) throw SpecError("nmi needs at least two bins");

    auto bx = discretize(xs, bins);
    auto by = discretize(ys, bins);
    size_t n = xs.size();

    std::vector<double> px(bins, 0.0), py(bins, 0.0);
    std::vector<std::vector<double>> joint(bins, std::vector<double>(bins, 0.0));
    for (size_t i = 0; i < n; ++i) {
        px[bx[i]] += 1.0 / n;
        py[by[i]] += 1.0 / n;
        joint[bx[i]][by[i]] += 1.0 / n;
    }
    double hx = entropy(px), hy = entropy(py);
    if (hx == 0.0 || hy == 0.0) return (hx == 0.0 && hy == 0.0) ? 1.0 : 0.0;

    double mi = 0;
    for (int a = 0; a < bins; ++a)
        for (int b = 0; b < bins; ++b)
            if (joint[a][b] > 0) mi += joint[a][b] * std::log(joint[a][b] / (px[a] * py[b]));

    double z = 1.0;
    switch (norm) {
        case NmiNormalizer::Max: z = std::max(hx, hy); break;
        case NmiNormalizer::Min: z = std::min(hx, hy); break;
        case NmiNormalizer::Mean: z = 0.5 * (hx + hy); break;
        case NmiNormalizer::Sqrt: z = std::sqrt(hx * hy); break;
    }
    return std::clamp(mi / z, 0.0, 1.0);
}

}  // namespace orchid
