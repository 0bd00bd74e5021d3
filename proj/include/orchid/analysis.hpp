#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orchid/curvature.hpp"
#include "orchid/hypergraph.hpp"

namespace orchid {

enum class FeatureKind {
    EdgeCurvature,
    DirectionalCurvature,
    NodeCurvatureEdges,
    NodeCurvatureNeighborhood,
    EdgeCardinality,
    EdgeNeighborhoodSize,
    NodeDegree,
    NodeNeighborhoodSize,
};

FeatureKind feature_kind_from_string(const std::string& s);
std::string to_string(FeatureKind k);
bool feature_kind_needs_curvature(FeatureKind k);

struct FeatureDistribution {
    std::string source_id;
    FeatureKind kind = FeatureKind::EdgeCurvature;
    std::vector<double> samples;
};

/// Curvature-derived feature samples (nulls filtered; throws EmptyFeatureError
/// if nothing remains).
FeatureDistribution feature_from_result(const CurvatureResult& res, FeatureKind kind,
                                        const std::string& source_id);
/// Structural baseline feature samples straight from the hypergraph.
FeatureDistribution feature_from_hypergraph(const Hypergraph& h, FeatureKind kind,
                                            const std::string& source_id);

/// Evenly spaced empirical quantiles (midpoint convention, linear
/// interpolation); a fixed-length, order-free featurization.
std::vector<double> quantile_vector(const FeatureDistribution& dist, int v);

enum class KernelKind { RBF, ExpWasserstein };

struct KernelMatrix {
    std::vector<std::string> ids;
    std::vector<std::vector<double>> values;
    KernelKind kind = KernelKind::RBF;
    double gamma = 1.0;
    bool gamma_fallback = false;  // true when the median heuristic degenerated
};

/// exp(-gamma * ||x - y||^2) over fixed-length feature vectors; gamma defaults
/// to the inverse median of the nonzero pairwise squared distances.
KernelMatrix rbf_kernel_matrix(const std::vector<std::vector<double>>& features,
                               const std::vector<std::string>& ids,
                               std::optional<double> gamma = std::nullopt);

/// exp(-gamma * W1) over raw sample sets with the exact 1-D Wasserstein
/// distance; gamma defaults to the inverse median of the nonzero pairwise W1.
KernelMatrix expw_kernel_matrix(const std::vector<FeatureDistribution>& dists,
                                std::optional<double> gamma = std::nullopt);

/// Kernel PCA coordinates (one row per source, `dims` columns): double-center,
/// eigendecompose, clip negative eigenvalues, scale eigenvectors by sqrt of
/// the eigenvalue, fix signs so each component's largest entry is positive.
std::vector<std::vector<double>> kpca_embed(const KernelMatrix& K, int dims);

/// Spectral clustering on the (negativity-clipped) kernel as an affinity:
/// symmetric-normalized Laplacian, row-normalized top-k eigenvectors, seeded
/// k-means++ with 10 restarts. Deterministic per seed.
std::vector<int> spectral_cluster(const KernelMatrix& K, int k, uint64_t seed);

/// Unbiased MMD^2 two-sample statistic (RBF kernel, median-heuristic
/// bandwidth on the pooled samples) with a permutation p-value:
/// p = (1 + #{permuted >= observed}) / (B + 1).
std::pair<double, double> mmd_test(const std::vector<double>& xs, const std::vector<double>& ys,
                                   int B, uint64_t seed);

/// Multiplies each p-value by the number of tests, capping at 1.
std::vector<double> bonferroni_adjust(const std::vector<double>& pvals);

/// Wasserstein clustering coefficient: summed mean intra-cluster pairwise W1
/// over 1 plus the mean cross-cluster W1 summed over ordered distinct cluster
/// pairs. Singleton clusters contribute 0 intra mass. Lower is better.
double wcc(const std::vector<int>& clusters, const std::vector<FeatureDistribution>& dists);

enum class NmiNormalizer { Max, Min, Mean, Sqrt };
NmiNormalizer nmi_normalizer_from_string(const std::string& s);

/// Normalized mutual information between two real samples of equal length,
/// each discretized into equal-width bins over its own range. A zero-entropy
/// variable yields 1 if both are constant and 0 otherwise.
double nmi(const std::vector<double>& xs, const std::vector<double>& ys, int bins,
           NmiNormalizer norm = NmiNormalizer::Max);

}  // namespace orchid
