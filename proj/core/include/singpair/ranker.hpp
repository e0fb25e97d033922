#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace singpair {

struct RankingQuery {
    std::string query_id;
    std::vector<std::vector<double>> features;
    std::vector<int> labels; // {0,1}
};

struct RankingDataset {
    std::vector<RankingQuery> queries;
    int feature_width = 0;
};

// Axis-aligned binary regression tree stored as a flat node array; node 0 is
// the root. Leaves have feature == -1.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct RegressionTree {
    std::vector<TreeNode> nodes;

    double evaluate(const std::vector<double>& x) const;
    int leaf_count() const;
};

struct LambdaMartModel {
    std::vector<RegressionTree> trees;
    double learning_rate = 0.1;
    int feature_width = 0;

    double score(const std::vector<double>& x) const;
};

struct TrainConfig {
    int num_trees = 300;
    double learning_rate = 0.1;
    int max_leaves = 10;
    int min_samples_leaf = 1;
    int ndcg_k = 10;
    std::uint64_t seed = 0;
};

// Gradient-boosted trees driven by LambdaRank gradients (binary gains
// 2^label - 1, NDCG@k swap deltas, Newton leaf values). Deterministic.
// Throws ValidationError("degenerate dataset") when no query mixes labels.
LambdaMartModel train_lambdamart(const RankingDataset& dataset, const TrainConfig& config = {});

// Pointwise scores; throws ValidationError on feature width mismatch.
std::vector<double> predict_scores(const LambdaMartModel& model,
                                   const std::vector<std::vector<double>>& features);

// Gain 2^label - 1, discount 1/log2(rank + 1), score ties broken by original
// index; 0 when the query has no positive label.
double ndcg_at_k(const std::vector<double>& scores, const std::vector<int>& labels, int k);

// TSV "query_id\tinstance_id\tscore"; duplicate keys rejected.
std::map<std::pair<std::string, std::string>, double> load_external_scores(const std::string& path);
void save_scores(const std::vector<std::tuple<std::string, std::string, double>>& rows,
                 const std::string& path);

// Versioned JSON; load(save(m)) reproduces scores exactly.
void save_model(const LambdaMartModel& model, const std::string& path);
LambdaMartModel load_model(const std::string& path);

} // namespace singpair
