#include "singpair/ranker.hpp"

#include "singpair/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <queue>

namespace singpair {

using nlohmann::json;

namespace {

constexpr int kModelVersion = 1;
constexpr double kHessianFloor = 1e-12;

double discount(int rank_1based, int k) {
    if (rank_1based > k) return 0.0;
    return 1.0 / std::log2(static_cast<double>(rank_1based) + 1.0);
}

double gain(int label) { return std::pow(2.0, label) - 1.0; }

// Indices sorted by descending score, ties by original index.
std::vector<int> rank_order(const std::vector<double>& scores) {
    std::vector<int> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return scores[a] > scores[b]; });
    return order;
}

double ideal_dcg(std::vector<int> labels, int k) {
    std::sort(labels.begin(), labels.end(), std::greater<>());
    double dcg = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        dcg += gain(labels[i]) * discount(static_cast<int>(i) + 1, k);
    return dcg;
}

// ---- regression tree fitting (least-squares splits, Newton leaves) ----

struct SplitResult {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

struct BuildNode {
    std::vector<int> rows;
    int node_index = -1;
    SplitResult split;
};

SplitResult best_split(const std::vector<int>& rows,
                       const std::vector<std::vector<double>>& features,
                       const std::vector<double>& grad, int width, int min_leaf) {
    SplitResult best;
    const double n_total = static_cast<double>(rows.size());
    double sum_total = 0.0;
    for (int r : rows) sum_total += grad[r];
    const double parent_score = sum_total * sum_total / n_total;

    std::vector<int> sorted = rows;
    for (int f = 0; f < width; ++f) {
        std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
            double va = features[a][f], vb = features[b][f];
            if (va != vb) return va < vb;
            return a < b;
        });
        double sum_left = 0.0;
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
            sum_left += grad[sorted[i]];
            double v = features[sorted[i]][f];
            double v_next = features[sorted[i + 1]][f];
            if (v == v_next) continue;
            std::size_t n_left = i + 1;
            std::size_t n_right = sorted.size() - n_left;
            if (n_left < static_cast<std::size_t>(min_leaf) ||
                n_right < static_cast<std::size_t>(min_leaf))
                continue;
            double sum_right = sum_total - sum_left;
            double score = sum_left * sum_left / static_cast<double>(n_left) +
                           sum_right * sum_right / static_cast<double>(n_right) - parent_score;
            if (score > best.gain) {
                best.found = true;
                best.feature = f;
                best.threshold = (v + v_next) / 2.0;
                best.gain = score;
            }
        }
    }
    return best;
}

double newton_leaf_value(const std::vector<int>& rows, const std::vector<double>& grad,
                         const std::vector<double>& hess) {
    double g = 0.0, h = 0.0;
    for (int r : rows) {
        g += grad[r];
        h += hess[r];
    }
    if (h < kHessianFloor) return 0.0;
    return g / h;
}

RegressionTree fit_tree(const std::vector<std::vector<double>>& features,
                        const std::vector<double>& grad, const std::vector<double>& hess,
                        const std::vector<int>& rows, int width, const TrainConfig& config) {
    RegressionTree tree;
    tree.nodes.push_back(TreeNode{});

    // Best-first growth: repeatedly split the frontier leaf with the largest
    // least-squares gain until max_leaves is reached.
    auto cmp = [](const BuildNode& a, const BuildNode& b) {
        if (a.split.gain != b.split.gain) return a.split.gain < b.split.gain;
        return a.node_index > b.node_index; // earlier node wins ties
    };
    std::priority_queue<BuildNode, std::vector<BuildNode>, decltype(cmp)> frontier(cmp);

    BuildNode root;
    root.rows = rows;
    root.node_index = 0;
    root.split = best_split(rows, features, grad, width, config.min_samples_leaf);
    std::vector<BuildNode> leaves_todo;
    if (root.split.found) {
        frontier.push(std::move(root));
    } else {
        leaves_todo.push_back(std::move(root));
    }

    int leaf_count = 1;
    while (!frontier.empty() && leaf_count < config.max_leaves) {
        BuildNode node = frontier.top();
        frontier.pop();

        std::vector<int> left_rows, right_rows;
        for (int r : node.rows) {
            if (features[r][node.split.feature] <= node.split.threshold) {
                left_rows.push_back(r);
            } else {
                right_rows.push_back(r);
            }
        }

        TreeNode& parent = tree.nodes[node.node_index];
        parent.feature = node.split.feature;
        parent.threshold = node.split.threshold;
        parent.left = static_cast<int>(tree.nodes.size());
        parent.right = parent.left + 1;
        tree.nodes.push_back(TreeNode{});
        tree.nodes.push_back(TreeNode{});
        ++leaf_count;

        BuildNode left{std::move(left_rows), parent.left, {}};
        BuildNode right{std::move(right_rows), parent.right, {}};
        for (BuildNode* child : {&left, &right}) {
            child->split =
                best_split(child->rows, features, grad, width, config.min_samples_leaf);
            if (child->split.found && leaf_count < config.max_leaves) {
                frontier.push(std::move(*child));
            } else {
                leaves_todo.push_back(std::move(*child));
            }
        }
    }
    while (!frontier.empty()) {
        leaves_todo.push_back(frontier.top());
        frontier.pop();
    }

    for (const auto& leaf : leaves_todo)
        tree.nodes[leaf.node_index].value = newton_leaf_value(leaf.rows, grad, hess);
    return tree;
}

} // namespace

double RegressionTree::evaluate(const std::vector<double>& x) const {
    int node = 0;
    while (!nodes[node].is_leaf())
        node = x[nodes[node].feature] <= nodes[node].threshold ? nodes[node].left
                                                               : nodes[node].right;
    return nodes[node].value;
}

int RegressionTree::leaf_count() const {
    int count = 0;
    for (const auto& n : nodes)
        if (n.is_leaf()) ++count;
    return count;
}

double LambdaMartModel::score(const std::vector<double>& x) const {
    double s = 0.0;
    for (const auto& tree : trees) s += learning_rate * tree.evaluate(x);
    return s;
}

double ndcg_at_k(const std::vector<double>& scores, const std::vector<int>& labels, int k) {
    if (scores.size() != labels.size())
        throw ValidationError("ndcg_at_k: scores and labels differ in length");
    if (k < 1) throw ValidationError("ndcg_at_k: k must be >= 1");
    double ideal = ideal_dcg(labels, k);
    if (ideal <= 0.0) return 0.0;
    auto order = rank_order(scores);
    double dcg = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i)
        dcg += gain(labels[order[i]]) * discount(static_cast<int>(i) + 1, k);
    return dcg / ideal;
}

LambdaMartModel train_lambdamart(const RankingDataset& dataset, const TrainConfig& config) {
    if (config.num_trees < 1 || config.learning_rate <= 0.0 || config.max_leaves < 2 ||
        config.min_samples_leaf < 1 || config.ndcg_k < 1)
        throw ValidationError("train_lambdamart: bad config");

    // Flatten rows; remember each query's row range.
    std::vector<std::vector<double>> features;
    struct QuerySpan {
        int begin = 0;
        int end = 0;
        double ideal = 0.0;
    };
    std::vector<QuerySpan> spans;
    std::vector<int> labels;
    bool any_mixed = false;
    for (const auto& q : dataset.queries) {
        if (q.features.size() != q.labels.size() || q.features.empty())
            throw ValidationError("train_lambdamart: malformed query " + q.query_id);
        for (const auto& x : q.features) {
            if (static_cast<int>(x.size()) != dataset.feature_width)
                throw ValidationError("train_lambdamart: feature width mismatch in query " +
                                      q.query_id);
        }
        bool has_pos = std::find(q.labels.begin(), q.labels.end(), 1) != q.labels.end();
        bool has_neg = std::find(q.labels.begin(), q.labels.end(), 0) != q.labels.end();
        if (!(has_pos && has_neg)) continue; // no pairwise signal
        any_mixed = true;
        QuerySpan span;
        span.begin = static_cast<int>(features.size());
        for (std::size_t i = 0; i < q.features.size(); ++i) {
            features.push_back(q.features[i]);
            labels.push_back(q.labels[i]);
        }
        span.end = static_cast<int>(features.size());
        span.ideal = ideal_dcg(std::vector<int>(labels.begin() + span.begin, labels.end()),
                               config.ndcg_k);
        spans.push_back(span);
    }
    if (!any_mixed) throw ValidationError("train_lambdamart: degenerate dataset");

    const int n_rows = static_cast<int>(features.size());
    std::vector<double> scores(n_rows, 0.0), grad(n_rows), hess(n_rows);
    std::vector<int> all_rows(n_rows);
    std::iota(all_rows.begin(), all_rows.end(), 0);

    LambdaMartModel model;
    model.learning_rate = config.learning_rate;
    model.feature_width = dataset.feature_width;

    for (int t = 0; t < config.num_trees; ++t) {
        std::fill(grad.begin(), grad.end(), 0.0);
        std::fill(hess.begin(), hess.end(), 0.0);

        for (const auto& span : spans) {
            int n = span.end - span.begin;
            std::vector<double> local_scores(scores.begin() + span.begin,
                                             scores.begin() + span.end);
            auto order = rank_order(local_scores);
            std::vector<int> position(n); // 1-based rank of each local row
            for (int i = 0; i < n; ++i) position[order[i]] = i + 1;

            for (int i = 0; i < n; ++i) {
                if (labels[span.begin + i] != 1) continue;
                for (int j = 0; j < n; ++j) {
                    if (labels[span.begin + j] != 0) continue;
                    double delta = std::abs(gain(1) - gain(0)) *
                                   std::abs(discount(position[i], config.ndcg_k) -
                                            discount(position[j], config.ndcg_k)) /
                                   span.ideal;
                    if (delta == 0.0) continue;
                    double rho = 1.0 / (1.0 + std::exp(local_scores[i] - local_scores[j]));
                    double g = delta * rho;
                    double h = delta * rho * (1.0 - rho);
                    grad[span.begin + i] += g;
                    grad[span.begin + j] -= g;
                    hess[span.begin + i] += h;
                    hess[span.begin + j] += h;
                }
            }
        }

        RegressionTree tree =
            fit_tree(features, grad, hess, all_rows, dataset.feature_width, config);
        for (int r = 0; r < n_rows; ++r)
            scores[r] += config.learning_rate * tree.evaluate(features[r]);
        model.trees.push_back(std::move(tree));
    }
    return model;
}

std::vector<double> predict_scores(const LambdaMartModel& model,
                                   const std::vector<std::vector<double>>& features) {
    std::vector<double> out;
    out.reserve(features.size());
    for (const auto& x : features) {
        if (static_cast<int>(x.size()) != model.feature_width)
            throw ValidationError("predict_scores: feature width mismatch");
        out.push_back(model.score(x));
    }
    return out;
}

std::map<std::pair<std::string, std::string>, double> load_external_scores(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open score file: " + path);
    std::map<std::pair<std::string, std::string>, double> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::string where = path + ":" + std::to_string(line_no);
        auto tab1 = line.find('\t');
        auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
        if (tab2 == std::string::npos)
            throw ValidationError(where + ": expected query_id\\tinstance_id\\tscore");
        std::string qid = line.substr(0, tab1);
        std::string iid = line.substr(tab1 + 1, tab2 - tab1 - 1);
        std::string score_text = line.substr(tab2 + 1);
        double score;
        std::size_t consumed = 0;
        try {
            score = std::stod(score_text, &consumed);
        } catch (const std::exception&) {
            throw ValidationError(where + ": non-numeric score \"" + score_text + "\"");
        }
        if (consumed != score_text.size() || !std::isfinite(score))
            throw ValidationError(where + ": non-numeric score \"" + score_text + "\"");
        if (!out.emplace(std::make_pair(qid, iid), score).second)
            throw ValidationError(where + ": duplicate key (" + qid + ", " + iid + ")");
    }
    return out;
}

void save_scores(const std::vector<std::tuple<std::string, std::string, double>>& rows,
                 const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write score file: " + path);
    char buf[64];
    for (const auto& [qid, iid, score] : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g", score);
        out << qid << '\t' << iid << '\t' << buf << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

void save_model(const LambdaMartModel& model, const std::string& path) {
    json trees = json::array();
    for (const auto& tree : model.trees) {
        json nodes = json::array();
        for (const auto& n : tree.nodes) {
            nodes.push_back(json{{"f", n.feature},
                                 {"t", n.threshold},
                                 {"l", n.left},
                                 {"r", n.right},
                                 {"v", n.value}});
        }
        trees.push_back(json{{"nodes", std::move(nodes)}});
    }
    json j{{"version", kModelVersion},
           {"feature_width", model.feature_width},
           {"learning_rate", model.learning_rate},
           {"trees", std::move(trees)}};
    std::ofstream out(path);
    if (!out) throw IoError("cannot write model file: " + path);
    out << j.dump() << '\n';
}

LambdaMartModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": malformed model file: " + std::string(e.what()));
    }
    if (!j.contains("version") || !j["version"].is_number_integer() ||
        j["version"].get<int>() != kModelVersion)
        throw ValidationError(path + ": unsupported model version");
    LambdaMartModel model;
    model.feature_width = j.at("feature_width").get<int>();
    model.learning_rate = j.at("learning_rate").get<double>();
    for (const auto& tj : j.at("trees")) {
        RegressionTree tree;
        for (const auto& nj : tj.at("nodes")) {
            TreeNode n;
            n.feature = nj.at("f").get<int>();
            n.threshold = nj.at("t").get<double>();
            n.left = nj.at("l").get<int>();
            n.right = nj.at("r").get<int>();
            n.value = nj.at("v").get<double>();
            tree.nodes.push_back(n);
        }
        if (tree.nodes.empty()) throw ValidationError(path + ": tree with no nodes");
        model.trees.push_back(std::move(tree));
    }
    return model;
}

} // namespace singpair
