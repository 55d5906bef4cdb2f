#include "defectlab/learn/model.hpp"

#include <algorithm>

#include "defectlab/common/errors.hpp"
#include "defectlab/learn/decision_tree.hpp"
#include "defectlab/learn/naive_bayes.hpp"
#include "defectlab/learn/random_forest.hpp"

namespace defectlab::learn {

ModelSpec ModelSpec::nb(std::uint64_t seed) {
    ModelSpec s;
    s.kind = Kind::NB;
    s.seed = seed;
    return s;
}

ModelSpec ModelSpec::dt(std::uint64_t seed) {
    ModelSpec s;
    s.kind = Kind::DT;
    s.seed = seed;
    return s;
}

ModelSpec ModelSpec::rf(std::uint64_t seed, int trees) {
    ModelSpec s;
    s.kind = Kind::RF;
    s.seed = seed;
    s.trees = trees;
    return s;
}

ModelSpec ModelSpec::parse(const std::string& name, std::uint64_t seed) {
    if (name == "NB" || name == "nb") return nb(seed);
    if (name == "DT" || name == "dt") return dt(seed);
    if (name == "RF" || name == "rf") return rf(seed);
    throw ConfigError("unknown model: " + name + " (expected NB, DT or RF)");
}

std::string ModelSpec::name() const {
    switch (kind) {
        case Kind::NB: return "NB";
        case Kind::DT: return "DT";
        case Kind::RF: return "RF";
    }
    return "?";
}

std::unique_ptr<Classifier> fit(const ModelSpec& spec, const FeatureMatrix& X, const Labels& y,
                                Diagnostics* diags) {
    switch (spec.kind) {
        case ModelSpec::Kind::NB:
            return std::make_unique<GaussianNaiveBayes>(X, y, diags);
        case ModelSpec::Kind::DT: {
            DecisionTree::Params params;
            params.max_depth = spec.max_depth;
            params.min_samples_leaf = spec.min_samples_leaf;
            params.features_per_split = 0;
            return std::make_unique<DecisionTree>(X, y, params, nullptr);
        }
        case ModelSpec::Kind::RF:
            return std::make_unique<RandomForest>(X, y, spec);
    }
    throw ConfigError("unhandled model kind");
}

std::vector<std::string> metric_suite(const std::string& name) {
    if (name == "LOC") return {"LOC"};
    if (name == "CK") return {"WMC", "DIT", "NOC", "RFC", "LCOM5", "CBO"};
    if (name == "OTHER") return {"NPA", "NPM", "NLE", "CBOI", "CD"};
    if (name == "CK+OTHER") {
        std::vector<std::string> out = metric_suite("CK");
        const auto other = metric_suite("OTHER");
        out.insert(out.end(), other.begin(), other.end());
        return out;
    }
    throw ConfigError("unknown metric suite: " + name + " (expected LOC, CK, OTHER, CK+OTHER)");
}

}  // namespace defectlab::learn
