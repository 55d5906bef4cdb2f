#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "defectlab/common/diagnostics.hpp"

namespace defectlab::learn {

using FeatureMatrix = std::vector<std::vector<double>>;
using Labels = std::vector<int>;  // 0 = not defective, 1 = defective

struct ModelSpec {
    enum class Kind { NB, DT, RF };
    Kind kind = Kind::DT;
    int max_depth = -1;         // DT/RF; -1 = unbounded
    int min_samples_leaf = 1;   // DT/RF
    int trees = 100;            // RF
    bool bootstrap = true;      // RF
    int features_per_split = 0; // RF; 0 = ceil(sqrt(p))
    std::uint64_t seed = 0;

    static ModelSpec nb(std::uint64_t seed = 0);
    static ModelSpec dt(std::uint64_t seed = 0);
    static ModelSpec rf(std::uint64_t seed = 0, int trees = 100);
    static ModelSpec parse(const std::string& name, std::uint64_t seed);
    std::string name() const;
};

class Classifier {
public:
    virtual ~Classifier() = default;
    /// Probability of the defective class per row. Hard label = p >= 0.5.
    virtual std::vector<double> predict_proba(const FeatureMatrix& rows) const = 0;
};

std::unique_ptr<Classifier> fit(const ModelSpec& spec, const FeatureMatrix& X, const Labels& y,
                                Diagnostics* diags = nullptr);

/// Metric suites compared in the evaluation. Names: LOC, CK, OTHER, CK+OTHER.
std::vector<std::string> metric_suite(const std::string& name);

}  // namespace defectlab::learn
