#include "benchmark.hpp"

#include <algorithm>
#include <cmath>

#include "defectlab/common/rng.hpp"

namespace defectlab::testsupport {

using defectlab::data::Dataset;
using defectlab::data::DatasetRow;

Dataset synthetic_project(int project_index, std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0xB000 + static_cast<std::uint64_t>(project_index)));
    const int n = 260 + 20 * project_index;

    Dataset ds;
    ds.feature_names = metrics::metric_names();
    for (int i = 0; i < n; ++i) {
        const double dit = static_cast<double>(rng.below(4));
        const double noc = static_cast<double>(rng.below(4));
        const double lcom5 = 1.0 + static_cast<double>(rng.below(6));
        const double npa = static_cast<double>(rng.below(5));
        const double npm = 1.0 + static_cast<double>(rng.below(9));
        const double nle = static_cast<double>(rng.below(4));
        const double cbo = static_cast<double>(rng.below(8));
        const double cboi = static_cast<double>(rng.below(8));
        const double cd = std::round(rng.uniform() * 60.0) / 100.0;
        const double wmc = npm + static_cast<double>(rng.below(12));
        const double rfc = npm + cbo + static_cast<double>(rng.below(6));
        // Size scales with methods and complexity but carries no defect signal.
        const double loc =
            std::floor(8.0 * npm + 4.0 * wmc + 6.0 * static_cast<double>(rng.below(25)));

        // Balanced interaction: neither metric is informative on its own, so
        // a per-class Gaussian cannot separate what axis-aligned splits can.
        bool defective = (noc >= 2.0) != (dit >= 2.0);
        if (rng.uniform() < 0.10) defective = !defective;  // label noise

        DatasetRow row;
        row.project = "bench" + std::to_string(project_index);
        row.release = 0;
        row.fqn = "bench.C" + std::to_string(i);
        row.features = {loc, wmc, dit, noc, cbo, rfc, lcom5, npa, npm, nle, cboi, cd};
        row.defective = defective;
        ds.rows.push_back(std::move(row));
    }
    return ds;
}

}  // namespace defectlab::testsupport
