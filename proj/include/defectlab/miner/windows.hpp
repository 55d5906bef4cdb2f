#pragma once

#include <cstdint>
#include <vector>

#include "defectlab/miner/git_repo.hpp"

namespace defectlab::miner {

struct ReleaseWindow {
    int index = 0;
    std::string snapshot_sha;  // latest first-parent commit strictly before start;
                               // the first window snapshots the first commit
    std::int64_t start = 0;    // inclusive, UTC epoch seconds
    std::int64_t end = 0;      // exclusive
};

/// Calendar-month addition in UTC, clamping invalid days to the month end.
std::int64_t add_months_utc(std::int64_t instant, int months);

/// ISO 8601 UTC, e.g. 2020-07-01T00:00:00Z.
std::string format_instant_utc(std::int64_t instant);

/// Index of the half-open window [anchor + k*interval, anchor + (k+1)*interval)
/// containing `instant`, clamped to 0 for instants before the anchor.
int window_index(std::int64_t anchor, int interval_months, std::int64_t instant);

/// Tiles the history into interval-month windows anchored at the first commit
/// instant. The trailing window, whose occupied span is shorter than the
/// interval, is kept only when at least one fix-commit assignment instant
/// falls into it (unless it is the only window). Throws EmptyRepository.
std::vector<ReleaseWindow> enumerate_release_windows(
    const std::vector<CommitInfo>& history, int interval_months,
    const std::vector<std::int64_t>& fix_assignment_instants);

}  // namespace defectlab::miner
