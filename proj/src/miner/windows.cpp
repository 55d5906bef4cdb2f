#include "defectlab/miner/windows.hpp"

#include <algorithm>
#include <chrono>

#include "defectlab/common/errors.hpp"

namespace defectlab::miner {

std::int64_t add_months_utc(std::int64_t instant, int months) {
    using namespace std::chrono;
    const sys_seconds t{seconds{instant}};
    const auto day = floor<days>(t);
    const auto time_of_day = t - day;
    year_month_day ymd{day};
    ymd += std::chrono::months{months};
    if (!ymd.ok()) ymd = ymd.year() / ymd.month() / last;  // clamp to month end
    return (sys_days{ymd} + time_of_day).time_since_epoch().count();
}

std::string format_instant_utc(std::int64_t instant) {
    using namespace std::chrono;
    const sys_seconds t{seconds{instant}};
    const auto day = floor<days>(t);
    const year_month_day ymd{day};
    const hh_mm_ss tod{t - day};
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02ld:%02ld:%02ldZ",
                  static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()), static_cast<long>(tod.hours().count()),
                  static_cast<long>(tod.minutes().count()),
                  static_cast<long>(tod.seconds().count()));
    return buf;
}

int window_index(std::int64_t anchor, int interval_months, std::int64_t instant) {
    if (instant < anchor) return 0;
    int k = 0;
    while (add_months_utc(anchor, (k + 1) * interval_months) <= instant) ++k;
    return k;
}

std::vector<ReleaseWindow> enumerate_release_windows(
    const std::vector<CommitInfo>& history, int interval_months,
    const std::vector<std::int64_t>& fix_assignment_instants) {
    if (history.empty()) throw EmptyRepository("no commits to window");
    const std::int64_t anchor = history.front().commit_time;
    std::int64_t last = anchor;
    for (const CommitInfo& c : history) last = std::max(last, c.commit_time);

    int count = window_index(anchor, interval_months, last) + 1;

    if (count > 1) {
        const std::int64_t trailing_start = add_months_utc(anchor, (count - 1) * interval_months);
        const bool trailing_has_fix =
            std::any_of(fix_assignment_instants.begin(), fix_assignment_instants.end(),
                        [&](std::int64_t t) { return t >= trailing_start; });
        if (!trailing_has_fix) --count;
    }

    std::vector<ReleaseWindow> windows;
    for (int k = 0; k < count; ++k) {
        ReleaseWindow w;
        w.index = k;
        w.start = add_months_utc(anchor, k * interval_months);
        w.end = add_months_utc(anchor, (k + 1) * interval_months);
        if (k == 0) {
            w.snapshot_sha = history.front().sha;
        } else {
            for (const CommitInfo& c : history)
                if (c.commit_time < w.start) w.snapshot_sha = c.sha;
            if (w.snapshot_sha.empty()) w.snapshot_sha = history.front().sha;
        }
        windows.push_back(std::move(w));
    }
    return windows;
}

}  // namespace defectlab::miner
