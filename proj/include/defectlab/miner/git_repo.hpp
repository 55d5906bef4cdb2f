#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace defectlab::miner {

struct CommitInfo {
    std::string sha;
    std::string first_parent;  // empty for root commits
    std::int64_t commit_time = 0;  // committer timestamp, UTC epoch seconds
    std::string message;
};

/// Read-only access to a local clone through the git binary. The contract is
/// the commit graph, timestamps, messages, unified diffs and tree contents.
class GitRepo {
public:
    explicit GitRepo(std::filesystem::path root);

    /// First-parent history of HEAD, oldest first. Throws EmptyRepository.
    std::vector<CommitInfo> first_parent_history() const;

    /// Unified zero-context diff of `commit` against its first parent, with
    /// rename detection. Throws GitCommandError (callers record and skip).
    std::string diff_against_first_parent(const CommitInfo& commit) const;

    /// All .java blobs in the tree at `sha` as (repo-relative path, content).
    std::vector<std::pair<std::string, std::string>> java_sources_at(
        const std::string& sha) const;

    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path root_;

    std::string run_git(const std::vector<std::string>& args,
                        const std::string& stdin_file = "") const;
};

}  // namespace defectlab::miner
