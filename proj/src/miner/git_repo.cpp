#include "defectlab/miner/git_repo.hpp"

#include <unistd.h>

#include <cstdlib>
#include <fstream>

#include "defectlab/common/errors.hpp"
#include "defectlab/common/subprocess.hpp"

namespace fs = std::filesystem;

namespace defectlab::miner {

namespace {

std::string temp_file_path() {
    static int counter = 0;
    return (fs::temp_directory_path() /
            ("defectlab-git-" + std::to_string(::getpid()) + "-" + std::to_string(counter++)))
        .string();
}

}  // namespace

GitRepo::GitRepo(fs::path root) : root_(std::move(root)) {
    if (!fs::exists(root_)) throw DataError("repository path does not exist: " + root_.string());
}

std::string GitRepo::run_git(const std::vector<std::string>& args,
                             const std::string& stdin_file) const {
    std::vector<std::string> argv = {"git", "-C", root_.string()};
    argv.insert(argv.end(), args.begin(), args.end());
    CommandResult result = run_command(argv, stdin_file);
    if (result.exit_code != 0) {
        std::string cmd = "git";
        for (const auto& a : args) cmd += " " + a;
        throw GitCommandError("command failed (" + std::to_string(result.exit_code) + "): " + cmd);
    }
    return std::move(result.output);
}

std::vector<CommitInfo> GitRepo::first_parent_history() const {
    std::string out;
    try {
        // -z separates records with NUL, which no commit message can contain
        out = run_git({"log", "-z", "--first-parent", "--reverse",
                       "--format=%H%x01%P%x01%ct%x01%B"});
    } catch (const GitCommandError&) {
        throw EmptyRepository("no commits on the default branch of " + root_.string());
    }
    std::vector<CommitInfo> commits;
    std::size_t pos = 0;
    while (pos < out.size()) {
        std::size_t rec_end = out.find('\0', pos);
        if (rec_end == std::string::npos) rec_end = out.size();
        std::string record = out.substr(pos, rec_end - pos);
        pos = rec_end + 1;
        while (!record.empty() && (record.front() == '\n' || record.front() == '\r'))
            record.erase(record.begin());
        if (record.empty()) continue;

        const std::size_t f1 = record.find('\x01');
        const std::size_t f2 = record.find('\x01', f1 + 1);
        const std::size_t f3 = record.find('\x01', f2 + 1);
        if (f1 == std::string::npos || f2 == std::string::npos || f3 == std::string::npos)
            continue;
        CommitInfo c;
        c.sha = record.substr(0, f1);
        const std::string parents = record.substr(f1 + 1, f2 - f1 - 1);
        const std::size_t space = parents.find(' ');
        c.first_parent = space == std::string::npos ? parents : parents.substr(0, space);
        c.commit_time = std::stoll(record.substr(f2 + 1, f3 - f2 - 1));
        c.message = record.substr(f3 + 1);
        commits.push_back(std::move(c));
    }
    if (commits.empty()) throw EmptyRepository("no commits in " + root_.string());
    return commits;
}

std::string GitRepo::diff_against_first_parent(const CommitInfo& commit) const {
    if (commit.first_parent.empty())
        throw GitCommandError("root commit has no parent: " + commit.sha);
    return run_git({"diff", "--no-color", "-M", "-U0", commit.first_parent, commit.sha});
}

std::vector<std::pair<std::string, std::string>> GitRepo::java_sources_at(
    const std::string& sha) const {
    const std::string listing = run_git({"ls-tree", "-r", "-z", sha});
    struct Entry {
        std::string blob;
        std::string path;
    };
    std::vector<Entry> entries;
    std::size_t pos = 0;
    while (pos < listing.size()) {
        const std::size_t end = listing.find('\0', pos);
        if (end == std::string::npos) break;
        const std::string line = listing.substr(pos, end - pos);
        pos = end + 1;
        // <mode> SP <type> SP <sha> TAB <path>
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos) continue;
        const std::string meta = line.substr(0, tab);
        const std::string path = line.substr(tab + 1);
        if (path.size() < 5 || path.substr(path.size() - 5) != ".java") continue;
        const std::size_t s1 = meta.find(' ');
        const std::size_t s2 = meta.find(' ', s1 + 1);
        if (s1 == std::string::npos || s2 == std::string::npos) continue;
        if (meta.substr(s1 + 1, s2 - s1 - 1) != "blob") continue;
        entries.push_back({meta.substr(s2 + 1), path});
    }

    std::vector<std::pair<std::string, std::string>> out;
    if (entries.empty()) return out;

    const std::string req_path = temp_file_path();
    {
        std::ofstream req(req_path, std::ios::binary);
        for (const Entry& e : entries) req << e.blob << '\n';
    }
    std::string batch;
    try {
        batch = run_git({"cat-file", "--batch"}, req_path);
    } catch (...) {
        fs::remove(req_path);
        throw;
    }
    fs::remove(req_path);

    std::size_t bpos = 0;
    for (const Entry& e : entries) {
        const std::size_t header_end = batch.find('\n', bpos);
        if (header_end == std::string::npos) break;
        const std::string header = batch.substr(bpos, header_end - bpos);
        const std::size_t last_space = header.rfind(' ');
        if (last_space == std::string::npos)
            throw GitCommandError("unexpected cat-file output: " + header);
        const std::size_t size = std::stoull(header.substr(last_space + 1));
        const std::size_t content_begin = header_end + 1;
        out.emplace_back(e.path, batch.substr(content_begin, size));
        bpos = content_begin + size + 1;  // skip trailing LF
    }
    return out;
}

}  // namespace defectlab::miner
