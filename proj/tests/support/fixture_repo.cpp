#include "fixture_repo.hpp"

#include <stdexcept>

#include "defectlab/common/fsio.hpp"
#include "defectlab/common/subprocess.hpp"
#include "defectlab/common/text.hpp"

namespace fs = std::filesystem;

namespace defectlab::testsupport {

namespace {

void git(const fs::path& repo, const std::vector<std::string>& args,
         const std::string& date = "") {
    std::vector<std::string> argv;
    if (!date.empty()) {
        argv = {"env", "GIT_AUTHOR_DATE=" + date, "GIT_COMMITTER_DATE=" + date};
    }
    argv.insert(argv.end(), {"git", "-C", repo.string(), "-c", "user.name=Fixture Bot", "-c",
                             "user.email=fixture@example.com", "-c", "commit.gpgsign=false"});
    argv.insert(argv.end(), args.begin(), args.end());
    const auto result = defectlab::run_command(argv);
    if (result.exit_code != 0)
        throw std::runtime_error("fixture git command failed: " + args.front());
}

void put(const fs::path& repo, const std::string& rel, const std::string& content) {
    defectlab::atomic_write(repo / rel, content);
}

void commit(const fs::path& repo, const std::string& subject, const std::string& date) {
    git(repo, {"add", "-A"});
    git(repo, {"commit", "-q", "-m", subject}, date);
}

// ---- file versions ------------------------------------------------------

const char* kAccountV1 = R"(public class Account { // account aggregate
    public String owner;
    public long balance;
    public int currency;
    private boolean frozen;

    /* Creates an empty account. */
    public Account(String owner) {
        this.owner = owner;
        this.balance = 0;
    }
    // Adds funds when positive.
    public void deposit(long amount) {
        balance = balance + amount; // no overflow guard
    }
    // Withdrawals require funds.
    public boolean withdraw(long amount) {
        if (frozen || amount > balance) {
            return false;
        }
        balance = balance - amount;
        return true;
    }
    /* Freeze stops withdrawals. */
    public void freeze() {
        frozen = true;
    }
    // Reports the balance.
    // Kept tiny on purpose.
    public long total() { return balance; }
}
)";

// c04: touches only lines 28-29 so the deposit region stays put.
const char* kAccountV2 = R"(public class Account { // account aggregate
    public String owner;
    public long balance;
    public int currency;
    private boolean frozen;

    /* Creates an empty account. */
    public Account(String owner) {
        this.owner = owner;
        this.balance = 0;
    }
    // Adds funds when positive.
    public void deposit(long amount) {
        balance = balance + amount; // no overflow guard
    }
    // Withdrawals require funds.
    public boolean withdraw(long amount) {
        if (frozen || amount > balance) {
            return false;
        }
        balance = balance - amount;
        return true;
    }
    /* Freeze stops withdrawals. */
    public void freeze() {
        frozen = true;
    }
    // Currency code defaults to local.
    // Balance figures stay integral.
    public long total() { return balance; }
}
)";

// c08 (fix): replaces lines 12-14.
const char* kAccountV3 = R"(public class Account { // account aggregate
    public String owner;
    public long balance;
    public int currency;
    private boolean frozen;

    /* Creates an empty account. */
    public Account(String owner) {
        this.owner = owner;
        this.balance = 0;
    }
    // Adds funds when validated.
    public void deposit(long amount) { // validated
        balance = balance + Math.max(amount, 0);
    }
    // Withdrawals require funds.
    public boolean withdraw(long amount) {
        if (frozen || amount > balance) {
            return false;
        }
        balance = balance - amount;
        return true;
    }
    /* Freeze stops withdrawals. */
    public void freeze() {
        frozen = true;
    }
    // Currency code defaults to local.
    // Balance figures stay integral.
    public long total() { return balance; }
}
)";

const char* kLedgerV1 = R"(public class Ledger extends Account { // running ledger
    public int entries;
    private long interest;
    public Ledger(String owner) {
        super(owner);
    }
    public void accrue(long rate) {
        interest = interest + balance * rate / 100;
        entries = entries + 1;
    }
    public long interestDue() {
        return interest;
    }
}
)";

// c05 (fix): replaces lines 8-9.
const char* kLedgerV2 = R"(public class Ledger extends Account { // running ledger
    public int entries;
    private long interest;
    public Ledger(String owner) {
        super(owner);
    }
    public void accrue(long rate) {
        interest = interest + (balance * rate + 50) / 100;
        entries = entries + 1; // rounding fixed
    }
    public long interestDue() {
        return interest;
    }
}
)";

// c13: appends a note before the closing brace.
const char* kLedgerV3 = R"(public class Ledger extends Account { // running ledger
    public int entries;
    private long interest;
    public Ledger(String owner) {
        super(owner);
    }
    public void accrue(long rate) {
        interest = interest + (balance * rate + 50) / 100;
        entries = entries + 1; // rounding fixed
    }
    public long interestDue() {
        return interest;
    }
    // rebalancing hooks pending
}
)";

const char* kParserV1 = R"(public class Parser { // line parser
    public int errors;
    private String source;
    public Parser(String source) {
        this.source = source;
    }
    public int countTokens() {
        int n = 0;
        for (int i = 0; i < source.length(); i++) {
            if (source.charAt(i) == ' ') {
                n = n + 1;
            }
        }
        return n;
    }
}
)";

// c03: touches line 11 only.
const char* kParserV2 = R"(public class Parser { // line parser
    public int errors;
    private String source;
    public Parser(String source) {
        this.source = source;
    }
    public int countTokens() {
        int n = 0;
        for (int i = 0; i < source.length(); i++) {
            if (source.charAt(i) == ' ') {
                n = n + 1; // token boundary
            }
        }
        return n;
    }
}
)";

// c09: touches line 2 only.
const char* kParserV3 = R"(public class Parser { // line parser
    public int errors; // recoverable
    private String source;
    public Parser(String source) {
        this.source = source;
    }
    public int countTokens() {
        int n = 0;
        for (int i = 0; i < source.length(); i++) {
            if (source.charAt(i) == ' ') {
                n = n + 1; // token boundary
            }
        }
        return n;
    }
}
)";

// c14 (fix): replaces lines 4-5.
const char* kParserV4 = R"(public class Parser { // line parser
    public int errors; // recoverable
    private String source;
    public Parser(String source) { // normalized
        this.source = source.trim();
    }
    public int countTokens() {
        int n = 0;
        for (int i = 0; i < source.length(); i++) {
            if (source.charAt(i) == ' ') {
                n = n + 1; // token boundary
            }
        }
        return n;
    }
}
)";

const char* kCacheV1 = R"(public class Cache { // bounded cache
    public int capacity;
    private int size;
    public Cache(int capacity) {
        this.capacity = capacity;
    }
    public boolean admit() {
        size = size + 1;
        return size <= capacity;
    }
}
)";

// c06: appends a warm() method.
const char* kCacheV2 = R"(public class Cache { // bounded cache
    public int capacity;
    private int size;
    public Cache(int capacity) {
        this.capacity = capacity;
    }
    public boolean admit() {
        size = size + 1;
        return size <= capacity;
    }
    public void warm() {
        size = 0;
    }
}
)";

// c07 (fix): replaces line 5.
const char* kCacheV3 = R"(public class Cache { // bounded cache
    public int capacity;
    private int size;
    public Cache(int capacity) {
        this.capacity = Math.max(1, capacity);
    }
    public boolean admit() {
        size = size + 1;
        return size <= capacity;
    }
    public void warm() {
        size = 0;
    }
}
)";

// c10 (fix): replaces lines 8-9.
const char* kCacheV4 = R"(public class Cache { // bounded cache
    public int capacity;
    private int size;
    public Cache(int capacity) {
        this.capacity = Math.max(1, capacity);
    }
    public boolean admit() {
        size = size + 1; // eviction first
        return size <= Math.max(capacity, 1);
    }
    public void warm() {
        size = 0;
    }
}
)";

const char* kReportV1 = R"(public class Report { // summary report
    public String title;
    public Report(String title) {
        this.title = title;
    }
    public String footer() {
        return "end of " + title;
    }
}
)";

// c02: appends header().
const char* kReportV2 = R"(public class Report { // summary report
    public String title;
    public Report(String title) {
        this.title = title;
    }
    public String footer() {
        return "end of " + title;
    }
    public String header() {
        return "== " + title;
    }
}
)";

// c11: appends csvRow().
const char* kReportV3 = R"(public class Report { // summary report
    public String title;
    public Report(String title) {
        this.title = title;
    }
    public String footer() {
        return "end of " + title;
    }
    public String header() {
        return "== " + title;
    }
    public String csvRow() {
        return title + ",1";
    }
}
)";

// c12 (fix): replaces line 7.
const char* kReportV4 = R"(public class Report { // summary report
    public String title;
    public Report(String title) {
        this.title = title;
    }
    public String footer() {
        return "end of " + title.trim();
    }
    public String header() {
        return "== " + title;
    }
    public String csvRow() {
        return title + ",1";
    }
}
)";

const char* kTempV1 = R"(public class Temp { // scratch
    public int x;
}
)";

const char* kTempV2 = R"(public class Temp { // scratch
    public int x; // unused
}
)";

const char* kIssues =
    "{\"id\": 12, \"created\": \"2020-05-20T00:00:00Z\"}\n"
    "{\"id\": 21, \"created\": \"2020-07-10T00:00:00Z\"}\n"
    "{\"id\": 99, \"created\": \"2019-12-01T00:00:00Z\"}\n";

}  // namespace

FixtureRepo build_fixture_repo(const fs::path& base_dir) {
    const fs::path repo = base_dir / "repo";
    fs::remove_all(repo);
    fs::create_directories(repo);
    git(repo, {"init", "-q", "-b", "main"});

    put(repo, "Account.java", kAccountV1);
    put(repo, "Ledger.java", kLedgerV1);
    put(repo, "Parser.java", kParserV1);
    put(repo, "Cache.java", kCacheV1);
    put(repo, "Report.java", kReportV1);
    commit(repo, "Initial import of accounting core", "2020-01-15T10:00:00Z");

    put(repo, "Report.java", kReportV2);
    commit(repo, "Add report header rendering", "2020-02-05T10:00:00Z");

    put(repo, "Parser.java", kParserV2);
    commit(repo, "Tighten parser validation", "2020-02-25T10:00:00Z");

    put(repo, "Account.java", kAccountV2);
    commit(repo, "Track account currency metadata", "2020-03-15T10:00:00Z");

    put(repo, "Ledger.java", kLedgerV2);
    commit(repo, "Fix rounding bug in interest calculation", "2020-04-15T10:00:00Z");

    put(repo, "Cache.java", kCacheV2);
    commit(repo, "Cache warmup on startup", "2020-05-15T10:00:00Z");

    put(repo, "Cache.java", kCacheV3);
    commit(repo, "fix: reject malformed cache keys (#12)", "2020-06-20T10:00:00Z");

    put(repo, "Account.java", kAccountV3);
    commit(repo, "Fixes #21: validate deposit amounts before applying", "2020-07-20T10:00:00Z");

    put(repo, "Parser.java", kParserV3);
    commit(repo, "Parser error recovery improvements", "2020-08-15T10:00:00Z");

    put(repo, "Cache.java", kCacheV4);
    commit(repo, "Hotfix: defect in cache eviction order", "2020-09-15T10:00:00Z");

    put(repo, "Report.java", kReportV3);
    commit(repo, "Add CSV export to report", "2020-10-15T10:00:00Z");

    put(repo, "Report.java", kReportV4);
    commit(repo, "Fix bug in report footer", "2020-11-15T10:00:00Z");

    put(repo, "Ledger.java", kLedgerV3);
    put(repo, "Temp.java", kTempV1);
    commit(repo, "Ledger rebalancing groundwork", "2021-01-20T10:00:00Z");

    put(repo, "Parser.java", kParserV4);
    put(repo, "Temp.java", kTempV2);
    commit(repo, "Fix parser whitespace fault", "2021-02-15T10:00:00Z");

    put(repo, "issues.ndjson", kIssues);  // untracked on purpose: ingest input, not history

    FixtureRepo out;
    out.root = repo;
    const auto log = run_command({"git", "-C", repo.string(), "log", "--format=%H%x01%s"});
    for (const std::string& line : split_lines(log.output)) {
        const auto sep = line.find('\x01');
        if (sep == std::string::npos) continue;
        out.sha_by_subject[line.substr(sep + 1)] = line.substr(0, sep);
    }
    return out;
}

}  // namespace defectlab::testsupport
