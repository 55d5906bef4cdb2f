#include "doctest.h"

#include <algorithm>

#include "defectlab/common/rng.hpp"
#include "defectlab/javamodel/analysis.hpp"
#include "defectlab/javamodel/model.hpp"
#include "defectlab/javamodel/parser.hpp"
#include "defectlab/metrics/metrics.hpp"

using namespace defectlab;
using namespace defectlab::javamodel;

namespace {

// Modern-construct soup: generics, lambdas, switch expressions, text blocks,
// try-with-resources, wildcard bounds, method references, varargs.
const char* kTorture = R"(package torture;

import java.util.List;
import java.util.Map;
import java.util.function.Supplier;

public class Kitchen<T extends Comparable<? super T>> {
    private final Map<String, List<? extends T>> shelves = null;
    private int burners = 4;
    public static final String MOTD = """
        multi-line
        text block with "quotes" and // fake comment
        """;

    public Kitchen(Supplier<T> starter) {
        this.burners = starter != null ? 4 : 2;
    }

    public <R> R cook(java.util.function.Function<T, R> recipe, T... extra) {
        var latch = new Object() {
            int count = 0;
        };
        Runnable step = () -> {
            if (latch.count > 0 && burners > 1) {
                latch.count--;
            }
        };
        step.run();
        int result = switch (burners) {
            case 0 -> 0;
            case 1, 2 -> 1;
            default -> {
                int acc = 0;
                for (int i = 0; i < burners; i++) {
                    acc += i;
                }
                yield acc;
            }
        };
        try (java.io.StringReader reader = new java.io.StringReader(MOTD)) {
            while (reader.read() >= 0 || result > 10) {
                result--;
            }
        } catch (java.io.IOException | RuntimeException e) {
            result = -1;
        } finally {
            step.run();
        }
        label:
        for (Object shelf : shelves.values()) {
            if (shelf == null) {
                continue label;
            }
            break;
        }
        return recipe != null ? recipe.apply(null) : null;
    }

    interface Gauge {
        default int read() {
            return 0;
        }
        private static int zero() {
            return 0;
        }
    }

    enum Dial implements Gauge {
        LOW(1) {
            @Override
            public int read() {
                return -1;
            }
        },
        HIGH(9);

        private final int setting;

        Dial(int setting) {
            this.setting = setting;
        }
    }
}
)";

}  // namespace

TEST_CASE("torture file parses into the expected entity set") {
    const auto f = parse_compilation_unit(kTorture, "Kitchen.java");
    std::vector<std::string> fqns;
    for (const auto& e : f.entities) fqns.push_back(e.fqn);

    // Kitchen, the Object anon inside cook, Gauge, Dial, Dial's LOW body
    REQUIRE(fqns.size() == 5);
    CHECK(fqns[0] == "torture.Kitchen");
    CHECK(fqns[1] == "torture.Kitchen$anon1");
    CHECK(fqns[2] == "torture.Kitchen.Gauge");
    CHECK(fqns[3] == "torture.Kitchen.Dial");
    CHECK(fqns[4] == "torture.Kitchen.Dial$anon1");

    const ClassEntity& kitchen = f.entities[0];
    CHECK(kitchen.kind == TypeKind::Class);
    CHECK(kitchen.fields.size() == 3);   // shelves, burners, MOTD
    CHECK(kitchen.methods.size() == 2);  // ctor + cook
    CHECK(kitchen.methods[0].is_constructor);
    CHECK(f.entities[2].kind == TypeKind::Interface);
    CHECK(f.entities[3].kind == TypeKind::Enum);

    // spans nest properly
    for (const auto& e : f.entities) {
        CHECK(e.start_line <= e.end_line);
        if (e.parent >= 0) {
            const auto& p = f.entities[static_cast<std::size_t>(e.parent)];
            CHECK(p.start_line <= e.start_line);
            CHECK(e.end_line <= p.end_line);
        }
    }

    // metrics computation stays total over the whole soup
    std::vector<ParsedFile> files;
    files.push_back(parse_compilation_unit(kTorture, "Kitchen.java"));
    auto model = build_project_model(std::move(files));
    const auto all = metrics::compute_all(model);
    CHECK(all.size() == 3);  // Kitchen, Gauge, Dial
    for (const auto& v : all) {
        CHECK(v.loc >= 1);
        CHECK(v.wmc >= static_cast<long>(0));
        CHECK(v.cd >= 0.0);
        CHECK(v.cd <= 1.0);
    }

    // the switch expression, lambda and loops all count somewhere
    const auto kitchen_v = *std::find_if(all.begin(), all.end(), [](const auto& v) {
        return v.fqn == "torture.Kitchen";
    });
    CHECK(kitchen_v.wmc >= 10);
    CHECK(kitchen_v.nle >= 2);
}

TEST_CASE("parsing truncated and mutated sources never crashes or hangs") {
    const std::string base = kTorture;

    // every prefix boundary near interesting offsets
    for (std::size_t cut = 0; cut <= base.size(); cut += 37) {
        const auto f = parse_compilation_unit(base.substr(0, cut), "Cut.java");
        for (const auto& e : f.entities) CHECK(e.start_line <= e.end_line + 1);
    }

    // random byte mutations
    Rng rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        std::string mutated = base;
        const int edits = 1 + static_cast<int>(rng.below(8));
        for (int k = 0; k < edits; ++k) {
            const std::size_t pos = static_cast<std::size_t>(rng.below(mutated.size()));
            const char replacement = "{}()<>;.,\"'@/*"[rng.below(14)];
            mutated[pos] = replacement;
        }
        const auto f = parse_compilation_unit(mutated, "Mutant.java");
        (void)f;  // reaching here without crash/hang is the assertion
    }
    CHECK(true);
}

TEST_CASE("parsing scales to thousands of classes") {
    std::string big = "package bulk;\n";
    for (int i = 0; i < 2000; ++i) {
        big += "class C" + std::to_string(i) + " {\n";
        big += "  int f" + std::to_string(i) + ";\n";
        big += "  void m() { if (f" + std::to_string(i) + " > 0) { f" + std::to_string(i) +
               "--; } }\n";
        big += "}\n";
    }
    std::vector<ParsedFile> files;
    files.push_back(parse_compilation_unit(big, "Bulk.java"));
    auto model = build_project_model(std::move(files));
    const auto all = metrics::compute_all(model);
    CHECK(all.size() == 2000);
    for (const auto& v : all) {
        CHECK(v.loc == 4);
        CHECK(v.wmc == 2);
        CHECK(v.lcom5 == 1);
    }
}
