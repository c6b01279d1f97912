#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>
#include <string>

#include "iwlog/checks.hpp"

using namespace iwlog;

int main(int argc, char** argv) {
    std::set<int> expect_red;
    u64 seed = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--expect-red") && i + 1 < argc) expect_red.insert(std::atoi(argv[++i]));
        else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) seed = std::strtoull(argv[++i], nullptr, 10);
        else {
            std::fprintf(stderr, "usage: acceptance [--seed S] [--expect-red N]...\n");
            return 2;
        }
    }
    std::set<int> red;
    for (const auto& e : suites()) {
        SuiteResult r = e.run(seed);
        std::printf("ACCEPTANCE %d %-20s %s (%.2f s, budget %.0f s)\n", r.criterion, r.name.c_str(), r.pass ? "PASS" : "FAIL", r.seconds, r.budget);
        for (const auto& f : r.failures) std::printf("    %s\n", f.c_str());
        if (!r.pass) red.insert(r.criterion);
    }
    std::printf("%zu of %zu criteria pass\n", suites().size() - red.size(), suites().size());
    if (red == expect_red) {
        if (!red.empty()) std::printf("failing set matches the expected red set\n");
        return 0;
    }
    return 1;
}
