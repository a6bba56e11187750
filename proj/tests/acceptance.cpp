// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Usage: acceptance [--quick] [criterion ...]

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "verify.hpp"

using namespace eichler::verify;

int main(int argc, char** argv) {
    Config cfg{false, EICHLER_FIXTURE};
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--quick") {
            cfg.quick = true;
        } else {
            const int id = std::atoi(a.c_str());
            if (id < 1 || id > kCriteria) {
                std::fprintf(stderr, "usage: acceptance [--quick] [1-%d ...]\n", kCriteria);
                return 2;
            }
            ids.push_back(id);
        }
    }
    if (ids.empty())
        for (int id = 1; id <= kCriteria; ++id) ids.push_back(id);

    bool all = true;
    for (int id : ids) {
        const Criterion c = run_criterion(id, cfg);
        std::printf("%s\n", summary_line(c).c_str());
        for (const Check& k : c.checks)
            std::printf("      %-4s %-48s %.3e  tol %.1e%s\n", k.pass ? "ok" : "BAD", k.name.c_str(), k.value,
                        k.tolerance, k.informational ? "  (informational)" : "");
        all = all && c.pass();
    }
    return all ? 0 : 1;
}
