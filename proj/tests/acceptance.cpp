// Acceptance run: one line per criterion, nonzero exit if any fails.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "heatkern/verify.hpp"

int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
    if (ids.empty()) ids = heatkern::acceptance_ids();
    int failed = 0;
    for (int id : ids) {
        const auto r = heatkern::run_criterion(id);
        std::printf("%s\n", heatkern::format_check(r, true).c_str());
        std::fflush(stdout);
        if (!r.passed) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(ids.size()) - failed, ids.size());
    return failed == 0 ? 0 : 1;
}
