// SPDX-License-Identifier: Apache-2.0
//
// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Usage: acceptance [--level quick|full] [--seed S] [--threads T]

#include <cstdio>
#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "hmc/acceptance.hpp"

int main(int argc, char** argv)
{
    namespace acc = hmc::acceptance;
    acc::Config cfg;
    cfg.threads = hmc::default_threads();
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        const std::string value = argv[i + 1];
        if (flag == "--level") {
            cfg.level = value == "quick" ? acc::Level::quick : acc::Level::full;
        } else if (flag == "--seed") {
            cfg.seed = hmc::parse_seed(value);
        } else if (flag == "--threads") {
            cfg.threads = static_cast<unsigned>(std::stoul(value));
        } else {
            std::fprintf(stderr, "unknown flag %s\n", flag.c_str());
            return 2;
        }
    }

    std::map<int, std::vector<acc::Outcome>> by_criterion;
    for (const auto& check : acc::checks()) {
        auto outcome = acc::run(check, cfg);
        std::fprintf(stderr, "  [%s] %d%s %s (%.1f s)\n", outcome.pass() ? "ok" : "FAIL", outcome.criterion,
                     outcome.part.c_str(), outcome.title.c_str(), outcome.seconds);
        for (const auto& item : outcome.items) {
            std::fprintf(stderr, "      %s %s = %.6g%s\n", item.pass ? "  " : "!!", item.name.c_str(), item.value,
                         item.detail.empty() ? "" : ("  " + item.detail).c_str());
        }
        if (!outcome.error.empty()) {
            std::fprintf(stderr, "      !! error: %s\n", outcome.error.c_str());
        }
        by_criterion[outcome.criterion].push_back(std::move(outcome));
    }

    int failures = 0;
    for (const auto& [id, outcomes] : by_criterion) {
        bool pass = true;
        double seconds = 0.0;
        std::string summary;
        std::string title;
        for (const auto& o : outcomes) {
            title += (title.empty() ? "" : "; ") + o.title;
            pass = pass && o.pass();
            seconds += o.seconds;
            summary += (summary.empty() ? "" : " | ") + acc::summarize(o);
        }
        failures += pass ? 0 : 1;
        std::printf("%s criterion %2d: %s (%.1f s) %s\n", pass ? "PASS" : "FAIL", id, title.c_str(),
                    seconds, summary.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(by_criterion.size()) - failures, by_criterion.size());
    return failures == 0 ? 0 : 1;
}
