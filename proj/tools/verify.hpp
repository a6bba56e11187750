#pragma once

#include <string>
#include <vector>

namespace eichler::verify {

struct Check {
    std::string name;
    double value = 0.0;      // residual, or a ratio for the factor checks
    double tolerance = 0.0;
    bool pass = false;
    bool informational = false;  // reported, not part of the verdict
};

struct Criterion {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    std::string error;  // set when a computation threw

    bool pass() const;
    // Largest value/tolerance over the counted checks.
    double worst_ratio() const;
};

struct Config {
    bool quick = false;
    std::string fixture;  // n,a_n CSV for criterion 13
};

constexpr int kCriteria = 13;

Criterion run_criterion(int id, const Config& cfg);

// Runs all criteria on up to `threads` workers; results in criterion order.
std::vector<Criterion> run_all(const Config& cfg, int threads);

// "PASS  3  title  worst value/tol" style summary line.
std::string summary_line(const Criterion& c);

}  // namespace eichler::verify
