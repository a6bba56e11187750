#pragma once

#include <doctest.h>

#include <random>

#include "eichler/core.hpp"

namespace eichler::test {

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// Fixed-seed sampler, so every run sees the same points.
struct Sampler {
    std::mt19937_64 gen{20261015};
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
    cplx upper() { return {uniform(-1.5, 1.5), uniform(0.4, 2.0)}; }
    cplx lower() { return {uniform(-1.5, 1.5), -uniform(0.4, 2.0)}; }
};

}  // namespace eichler::test
