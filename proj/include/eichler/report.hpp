#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "eichler/core.hpp"

namespace eichler {

struct ResidualReport {
    std::string operation;
    std::vector<cplx> points;
    std::vector<double> residuals;
    double tolerance = 0.0;
    bool pass = false;

    double max_residual() const {
        double m = 0.0;
        for (double r : residuals) m = std::max(m, r);
        return m;
    }
    void add(cplx p, double res) {
        points.push_back(p);
        residuals.push_back(res);
    }
    // NaN residuals fail.
    ResidualReport& finish() {
        pass = !residuals.empty();
        for (double r : residuals)
            if (!(r <= tolerance)) pass = false;
        return *this;
    }
};

}  // namespace eichler
