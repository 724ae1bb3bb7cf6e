#include "spinchain/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinchain {

std::vector<double> default_linewidths() {
    return {130.0, 55.0, 20.0, 10.0, 20.0, 55.0, 130.0};
}

RelaxationModel::RelaxationModel(std::vector<double> linewidths_hz)
    : linewidths_hz_(std::move(linewidths_hz)) {
    const size_t n = linewidths_hz_.size();
    if (n == 0) throw std::invalid_argument("need at least one linewidth");
    for (size_t k = 0; k < n; ++k) {
        if (linewidths_hz_[k] < 0.0)
            throw std::invalid_argument("linewidths must be nonnegative");
        if (std::abs(linewidths_hz_[k] - linewidths_hz_[n - 1 - k]) > 1e-9)
            throw std::invalid_argument("linewidths must be symmetric about the center");
    }
    double central = linewidths_hz_[n / 2];
    if (central > linewidths_hz_.front() + 1e-9)
        throw std::invalid_argument("central linewidth must not exceed the outer ones");
    rates_.resize(n);
    for (size_t k = 0; k < n; ++k) rates_[k] = kPi * linewidths_hz_[k];
}

RelaxationModel RelaxationModel::with_defaults() {
    return RelaxationModel(default_linewidths());
}

void RelaxationModel::set_t1(double t1_s, RealVector target) {
    if (t1_s > 0.0 && target.size() != static_cast<Eigen::Index>(linewidths_hz_.size()) + 1)
        throw std::invalid_argument("T1 target must have one entry per level");
    t1_s_ = t1_s;
    t1_target_ = std::move(target);
}

double RelaxationModel::r2(int i, int j) const {
    if (i == j) return 0.0;
    int lo = std::min(i, j), hi = std::max(i, j);
    double r = 0.0;
    for (int k = lo; k < hi; ++k) r = std::max(r, rates_[static_cast<size_t>(k)]);
    return r;
}

Matrix apply_decay(const Matrix& rho, const RelaxationModel& model, double dt) {
    if (dt < 0.0) throw std::invalid_argument("decay interval must be nonnegative");
    const Eigen::Index d = rho.rows();
    Matrix out = rho;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            if (i == j) continue;
            out(i, j) *= std::exp(-model.r2(static_cast<int>(i), static_cast<int>(j)) * dt);
        }
    if (model.t1_enabled()) {
        // Target shifted by the input's mean population so the trace is exact.
        const double mean = rho.trace().real() / static_cast<double>(d);
        const double decay = std::exp(-dt / model.t1_s());
        for (Eigen::Index i = 0; i < d; ++i) {
            double eq = model.t1_target()(i) + mean;
            out(i, i) = eq + (rho(i, i).real() - eq) * decay;
        }
    }
    return out;
}

}  // namespace spinchain
