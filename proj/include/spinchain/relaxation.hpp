#pragma once

#include <vector>

#include "spinchain/linalg.hpp"

namespace spinchain {

/// Paper gives 10 Hz (central line) and 130 Hz (outermost lines); the two
/// interior pairs are interpolated and flagged as defaults, not measured
/// values. Overridable through the experiment config.
std::vector<double> default_linewidths();

/// Per-coherence transverse decay derived from single-quantum linewidths:
/// R2_k = pi·FWHM_k for the line of transition k. Coherences spanning more
/// than one transition decay at the fastest spanned single-quantum rate.
/// Optional uniform T1 pulls populations back toward a thermal target.
class RelaxationModel {
   public:
    explicit RelaxationModel(std::vector<double> linewidths_hz);
    static RelaxationModel with_defaults();

    /// Enables longitudinal relaxation of populations toward `target`
    /// (a deviation-population vector, one entry per level).
    void set_t1(double t1_s, RealVector target);

    const std::vector<double>& linewidths_hz() const { return linewidths_hz_; }
    int n_transitions() const { return static_cast<int>(linewidths_hz_.size()); }

    /// Decay rate (1/s) of density-matrix element (i, j). Zero on the diagonal.
    double r2(int i, int j) const;

    double t1_s() const { return t1_s_; }
    bool t1_enabled() const { return t1_s_ > 0.0; }
    const RealVector& t1_target() const { return t1_target_; }

   private:
    std::vector<double> linewidths_hz_;
    std::vector<double> rates_;   // pi * FWHM per transition
    double t1_s_ = 0.0;
    RealVector t1_target_;
};

/// Multiplies each off-diagonal element by exp(-R2_ij·dt); populations are
/// untouched unless T1 is enabled, in which case they relax exponentially
/// toward the model's target shifted to conserve the trace exactly.
Matrix apply_decay(const Matrix& rho, const RelaxationModel& model, double dt);

}  // namespace spinchain
