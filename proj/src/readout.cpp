#include "spinchain/readout.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>

#include "spinchain/errors.hpp"

namespace spinchain {

void validate_acquisition(const AcquisitionConfig& acq, const SpinSystem& sys) {
    if (acq.transients <= 0 || acq.transients % 4 != 0)
        throw ConfigurationError("transients must be a positive multiple of 4");
    if (acq.n_points <= 0 || acq.dwell_s <= 0.0)
        throw ConfigurationError("acquisition needs positive dwell and point count");
    if (acq.broadening_hz < 0.0)
        throw ConfigurationError("broadening must be nonnegative");
    const double nyquist = 0.5 / acq.dwell_s;
    for (const Transition& tr : sys.transitions())
        if (std::abs(tr.offset_hz) >= nyquist)
            throw ConfigurationError("spectral width does not cover the multiplet");
    // Windows must not overlap; touching is allowed.
    const double w = peak_halfwidth_hz(acq, sys);
    if (w <= 0.0) throw ConfigurationError("peak window half-width must be positive");
    for (int k = 0; k + 1 < sys.n_transitions(); ++k) {
        double gap = sys.transitions()[k + 1].offset_hz - sys.transitions()[k].offset_hz;
        if (2.0 * w > gap + 1e-9)
            throw ConfigurationError("peak integration windows overlap");
    }
}

double peak_halfwidth_hz(const AcquisitionConfig& acq, const SpinSystem& sys) {
    return acq.peak_halfwidth_hz > 0.0 ? acq.peak_halfwidth_hz : 0.5 * sys.splitting_hz();
}

Matrix reading_pulse(const Matrix& rho, double angle_rad, const SpinSystem& sys) {
    Matrix u = unitary_of(sys.ops().ix, angle_rad);
    return conjugate_by(u, rho);
}

Matrix phase_cycled_state(const Matrix& rho_prepared, const ShapedPulse& evolution,
                          const SpinSystem& sys, const EvolutionMode& mode,
                          const RelaxationModel* relax, int transients) {
    if (transients <= 0 || transients % 4 != 0)
        throw ConfigurationError("transients must be a positive multiple of 4");
    const int blocks = transients / 4;
    Matrix avg = Matrix::Zero(rho_prepared.rows(), rho_prepared.cols());
    for (int b = 0; b < blocks; ++b) {
        for (int c = 0; c < 4; ++c) {
            double dphi = b * kPi / (2.0 * blocks) + c * kPi / 2.0;
            avg += evolve(rho_prepared, with_phase_shift(evolution, dphi), sys, mode, relax);
        }
    }
    return avg / static_cast<double>(transients);
}

std::vector<cxd> synthesize_fid(const Matrix& rho, const SpinSystem& sys,
                                const RelaxationModel& relax, const AcquisitionConfig& acq) {
    if (relax.n_transitions() != sys.n_transitions())
        throw ConfigurationError("relaxation model does not match the spin system");
    const int n_tr = sys.n_transitions();
    std::vector<cxd> amp(n_tr);
    std::vector<double> omega(n_tr), rate(n_tr);
    for (int k = 0; k < n_tr; ++k) {
        const Transition& tr = sys.transitions()[k];
        amp[k] = tr.matrix_element * rho(k + 1, k);
        omega[k] = 2.0 * kPi * tr.offset_hz;
        rate[k] = kPi * (relax.linewidths_hz()[k] + acq.broadening_hz);
    }
    std::vector<cxd> fid(acq.n_points);
    for (int n = 0; n < acq.n_points; ++n) {
        const double t = n * acq.dwell_s;
        cxd s = 0.0;
        for (int k = 0; k < n_tr; ++k)
            s += amp[k] * std::exp(cxd(-rate[k] * t, omega[k] * t));
        fid[n] = s;
    }
    return fid;
}

std::vector<cxd> spectrum_transform(const std::vector<cxd>& fid, const AcquisitionConfig& acq) {
    const int n = static_cast<int>(fid.size());
    std::vector<cxd> in = fid, raw(fid.size());
    fftw_plan plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(raw.data()),
                                      FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    // Reorder to ascending frequency and scale so the transform approximates
    // the continuous integral: S(f) = dwell * sum_n s_n e^{-i 2pi f t_n}.
    std::vector<cxd> out(fid.size());
    const int half = n / 2;
    for (int i = 0; i < n; ++i)
        out[i] = acq.dwell_s * raw[(i + half) % n];
    return out;
}

Spectrum spectrum(const std::vector<cxd>& fid, const AcquisitionConfig& acq) {
    // Half-weight the first point: the plain DFT sum is a rectangle rule for
    // the half-line integral and leaves a flat baseline of dwell*s(0)/2 under
    // every peak; with the correction the sum is the trapezoid rule.
    std::vector<cxd> corrected = fid;
    if (!corrected.empty()) corrected[0] *= 0.5;
    std::vector<cxd> s = spectrum_transform(corrected, acq);
    const int n = static_cast<int>(s.size());
    Spectrum spec;
    spec.freq_hz.resize(n);
    spec.intensity.resize(n);
    const double df = 1.0 / (n * acq.dwell_s);
    for (int i = 0; i < n; ++i) {
        spec.freq_hz(i) = (i - n / 2) * df;
        // Linear response carries a -i: populations read out as +i * transform.
        spec.intensity(i) = (kImag * s[i]).real();
    }
    return spec;
}

std::vector<double> integrate_peaks(const Spectrum& spec, const SpinSystem& sys,
                                    const AcquisitionConfig& acq) {
    validate_acquisition(acq, sys);
    const double w = peak_halfwidth_hz(acq, sys);
    const double f0 = spec.freq_hz(0);
    const double df = spec.freq_hz(1) - spec.freq_hz(0);
    const int n = static_cast<int>(spec.freq_hz.size());
    std::vector<double> integrals;
    integrals.reserve(sys.n_transitions());
    for (const Transition& tr : sys.transitions()) {
        int lo = static_cast<int>(std::ceil((tr.offset_hz - w - f0) / df));
        int hi = static_cast<int>(std::floor((tr.offset_hz + w - f0) / df));
        lo = std::max(lo, 0);
        hi = std::min(hi, n - 1);
        double acc = 0.0;
        for (int i = lo; i < hi; ++i)
            acc += 0.5 * (spec.intensity(i) + spec.intensity(i + 1)) * df;
        integrals.push_back(acc);
    }
    return integrals;
}

ReadoutCalibration ReadoutCalibration::build(const SpinSystem& sys,
                                             const RelaxationModel& relax,
                                             const AcquisitionConfig& acq) {
    validate_acquisition(acq, sys);
    const int d = sys.dimension();
    const int n_tr = sys.n_transitions();
    ReadoutCalibration calib;
    calib.response_.resize(n_tr, n_tr);
    for (int j = 0; j < n_tr; ++j) {
        // Unit population difference across transition j, traceless.
        Matrix rho = Matrix::Zero(d, d);
        for (int n = 0; n <= j; ++n) rho(n, n) = 1.0;
        rho.diagonal().array() -= static_cast<double>(j + 1) / d;
        Matrix read = reading_pulse(rho, acq.reading_angle_rad, sys);
        std::vector<double> ints =
            integrate_peaks(spectrum(synthesize_fid(read, sys, relax, acq), acq), sys, acq);
        for (int k = 0; k < n_tr; ++k) calib.response_(k, j) = ints[k];
    }
    return calib;
}

RealVector populations_from_integrals(const std::vector<double>& integrals,
                                      const ReadoutCalibration& calib,
                                      double total_deviation) {
    const int n_tr = static_cast<int>(calib.response().rows());
    if (static_cast<int>(integrals.size()) != n_tr)
        throw std::invalid_argument("integral count does not match the calibration");
    RealVector rhs(n_tr);
    for (int k = 0; k < n_tr; ++k) rhs(k) = integrals[k];
    RealVector diffs = calib.response().fullPivLu().solve(rhs);
    RealVector pops(n_tr + 1);
    pops(0) = 0.0;
    for (int k = 0; k < n_tr; ++k) pops(k + 1) = pops(k) - diffs(k);
    pops.array() += (total_deviation - pops.sum()) / (n_tr + 1);
    return pops;
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spec) {
    out << "freq_hz,intensity\n";
    char buf[48];
    for (Eigen::Index i = 0; i < spec.freq_hz.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.15g", spec.freq_hz(i));
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.15g", spec.intensity(i));
        out << buf << '\n';
    }
}

void write_fid_csv(std::ostream& out, const std::vector<cxd>& fid, double dwell_s) {
    out << "t_s,re,im\n";
    char buf[48];
    for (size_t n = 0; n < fid.size(); ++n) {
        std::snprintf(buf, sizeof buf, "%.15g", n * dwell_s);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.15g", fid[n].real());
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.15g", fid[n].imag());
        out << buf << '\n';
    }
}

}  // namespace spinchain
