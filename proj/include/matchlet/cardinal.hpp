#ifndef MATCHLET_CARDINAL_HPP
#define MATCHLET_CARDINAL_HPP

#include <memory>

#include "matchlet/verification.hpp"

namespace matchlet {

/*
 * Interpolating orthonormal MRA: phi(k) = delta_{k,0}, psi(n + 1/2) = delta_{n,0},
 * and the integer shifts of psi are orthonormal. Implementations expose the
 * time-domain closed forms and the wavelet's Fourier transform with its
 * support breakpoints.
 */
class CardinalModel {
public:
    virtual ~CardinalModel() = default;

    virtual double scaling(double t) const = 0;
    virtual double wavelet(double t) const = 0;
    virtual cplx scaling_hat(double xi) const = 0;
    virtual cplx wavelet_hat(double xi) const = 0;
    /// Positive-frequency breakpoints of wavelet_hat, see FrequencyFunction.
    virtual std::vector<double> wavelet_breakpoints() const = 0;

    FrequencyFunction wavelet_transform() const;
};

/// Shannon system: phi = sinc, psi^ = e^{-i xi/2} on pi <= |xi| <= 2pi.
class ShannonCardinal final : public CardinalModel {
public:
    double scaling(double t) const override;
    double wavelet(double t) const override;
    cplx scaling_hat(double xi) const override;
    cplx wavelet_hat(double xi) const override;
    std::vector<double> wavelet_breakpoints() const override { return {kPi, kTwoPi}; }
};

std::shared_ptr<const CardinalModel> default_cardinal();

/// sin(pi t) / (pi t), series near t = 0.
double eval_cardinal_scaling(double t);
/// (sin(2 pi tau) - sin(pi tau)) / (pi tau) with tau = t - 1/2.
double eval_cardinal_wavelet(double t);
/*
 * e^{-i xi/2} on the half-open bands [pi, 2pi) and [-2pi, -pi), zero elsewhere.
 * The bands tile the line modulo 2pi, so periodized sums are exactly 1
 * including at the band edges.
 */
cplx cardinal_wavelet_hat(double xi);

}  // namespace matchlet

#endif  // MATCHLET_CARDINAL_HPP
