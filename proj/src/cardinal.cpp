#include "matchlet/cardinal.hpp"

#include <cmath>

namespace matchlet {

namespace {

// sin(x)/x; below 1e-4 the Taylor series is exact to rounding.
double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

}  // namespace

FrequencyFunction CardinalModel::wavelet_transform() const {
    return {[this](double xi) { return wavelet_hat(xi); }, wavelet_breakpoints()};
}

double eval_cardinal_scaling(double t) { return sinc(kPi * t); }

double eval_cardinal_wavelet(double t) {
    const double tau = t - 0.5;
    return 2.0 * sinc(kTwoPi * tau) - sinc(kPi * tau);
}

cplx cardinal_wavelet_hat(double xi) {
    const bool upper = xi >= kPi && xi < kTwoPi;
    const bool lower = xi >= -kTwoPi && xi < -kPi;
    if (!upper && !lower) return {};
    return std::polar(1.0, -0.5 * xi);
}

double ShannonCardinal::scaling(double t) const { return eval_cardinal_scaling(t); }
double ShannonCardinal::wavelet(double t) const { return eval_cardinal_wavelet(t); }

cplx ShannonCardinal::scaling_hat(double xi) const {
    return (xi >= -kPi && xi < kPi) ? cplx{1.0} : cplx{};
}

cplx ShannonCardinal::wavelet_hat(double xi) const { return cardinal_wavelet_hat(xi); }

std::shared_ptr<const CardinalModel> default_cardinal() {
    static const auto model = std::make_shared<const ShannonCardinal>();
    return model;
}

}  // namespace matchlet
