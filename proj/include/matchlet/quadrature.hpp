#ifndef MATCHLET_QUADRATURE_HPP
#define MATCHLET_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "matchlet/errors.hpp"

namespace matchlet {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kSqrt2 = 1.414213562373095048801688724209698079;

/*
 * Composite Gauss-Legendre settings.
 *
 * Every integral is evaluated at `panels_per_band` panels and again at
 * `panels_per_band * refinement` panels. When the two estimates differ by
 * more than `tolerance * max(1, |value|)` the panel count is multiplied by
 * `refinement` again, at most `max_refinements` times.
 */
struct QuadratureSpec {
    int panels_per_band = 8;
    int nodes_per_panel = 32;
    int refinement = 2;
    double tolerance = 1e-10;
    int max_refinements = 6;

    void validate() const;
    bool operator==(const QuadratureSpec&) const = default;
};

/// Supported Gauss-Legendre orders per panel.
std::span<const int> supported_node_counts();

/// Raised when uniform refinement does not reach the requested tolerance.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, cplx coarse, cplx fine)
        : Error(what), coarse_(coarse), fine_(fine) {}
    cplx coarse() const { return coarse_; }
    cplx fine() const { return fine_; }

private:
    cplx coarse_;
    cplx fine_;
};

struct Node {
    double x;
    double w;
};

/// Nodes and weights of `panels` equal Gauss-Legendre panels on [a, b].
std::vector<Node> composite_rule(double a, double b, int panels, int nodes_per_panel);

template <class T>
struct Integral {
    T value{};
    double error = 0.0;  // |fine - coarse| of the last refinement step
    int panels = 0;      // panel count of the accepted estimate
};

using ComplexIntegrand = std::function<cplx(double)>;
using RealIntegrand = std::function<double(double)>;

/// Integrates over [a, b]; intervals are smooth pieces, callers split at kinks.
Integral<cplx> integrate(const ComplexIntegrand& f, double a, double b,
                         const QuadratureSpec& spec = {});
Integral<double> integrate_real(const RealIntegrand& f, double a, double b,
                           const QuadratureSpec& spec = {});

/// Integrates over consecutive pieces [b0,b1], [b1,b2], ... and adds the errors.
Integral<cplx> integrate_pieces(const ComplexIntegrand& f, std::span<const double> breakpoints,
                                const QuadratureSpec& spec = {});
Integral<double> integrate_pieces_real(const RealIntegrand& f, std::span<const double> breakpoints,
                                  const QuadratureSpec& spec = {});

}  // namespace matchlet

#endif  // MATCHLET_QUADRATURE_HPP
