#ifndef MATCHLET_SEQUENCE_HPP
#define MATCHLET_SEQUENCE_HPP

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "matchlet/errors.hpp"

namespace matchlet {

using cplx = std::complex<double>;

/// |gamma_k| <= constant * |k|^(-2 - epsilon) for every k != 0 outside the explicit head.
struct DecayCertificate {
    double constant = 0.0;
    double epsilon = 0.0;

    double bound(long k) const;
    void validate() const;
    bool operator==(const DecayCertificate&) const = default;
};

/// Certified upper bound on sum_{k > n} C k^(-2-eps) for n >= 0.
double power_tail_bound(const DecayCertificate& cert, long n);

/// Certified upper bound on sum_{k > n} 2^{v(k)} C k^(-2-eps), v the 2-adic valuation.
double dyadic_tail_bound(const DecayCertificate& cert, long n);

/// Certified upper bound on sum_{k > n} (v(k) + 1) k C k^(-2-eps).
double weighted_derivative_tail_bound(const DecayCertificate& cert, long n);

/// Exponent of the largest power of two dividing n (n >= 1).
int two_adic_valuation(long n);

/*
 * Interpolation data gamma_k.
 *
 * Finite data are stored trimmed: values()[0] = gamma_{first_index()} and the
 * last entry are nonzero, or the sequence is empty (identically zero).
 *
 * Decaying data carry an explicit head (overriding the generator on its
 * index range), a generator for the remaining indices, and a decay
 * certificate that is checked against the generator on construction.
 * One-sided data vanish for k < first_index().
 */
class DataSequence {
public:
    using Generator = std::function<cplx(long)>;

    DataSequence() = default;

    static DataSequence finite(long first_index, std::vector<cplx> values);
    static DataSequence finite(long first_index, const std::vector<double>& values);
    static DataSequence decaying(long first_index, std::vector<cplx> head, Generator tail,
                                 DecayCertificate certificate, bool two_sided);

    bool is_finite() const { return !tail_; }
    bool is_zero() const { return is_finite() && values_.empty(); }
    bool is_real() const;
    bool two_sided() const { return two_sided_; }

    long first_index() const { return first_; }
    /// Last index of finite data, or of the explicit head for decaying data.
    long last_index() const { return first_ + static_cast<long>(values_.size()) - 1; }
    const std::vector<cplx>& values() const { return values_; }
    const std::optional<DecayCertificate>& certificate() const { return certificate_; }

    cplx operator[](long k) const;

    /// Smallest K >= head extent with certified sum_{|k| > K} |gamma_k| <= tolerance.
    long truncation_index(double tolerance) const;
    /// Certified bound on sum over indices outside [-K, K] (zero for finite data).
    double tail_bound(long K) const;
    /// Finite sequence of the entries with |k| <= K (or all entries when finite).
    DataSequence truncated(long K) const;

    /// Copy with gamma_k replaced; decaying data extend their head as needed.
    DataSequence with_value(long k, cplx v) const;

private:
    long first_ = 0;
    std::vector<cplx> values_;
    Generator tail_;
    std::optional<DecayCertificate> certificate_;
    bool two_sided_ = true;
};

}  // namespace matchlet

#endif  // MATCHLET_SEQUENCE_HPP
