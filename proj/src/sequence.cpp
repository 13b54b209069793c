#include "matchlet/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace matchlet {

namespace {

constexpr long kCertificateWindow = 4096;
constexpr long kMaxTruncation = 1L << 20;

std::vector<cplx> trim(long& first, std::vector<cplx> values) {
    std::size_t lo = 0;
    while (lo < values.size() && values[lo] == cplx{}) ++lo;
    std::size_t hi = values.size();
    while (hi > lo && values[hi - 1] == cplx{}) --hi;
    if (lo == hi) {
        first = 0;
        return {};
    }
    first += static_cast<long>(lo);
    return {values.begin() + static_cast<std::ptrdiff_t>(lo), values.begin() + static_cast<std::ptrdiff_t>(hi)};
}

}  // namespace

double DecayCertificate::bound(long k) const {
    if (k == 0) return std::numeric_limits<double>::infinity();
    return constant * std::pow(static_cast<double>(std::labs(k)), -2.0 - epsilon);
}

void DecayCertificate::validate() const {
    if (!(constant >= 0.0) || !std::isfinite(constant)) {
        throw InvalidInput("decay certificate constant must be finite and nonnegative");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InvalidInput("decay certificate exponent slack epsilon must be positive");
    }
}

int two_adic_valuation(long n) {
    if (n <= 0) throw InvalidInput("2-adic valuation needs a positive integer");
    int v = 0;
    while ((n & 1L) == 0) {
        n >>= 1;
        ++v;
    }
    return v;
}

double power_tail_bound(const DecayCertificate& cert, long n) {
    const double e = cert.epsilon;
    const double m = static_cast<double>(std::max(n, 0L) + 1);
    return cert.constant * (std::pow(m, -2.0 - e) + std::pow(m, -1.0 - e) / (1.0 + e));
}

// Split k = 2^q m with m odd; for each q bound the odd-m sum beyond n / 2^q
// by its first term plus half the integral of the remainder.
double dyadic_tail_bound(const DecayCertificate& cert, long n) {
    const double e = cert.epsilon;
    const double ratio = std::pow(2.0, -(1.0 + e));
    double total = 0.0;
    int q = 0;
    for (; q < 62 && (1L << q) <= std::max(n, 0L); ++q) {
        long m0 = (n >> q) + 1;
        if (m0 % 2 == 0) ++m0;
        const double m = static_cast<double>(m0);
        const double odd_sum = std::pow(m, -2.0 - e) + std::pow(m, -1.0 - e) / (2.0 * (1.0 + e));
        total += std::pow(ratio, q) * odd_sum;
    }
    const double all_odd = 1.0 + 1.0 / (2.0 * (1.0 + e));
    total += std::pow(ratio, q) / (1.0 - ratio) * all_odd;
    return cert.constant * total;
}

double weighted_derivative_tail_bound(const DecayCertificate& cert, long n) {
    const double e = cert.epsilon;
    const double x = std::pow(2.0, -(1.0 + e));
    double total = 0.0;
    int q = 0;
    for (; q < 62 && (1L << q) <= std::max(n, 0L); ++q) {
        long m0 = (n >> q) + 1;
        if (m0 % 2 == 0) ++m0;
        const double m = static_cast<double>(m0);
        const double odd_sum = std::pow(m, -1.0 - e) + std::pow(m, -e) / (2.0 * e);
        total += (q + 1) * std::pow(x, q) * odd_sum;
    }
    const double all_odd = 1.0 + 1.0 / (2.0 * e);
    const double xq = std::pow(x, q);
    total += xq * ((q + 1) / (1.0 - x) + x / ((1.0 - x) * (1.0 - x))) * all_odd;
    return cert.constant * total;
}

DataSequence DataSequence::finite(long first_index, std::vector<cplx> values) {
    for (const cplx& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw InvalidInput("sequence values must be finite");
        }
    }
    DataSequence s;
    s.first_ = first_index;
    s.values_ = trim(s.first_, std::move(values));
    return s;
}

DataSequence DataSequence::finite(long first_index, const std::vector<double>& values) {
    return finite(first_index, std::vector<cplx>(values.begin(), values.end()));
}

DataSequence DataSequence::decaying(long first_index, std::vector<cplx> head, Generator tail,
                                    DecayCertificate certificate, bool two_sided) {
    if (!tail) throw InvalidInput("decaying sequence needs a generator");
    certificate.validate();
    DataSequence s;
    s.first_ = first_index;
    s.values_ = std::move(head);
    s.tail_ = std::move(tail);
    s.certificate_ = certificate;
    s.two_sided_ = two_sided;
    for (long k = 1; k <= kCertificateWindow; ++k) {
        for (long idx : {k, -k}) {
            if (idx < 0 && !two_sided) continue;
            if (idx >= s.first_ && idx <= s.last_index()) continue;
            const double mag = std::abs(s.tail_(idx));
            if (!std::isfinite(mag)) throw InvalidInput("generator produced a non-finite value");
            if (mag > certificate.bound(idx) * (1.0 + 1e-12)) {
                std::ostringstream msg;
                msg << "decay certificate violated at k=" << idx << ": |gamma_k|=" << mag
                    << " > C|k|^(-2-eps)=" << certificate.bound(idx);
                throw InvalidInput(msg.str());
            }
        }
    }
    return s;
}

bool DataSequence::is_real() const {
    const auto real = [](const cplx& v) { return v.imag() == 0.0; };
    if (!std::all_of(values_.begin(), values_.end(), real)) return false;
    if (is_finite()) return true;
    for (long k = 1; k <= kCertificateWindow; ++k) {
        if (!real((*this)[k])) return false;
        if (two_sided_ && !real((*this)[-k])) return false;
    }
    return true;
}

cplx DataSequence::operator[](long k) const {
    if (!values_.empty() && k >= first_ && k <= last_index()) {
        return values_[static_cast<std::size_t>(k - first_)];
    }
    if (is_finite()) return {};
    if (!two_sided_ && k < first_) return {};
    return tail_(k);
}

long DataSequence::truncation_index(double tolerance) const {
    const long head = values_.empty() ? 0 : std::max(std::labs(first_), std::labs(last_index()));
    if (is_finite()) return head;
    long k = std::max(head, 1L);
    while (k < kMaxTruncation && tail_bound(k) > tolerance) k *= 2;
    if (k >= kMaxTruncation) return std::max(head, kMaxTruncation);
    long lo = std::max(head, k / 2);
    long hi = k;
    while (lo < hi) {
        const long mid = lo + (hi - lo) / 2;
        if (tail_bound(mid) <= tolerance) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return hi;
}

double DataSequence::tail_bound(long K) const {
    if (is_finite()) return 0.0;
    const long head = values_.empty() ? 0 : std::max(std::labs(first_), std::labs(last_index()));
    if (K < head) throw InvalidInput("truncation index must cover the explicit head");
    const double one_side = power_tail_bound(*certificate_, K);
    return two_sided_ ? 2.0 * one_side : one_side;
}

DataSequence DataSequence::truncated(long K) const {
    if (is_finite()) return *this;
    const long lo = two_sided_ ? -K : first_;
    std::vector<cplx> v;
    v.reserve(static_cast<std::size_t>(std::max(0L, K - lo + 1)));
    for (long k = lo; k <= K; ++k) v.push_back((*this)[k]);
    return finite(lo, std::move(v));
}

DataSequence DataSequence::with_value(long k, cplx v) const {
    DataSequence out = *this;
    if (out.values_.empty()) {
        if (is_finite()) {
            out.first_ = k;
            out.values_ = {cplx{}};
        } else {
            out.values_ = {(*this)[out.first_]};
        }
    }
    while (k < out.first_) {
        --out.first_;
        out.values_.insert(out.values_.begin(), (*this)[out.first_]);
    }
    while (k > out.last_index()) out.values_.push_back((*this)[out.last_index() + 1]);
    out.values_[static_cast<std::size_t>(k - out.first_)] = v;
    if (out.is_finite()) out.values_ = trim(out.first_, std::move(out.values_));
    return out;
}

}  // namespace matchlet
