#include "asym/numerics/jet.hpp"

#include <algorithm>

namespace asym::numerics {

cplx Jet::derivative(std::size_t k) const {
    if (k >= c_.size()) return {};
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return c_[k] * f;
}

Jet& Jet::operator+=(const Jet& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

Jet& Jet::operator*=(cplx s) {
    for (auto& v : c_) v *= s;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    std::size_t n = std::min(a.c_.size(), b.c_.size());
    Jet r(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        cplx s{};
        for (std::size_t i = 0; i <= k; ++i) s += a.c_[i] * b.c_[k - i];
        r.c_[k] = s;
    }
    return r;
}

Jet reciprocal(const Jet& a) {
    if (a[0] == cplx{}) throw std::domain_error("jet reciprocal of zero");
    Jet r(a.order());
    r[0] = 1.0 / a[0];
    for (std::size_t k = 1; k <= a.order(); ++k) {
        cplx s{};
        for (std::size_t i = 1; i <= k; ++i) s += a[i] * r[k - i];
        r[k] = -s / a[0];
    }
    return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

// For h = exp(a): k h_k = sum_{i=1..k} i a_i h_{k-i}.
Jet exp(const Jet& a) {
    Jet r(a.order());
    r[0] = std::exp(a[0]);
    for (std::size_t k = 1; k <= a.order(); ++k) {
        cplx s{};
        for (std::size_t i = 1; i <= k; ++i) s += static_cast<double>(i) * a[i] * r[k - i];
        r[k] = s / static_cast<double>(k);
    }
    return r;
}

// For h = log(a): a_0 k h_k = k a_k - sum_{i=1..k-1} i h_i a_{k-i}.
Jet log(const Jet& a) {
    if (a[0] == cplx{}) throw std::domain_error("jet log of zero");
    Jet r(a.order());
    r[0] = std::log(a[0]);
    for (std::size_t k = 1; k <= a.order(); ++k) {
        cplx s = static_cast<double>(k) * a[k];
        for (std::size_t i = 1; i < k; ++i) s -= static_cast<double>(i) * r[i] * a[k - i];
        r[k] = s / (static_cast<double>(k) * a[0]);
    }
    return r;
}

Jet pow(const Jet& a, cplx p) { return exp(log(a) * p); }

}  // namespace asym::numerics
