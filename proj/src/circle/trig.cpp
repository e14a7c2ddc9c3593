#include "asym/circle/trig.hpp"

#include "asym/core/errors.hpp"

#include <cmath>

namespace asym::circle {

TrigPoly TrigPoly::mode(long n, QComplex c) {
    TrigPoly p;
    p.set(n, std::move(c));
    return p;
}

TrigPoly TrigPoly::sin_x() {
    // (e^{ix} - e^{-ix}) / 2i
    TrigPoly p;
    p.set(1, QComplex(0, q(-1, 2)));
    p.set(-1, QComplex(0, q(1, 2)));
    return p;
}

TrigPoly TrigPoly::cos_x() {
    TrigPoly p;
    p.set(1, QComplex(q(1, 2)));
    p.set(-1, QComplex(q(1, 2)));
    return p;
}

void TrigPoly::set(long n, QComplex v) {
    if (v.is_zero())
        c_.erase(n);
    else
        c_[n] = std::move(v);
}

QComplex TrigPoly::at(long n) const {
    auto it = c_.find(n);
    return it == c_.end() ? QComplex{} : it->second;
}

long TrigPoly::max_mode() const {
    long m = 0;
    for (const auto& [n, v] : c_) m = std::max(m, std::abs(n));
    return m;
}

cplx TrigPoly::operator()(double x) const {
    cplx s{};
    for (const auto& [n, v] : c_) s += v.to_complex() * std::polar(1.0, static_cast<double>(n) * x);
    return s;
}

TrigPoly TrigPoly::derivative() const {
    TrigPoly r;
    for (const auto& [n, v] : c_)
        if (n != 0) r.set(n, v * QComplex(0, Rational(n)));
    return r;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
    for (const auto& [n, v] : o.c_) set(n, at(n) + v);
    return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) {
    for (const auto& [n, v] : o.c_) set(n, at(n) - v);
    return *this;
}

TrigPoly operator-(const TrigPoly& a) {
    TrigPoly r = a;
    for (auto& [n, v] : r.c_) v = -v;
    return r;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    std::map<long, QComplex> acc;
    for (const auto& [n, v] : a.c_)
        for (const auto& [m, w] : b.c_) acc[n + m] += v * w;
    TrigPoly r;
    for (auto& [n, v] : acc) r.set(n, std::move(v));
    return r;
}

TrigPoly operator*(const TrigPoly& a, const QComplex& s) {
    TrigPoly r;
    for (const auto& [n, v] : a.c_) r.set(n, v * s);
    return r;
}

TrigPoly pow(const TrigPoly& p, unsigned k) {
    TrigPoly r(QComplex(1)), base = p;
    while (k) {
        if (k & 1u) r = r * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return r;
}

TrigFraction::TrigFraction(TrigPoly n, std::shared_ptr<const TrigPoly> d, unsigned k)
    : num_(std::move(n)), den_(k ? std::move(d) : nullptr), k_(k) {
    if (k_ && !den_) throw Error("trig fraction with a positive power needs a denominator");
    if (num_.is_zero()) {
        den_.reset();
        k_ = 0;
    }
}

cplx TrigFraction::operator()(double x) const {
    cplx v = num_(x);
    if (k_) v /= std::pow((*den_)(x), static_cast<int>(k_));
    return v;
}

TrigFraction TrigFraction::derivative() const {
    if (k_ == 0) return {num_.derivative()};
    TrigPoly n = num_.derivative() * *den_ - num_ * den_->derivative() * QComplex(Rational(k_));
    return {std::move(n), den_, k_ + 1};
}

TrigFraction TrigFraction::divided_by(const std::shared_ptr<const TrigPoly>& d) const {
    if (is_zero()) return {};
    if (k_ && !(*den_ == *d)) throw Error("trig fraction: mismatched denominators");
    return {num_, k_ ? den_ : d, k_ + 1};
}

std::shared_ptr<const TrigPoly> TrigFraction::common_den(const TrigFraction& a, const TrigFraction& b) {
    if (a.k_ == 0) return b.den_;
    if (b.k_ == 0) return a.den_;
    if (a.den_ != b.den_ && !(*a.den_ == *b.den_)) throw Error("trig fraction: mismatched denominators");
    return a.den_;
}

TrigPoly TrigFraction::lifted(unsigned k) const {
    if (k == k_) return num_;
    return num_ * pow(*den_, k - k_);
}

TrigFraction& TrigFraction::operator+=(const TrigFraction& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    auto d = common_den(*this, o);
    unsigned k = std::max(k_, o.k_);
    TrigFraction self = *this, other = o;
    self.den_ = other.den_ = d;
    *this = TrigFraction(self.lifted(k) + other.lifted(k), d, k);
    return *this;
}

TrigFraction& TrigFraction::operator-=(const TrigFraction& o) { return *this += -o; }

TrigFraction operator-(const TrigFraction& a) { return {-a.num_, a.den_, a.k_}; }

TrigFraction operator*(const TrigFraction& a, const TrigFraction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return {a.num_ * b.num_, TrigFraction::common_den(a, b), a.k_ + b.k_};
}

bool operator==(const TrigFraction& a, const TrigFraction& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    auto d = TrigFraction::common_den(a, b);
    unsigned k = std::max(a.k_, b.k_);
    TrigFraction x = a, y = b;
    x.den_ = y.den_ = d;
    return x.lifted(k) == y.lifted(k);
}

}  // namespace asym::circle
