#include "asym/wave/chebyshev.hpp"

#include "asym/core/errors.hpp"

#include <gsl/gsl_chebyshev.h>
#include <gsl/gsl_errno.h>

#include <algorithm>
#include <cmath>

namespace asym::wave {

struct ChebSeries::Part {
    gsl_cheb_series* s;
    explicit Part(std::size_t order) : s(gsl_cheb_alloc(order)) {
        if (!s) throw NumericalFailure("gsl_cheb_alloc failed");
    }
    Part(const Part&) = delete;
    Part& operator=(const Part&) = delete;
    ~Part() { gsl_cheb_free(s); }
};

namespace {

double trampoline(double x, void* p) { return (*static_cast<const std::function<double(double)>*>(p))(x); }

}  // namespace

ChebSeries::ChebSeries(const std::function<cplx(double)>& f, double a, double b, std::size_t order) {
    if (!(b > a)) throw Error("chebyshev interval must have b > a");
    std::function<double(double)> fr = [&](double x) { return f(x).real(); };
    std::function<double(double)> fi = [&](double x) { return f(x).imag(); };
    auto re = std::make_shared<Part>(order);
    auto im = std::make_shared<Part>(order);
    gsl_function Fr{&trampoline, &fr}, Fi{&trampoline, &fi};
    gsl_cheb_init(re->s, &Fr, a, b);
    gsl_cheb_init(im->s, &Fi, a, b);
    // drop roundoff-level coefficients, they only feed noise into derivatives
    double top = 0.0;
    for (std::size_t k = 0; k <= order; ++k) top = std::max({top, std::abs(re->s->c[k]), std::abs(im->s->c[k])});
    for (std::size_t k = 0; k <= order; ++k) {
        if (std::abs(re->s->c[k]) < 1e-15 * top) re->s->c[k] = 0.0;
        if (std::abs(im->s->c[k]) < 1e-15 * top) im->s->c[k] = 0.0;
    }
    re_ = std::move(re);
    im_ = std::move(im);
}

ChebSeries ChebSeries::constant(cplx v, double a, double b, std::size_t order) {
    return ChebSeries([v](double) { return v; }, a, b, order);
}

cplx ChebSeries::operator()(double t) const {
    if (!re_) return {};
    return {gsl_cheb_eval(re_->s, t), gsl_cheb_eval(im_->s, t)};
}

namespace {

template <class Op>
std::shared_ptr<const ChebSeries::Part> transform(const ChebSeries::Part& src, Op op) {
    auto out = std::make_shared<ChebSeries::Part>(gsl_cheb_order(src.s));
    if (op(out->s, src.s) != GSL_SUCCESS) throw NumericalFailure("chebyshev transform failed");
    return out;
}

}  // namespace

ChebSeries ChebSeries::derivative() const {
    ChebSeries r;
    if (!re_) return r;
    r.re_ = transform(*re_, gsl_cheb_calc_deriv);
    r.im_ = transform(*im_, gsl_cheb_calc_deriv);
    return r;
}

ChebSeries ChebSeries::integral() const {
    ChebSeries r;
    if (!re_) return r;
    r.re_ = transform(*re_, gsl_cheb_calc_integ);
    r.im_ = transform(*im_, gsl_cheb_calc_integ);
    return r;
}

ChebSeries ChebSeries::scaled(cplx s) const {
    ChebSeries r;
    if (!re_) return r;
    const std::size_t n = gsl_cheb_order(re_->s);
    auto re = std::make_shared<Part>(n);
    auto im = std::make_shared<Part>(n);
    for (auto* p : {re->s, im->s}) {
        p->a = re_->s->a;
        p->b = re_->s->b;
        p->order_sp = re_->s->order_sp;
    }
    for (std::size_t k = 0; k <= n; ++k) {
        const cplx c = s * cplx(re_->s->c[k], im_->s->c[k]);
        re->s->c[k] = c.real();
        im->s->c[k] = c.imag();
    }
    r.re_ = std::move(re);
    r.im_ = std::move(im);
    return r;
}

double ChebSeries::lo() const { return re_ ? re_->s->a : 0.0; }
double ChebSeries::hi() const { return re_ ? re_->s->b : 0.0; }

}  // namespace asym::wave
