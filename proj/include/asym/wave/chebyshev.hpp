#pragma once

// Complex Chebyshev series on [a, b] (GSL real series for each part).

#include <complex>
#include <functional>
#include <memory>

namespace asym::wave {

using cplx = std::complex<double>;

class ChebSeries {
public:
    ChebSeries() = default;
    ChebSeries(const std::function<cplx(double)>& f, double a, double b, std::size_t order);
    static ChebSeries constant(cplx v, double a, double b, std::size_t order);

    [[nodiscard]] cplx operator()(double t) const;
    [[nodiscard]] ChebSeries derivative() const;
    /// Antiderivative vanishing at a.
    [[nodiscard]] ChebSeries integral() const;
    [[nodiscard]] ChebSeries scaled(cplx s) const;
    [[nodiscard]] double lo() const;
    [[nodiscard]] double hi() const;
    [[nodiscard]] bool empty() const { return !re_; }

    struct Part;  // one GSL real series

private:
    std::shared_ptr<const Part> re_, im_;
};

}  // namespace asym::wave
