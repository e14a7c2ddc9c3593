#include "asym/circle/quantize.hpp"

#include "asym/core/errors.hpp"
#include "asym/simd/kernels.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <numbers>

namespace asym::circle {

namespace {

class Fft {
public:
    Fft(int n, int sign) : n_(n) {
        buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(n)));
        if (!buf_) throw NumericalFailure("fftw_malloc failed");
        plan_ = fftw_plan_dft_1d(n, buf_, buf_, sign, FFTW_ESTIMATE);
        if (!plan_) {
            fftw_free(buf_);
            throw NumericalFailure("fftw plan creation failed");
        }
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;
    ~Fft() {
        fftw_destroy_plan(plan_);
        fftw_free(buf_);
    }

    cplx* data() { return reinterpret_cast<cplx*>(buf_); }
    void run() { fftw_execute(plan_); }
    [[nodiscard]] int size() const { return n_; }

private:
    int n_;
    fftw_complex* buf_;
    fftw_plan plan_;
};

long freq_of(int idx, int n) { return idx < n / 2 ? idx : idx - n; }

}  // namespace

void QuantizedAction::validate() const {
    if (grid_size < 4 || (grid_size & (grid_size - 1)) != 0) throw ConfigError("grid_size must be a power of two >= 4");
    if (freq_cut < 0 || 2 * freq_cut >= grid_size)
        throw ConfigError("aliasing guard: freq_cut must be below grid_size / 2");
    if (!(excision.scale > 0.0)) throw ConfigError("excision scale must be positive");
}

std::vector<double> grid_points(int n) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = 2.0 * std::numbers::pi * i / n;
    return x;
}

std::vector<cplx> plane_wave(int n, long k) {
    std::vector<cplx> u(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        long ph = (k % n) * i % n;
        u[static_cast<std::size_t>(i)] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(ph) / n);
    }
    return u;
}

std::vector<cplx> quantize_apply(const CircleSymbol& p, const std::vector<cplx>& samples, const QuantizedAction& action,
                                 std::size_t depth) {
    action.validate();
    const int n = action.grid_size;
    if (static_cast<int>(samples.size()) != n) throw ConfigError("quantize_apply: sample count differs from grid_size");
    if (depth > p.known_limit()) throw LevelOverflow("quantize_apply: depth exceeds the known components");
    depth = std::min(depth, p.depth());

    Fft fwd(n, FFTW_FORWARD), inv(n, FFTW_BACKWARD);
    std::copy(samples.begin(), samples.end(), fwd.data());
    fwd.run();
    std::vector<cplx> uhat(fwd.data(), fwd.data() + n);
    for (auto& v : uhat) v /= static_cast<double>(n);

    std::vector<cplx> out(static_cast<std::size_t>(n));
    std::vector<cplx> coeff(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < depth; ++j) {
        const Component& c = p.terms[j];
        if (coeff_is_zero(c)) continue;
        const bool poly = is_polynomial_component(p, j);
        const double d = p.degree(j).get_d();
        for (Dir dir : {Dir::plus, Dir::minus}) {
            const TrigFraction& a = c[dir];
            if (a.is_zero()) continue;
            cplx* w = inv.data();
            bool any = false;
            for (int idx = 0; idx < n; ++idx) {
                const long k = freq_of(idx, n);
                double mult = 0.0;
                const bool in_dir = dir == Dir::plus ? k > 0 : k < 0;
                if (std::labs(k) <= action.freq_cut) {
                    const double ak = std::fabs(static_cast<double>(k));
                    if (in_dir)
                        mult = (poly ? 1.0 : action.excision(ak)) * std::pow(ak, d);
                    else if (k == 0 && poly && dir == Dir::plus && d == 0.0)
                        mult = 1.0;
                }
                w[idx] = uhat[static_cast<std::size_t>(idx)] * mult;
                any = any || mult != 0.0;
            }
            if (!any) continue;
            inv.run();
            for (int i = 0; i < n; ++i) coeff[static_cast<std::size_t>(i)] = a(2.0 * std::numbers::pi * i / n);
            simd::cmul_acc(out.data(), coeff.data(), w, static_cast<std::size_t>(n));
        }
    }
    return out;
}

std::vector<cplx> quantize_apply(const CircleSymbol& p, const std::vector<cplx>& samples, const QuantizedAction& action) {
    return quantize_apply(p, samples, action, p.depth());
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw Error("loglog_slope: need at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ProbeResult remainder_probe(const CircleSymbol& p, const CircleSymbol& q, int J, const std::vector<long>& frequencies,
                            const QuantizedAction& action) {
    if (J < 0 || static_cast<std::size_t>(J) > q.depth()) throw LevelOverflow("remainder_probe: parametrix too short");
    ProbeResult r;
    std::vector<double> ks, errs;
    for (long k : frequencies) {
        auto u = plane_wave(action.grid_size, k);
        auto v = quantize_apply(q, u, action, static_cast<std::size_t>(J));
        auto w = quantize_apply(p, v, action);
        const double e = simd::max_abs_diff(w.data(), u.data(), u.size());
        r.rows.push_back({k, e});
        if (k != 0 && e > 0.0) {
            ks.push_back(std::fabs(static_cast<double>(k)));
            errs.push_back(e);
        }
    }
    r.slope = ks.size() >= 2 ? loglog_slope(ks, errs) : std::nan("");
    return r;
}

}  // namespace asym::circle
