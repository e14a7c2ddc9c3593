#pragma once

// Half-line operators L = D_t^m + sum_r a_r(t) D_t^{m-r}, D_t = -i d/dt, with coefficients
// in the classical class of step l*+1, and the amplitude recursion for solutions
// e^{i mu T} c(t), T = t^{l*+1}/(l*+1).

#include "asym/rational.hpp"
#include "asym/symbol/polyhom.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace asym::ode {

using cplx = std::complex<double>;
using symbol::PolyhomExpansion;
using symbol::Tail;

/// D_t = kDtSign * i * d/dt.
inline constexpr int kDtSign = -1;

using CoeffExpansion = PolyhomExpansion<QComplex, Rational>;

struct HalfLineOperator {
    int m = 1;
    Rational lstar{0};
    std::vector<CoeffExpansion> coeffs;  // coeffs[r-1] is a_r, anchor r*l*, step l*+1

    [[nodiscard]] Rational step() const { return Rational(lstar + 1); }
    /// a_{r,k}: coefficient of t^{r l* - k(l*+1)} in a_r.
    [[nodiscard]] QComplex a(int r, int k) const;
    /// Throws HypothesisViolation on inconsistent anchors/steps or l* <= -1.
    void validate() const;
};

/// Dense polynomial with exact coefficients, c[k] multiplies tau^k.
struct QPoly {
    std::vector<QComplex> c;

    [[nodiscard]] int degree() const { return static_cast<int>(c.size()) - 1; }
    [[nodiscard]] QComplex operator()(const QComplex& x) const;
    [[nodiscard]] cplx operator()(cplx x) const;
    [[nodiscard]] QPoly derivative() const;
};

struct RootInfo {
    cplx value;
    bool real = false;
    bool simple = false;
    std::optional<Rational> exact;  // set when the root is rational and verified exactly
    double residual = 0.0;          // |l0(mu)|
    double slope = 0.0;             // |l0'(mu)|
};

struct CharData {
    QPoly l0;
    QPoly l1;
    std::vector<RootInfo> roots;  // sorted by real part
};

CharData char_data(const HalfLineOperator& op, double tol = 1e-9);

/// Delta(mu) = -(l* mu l0''(mu)/2 + i l1(mu)) / l0'(mu).
QComplex delta_exponent(const HalfLineOperator& op, const QComplex& mu);
cplx delta_exponent(const HalfLineOperator& op, cplx mu);

/// Amplitude with coefficient type K and degrees in K (anchor Delta may be complex).
template <class K>
using Amplitude = PolyhomExpansion<K, K>;

/// e^{-i mu T} L(e^{i mu T} c) as an expansion anchored at anchor(c) + m l*.
template <class K>
Amplitude<K> apply_conjugated(const HalfLineOperator& op, const K& mu, const Amplitude<K>& c);

/// e_0..e_N with L(e^{i mu T} t^delta) = e^{i mu T} sum_k e_k t^{delta + m l* - k(l*+1)}.
template <class K>
std::vector<K> conjugate_expand(const HalfLineOperator& op, const K& mu, const K& delta, int N);

template <class K>
struct FundSolution {
    K mu;
    K delta;
    Amplitude<K> amplitude;  // c_0 = 1, anchor delta, step l*+1
};

/// c_0..c_{J-1}; the defect of the J-term amplitude vanishes through degree delta + m l* - J(l*+1).
template <class K>
FundSolution<K> build_fundamental(const HalfLineOperator& op, const K& mu, int J);

struct FundamentalBranch {
    RootInfo root;
    std::optional<FundSolution<QComplex>> exact;
    FundSolution<cplx> numeric;
};

/// One branch per root, increasing; throws HypothesisViolation unless all m roots are real and simple.
std::vector<FundamentalBranch> fundamental_system(const HalfLineOperator& op, int J);

FundSolution<cplx> to_numeric(const FundSolution<QComplex>& s);

/// e^{i mu T} chi(t/scale) sum_{j<J} c_j t^{delta - j s}.
cplx evaluate_solution(const FundSolution<cplx>& sol, const HalfLineOperator& op, double t, int J,
                       const symbol::ExcisionCutoff& cutoff = symbol::ExcisionCutoff{});

/// Real-to-complex conversions used by the templates.
inline cplx to_cplx(const QComplex& z) { return z.to_complex(); }
inline cplx to_cplx(const cplx& z) { return z; }
template <class K>
K from_q(const QComplex& z);
template <>
inline QComplex from_q<QComplex>(const QComplex& z) {
    return z;
}
template <>
inline cplx from_q<cplx>(const QComplex& z) {
    return z.to_complex();
}

}  // namespace asym::ode
