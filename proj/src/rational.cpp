#include "asym/rational.hpp"

#include <cctype>
#include <sstream>

namespace asym {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw ParseError("empty rational");
    bool negative = false;
    std::string_view body = s;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    Rational value;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        std::string_view num = body.substr(0, slash);
        std::string_view den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed rational '" + std::string(s) + "'");
        mpz_class d{std::string(den)};
        if (d == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
        value = Rational(mpz_class(std::string(num)), d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        std::string_view whole = body.substr(0, dot);
        std::string_view frac = body.substr(dot + 1);
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
            (whole.empty() && frac.empty()))
            throw ParseError("malformed decimal '" + std::string(s) + "'");
        std::string digits = std::string(whole) + std::string(frac);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        value = Rational(mpz_class(digits.empty() ? "0" : digits), den);
    } else {
        if (!all_digits(body)) throw ParseError("malformed rational '" + std::string(s) + "'");
        value = Rational(mpz_class(std::string(body)));
    }
    value.canonicalize();
    if (negative) value = -value;
    return value;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

long to_long(const Rational& q) {
    if (!is_integer(q)) throw std::domain_error("rational " + q.get_str() + " is not an integer");
    if (!q.get_num().fits_slong_p()) throw std::domain_error("integer " + q.get_str() + " out of range");
    return q.get_num().get_si();
}

QComplex& QComplex::operator/=(const QComplex& o) {
    Rational den = o.norm2();
    if (sgn(den) == 0) throw std::domain_error("division by zero in Q(i)");
    Rational r = (re * o.re + im * o.im) / den;
    Rational i = (im * o.re - re * o.im) / den;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

QComplex parse_qcomplex(std::string_view text) {
    std::string_view s = trim(text);
    if (auto comma = s.find(','); comma != std::string_view::npos)
        return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
    return QComplex(parse_rational(s));
}

std::string to_string(const QComplex& z) {
    if (z.is_real()) return z.re.get_str();
    return z.re.get_str() + "," + z.im.get_str();
}

std::ostream& operator<<(std::ostream& os, const QComplex& z) {
    if (z.is_real()) return os << z.re;
    return os << '(' << z.re << (sgn(z.im) < 0 ? " - " : " + ") << abs(z.im) << "i)";
}

QComplex pow(const QComplex& z, unsigned n) {
    QComplex result(1);
    QComplex base = z;
    while (n > 0) {
        if (n & 1u) result *= base;
        base *= base;
        n >>= 1u;
    }
    return result;
}

}  // namespace asym
