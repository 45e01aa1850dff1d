#include "moufang/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace moufang {

std::string to_string(const Rational& q)
{
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            return false;
        }
    }
    return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole)
{
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
        digits.remove_prefix(1);
    }
    if (!all_digits(digits)) {
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    std::string buf(s.front() == '+' ? s.substr(1) : s);
    return mpz_class(buf, 10);
}

Rational parse_decimal(std::string_view text)
{
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = s.substr(e + 1);
        mpz_class ez = parse_integer(exp_part.empty() ? std::string_view("x") : exp_part, text);
        if (!ez.fits_slong_p() || abs(ez) > 4096) {
            throw std::invalid_argument("decimal exponent out of range: '" + std::string(text) + "'");
        }
        exponent = ez.get_si();
        s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = s.substr(0, dot);
        std::string_view frac_part = s.substr(dot + 1);
        if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
            (int_part.empty() && frac_part.empty())) {
            throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
        }
        digits = std::string(int_part) + std::string(frac_part);
        exponent -= static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(s)) {
            throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
        }
        digits = std::string(s);
    }
    Rational value(mpz_class(digits, 10));
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent < 0) {
        value /= Rational(scale);
    } else {
        value *= Rational(scale);
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    if (text.empty()) {
        throw std::invalid_argument("empty rational");
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(text.substr(0, slash), text);
        std::string_view den_text = text.substr(slash + 1);
        if (den_text.empty() || den_text.front() == '-' || den_text.front() == '+') {
            throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
        }
        mpz_class den = parse_integer(den_text, text);
        if (den == 0) {
            throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
        }
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    if (text.find_first_of(".eE") != std::string_view::npos) {
        return parse_decimal(text);
    }
    return Rational(parse_integer(text, text));
}

} // namespace moufang
