#include "robusta/rational.hpp"

#include <boost/integer/common_factor_rt.hpp>

#include <cctype>
#include <limits>

namespace robusta {

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (num.empty() || den.empty())
            throw std::invalid_argument("malformed rational: " + text);
        BigInt n(num), d(den);
        if (d == 0) throw std::invalid_argument("zero denominator: " + text);
        return Rational(n, d);
    }

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot);
        std::string fp = s.substr(dot + 1);
        if (fp.empty()) fp = "0";
        for (char c : fp)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("malformed decimal: " + text);
        bool neg = !ip.empty() && ip[0] == '-';
        if (!ip.empty() && (ip[0] == '+' || ip[0] == '-')) ip.erase(0, 1);
        if (ip.empty()) ip = "0";
        BigInt whole(ip), frac(fp);
        BigInt den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        BigInt num = whole * den + frac;
        if (neg) num = -num;
        return Rational(num, den);
    }

    return Rational(BigInt(s));
}

std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

BigInt lcm_denominators(const std::vector<Rational>& values) {
    BigInt l = 1;
    for (const auto& v : values) l = boost::integer::lcm(l, BigInt(denominator(v)));
    return l;
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

std::int64_t to_int64(const Rational& r) {
    if (!is_integer(r)) throw std::invalid_argument("rational is not integral: " + rational_to_string(r));
    BigInt n = numerator(r);
    if (n > std::numeric_limits<std::int64_t>::max() / 4 ||
        n < std::numeric_limits<std::int64_t>::min() / 4)
        throw std::overflow_error("constant too large for zone arithmetic: " + n.str());
    return static_cast<std::int64_t>(n);
}

}  // namespace robusta
