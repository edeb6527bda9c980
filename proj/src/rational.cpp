#include "opalab/rational.hpp"

namespace opalab {

namespace {

bool valid_rational_text(const std::string& text) {
    if (text.empty()) return false;
    std::size_t slashes = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '-') {
            // sign allowed at the start of numerator or denominator
            if (i != 0 && text[i - 1] != '/') return false;
        } else if (c == '/') {
            if (++slashes > 1) return false;
            if (i == 0 || i + 1 == text.size()) return false;
        } else if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

}  // namespace

Rational rational_from_string(const std::string& text) {
    if (!valid_rational_text(text)) {
        throw std::invalid_argument("not a valid rational (want \"p/q\"): \"" +
                                    text + "\"");
    }
    mpq_class value;
    if (mpq_set_str(value.get_mpq_t(), text.c_str(), 10) != 0) {
        throw std::invalid_argument("unparseable rational: \"" + text + "\"");
    }
    if (sgn(value.get_den()) == 0) {
        throw std::invalid_argument("rational with zero denominator: \"" +
                                    text + "\"");
    }
    value.canonicalize();
    return value;
}

std::string rational_to_string(const Rational& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string gaussian_to_string(const GaussianRational& value) {
    if (value.is_real()) return rational_to_string(value.re);
    return rational_to_string(value.re) + "+" + rational_to_string(value.im) +
           "*i";
}

}  // namespace opalab
