#pragma once

// Angle flags accept plain floats or pi expressions: "pi", "pi/2", "3pi/4",
// "2*pi", "-pi/8", "1.5708".

#include <cctype>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qdc {

inline double parse_angle_expr(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s.empty()) throw std::invalid_argument("empty angle expression");

    const size_t pi_pos = s.find("pi");
    if (pi_pos == std::string::npos) {
        const char* begin = s.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end != begin + s.size())
            throw std::invalid_argument("malformed angle expression '" + std::string(text) + "'");
        return v;
    }

    double coef = 1.0;
    std::string head = s.substr(0, pi_pos);
    if (!head.empty() && head.back() == '*') head.pop_back();
    if (head == "-") {
        coef = -1.0;
    } else if (!head.empty()) {
        const char* begin = head.c_str();
        char* end = nullptr;
        coef = std::strtod(begin, &end);
        if (end != begin + head.size())
            throw std::invalid_argument("malformed angle expression '" + std::string(text) + "'");
    }

    double divisor = 1.0;
    const std::string tail = s.substr(pi_pos + 2);
    if (!tail.empty()) {
        if (tail[0] != '/' || tail.size() < 2)
            throw std::invalid_argument("malformed angle expression '" + std::string(text) + "'");
        const char* begin = tail.c_str() + 1;
        char* end = nullptr;
        divisor = std::strtod(begin, &end);
        if (end != tail.c_str() + tail.size() || divisor == 0.0)
            throw std::invalid_argument("malformed angle expression '" + std::string(text) + "'");
    }
    return coef * std::numbers::pi / divisor;
}

}  // namespace qdc
