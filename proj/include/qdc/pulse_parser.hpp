#pragma once

// Parser and printer for the line-oriented pulse file format:
//
//   # comment
//   rot   <A|C|H|S> <x|y|z|-x|-y> <angle-degrees>
//   jevolve <k>/2J
//   grad  z
//   refocus <A|C|H|S>       # shorthand for rot <spin> x 180
//
// Mnemonics are case-insensitive. H aliases A (the 1H ancilla) and C aliases
// S (the 13C system). Diagnostics carry 1-based line and column numbers.

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "qdc/pulse.hpp"

namespace qdc {

struct ParseError : std::runtime_error {
    int line;
    int column;
    std::string detail;

    ParseError(int l, int c, std::string msg)
        : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) +
                             ": " + msg),
          line(l),
          column(c),
          detail(std::move(msg)) {}
};

namespace detail {

struct Token {
    std::string text;
    int column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;  // comment runs to end of line
        size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
               line[j] != '#')
            ++j;
        out.push_back({std::string(line.substr(i, j - i)), static_cast<int>(i + 1)});
        i = j;
    }
    return out;
}

inline std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

inline Spin parse_spin(const Token& t, int line) {
    const std::string s = lower(t.text);
    if (s == "a" || s == "h") return Spin::Ancilla;
    if (s == "c" || s == "s") return Spin::System;
    throw ParseError(line, t.column, "unknown spin label '" + t.text + "'");
}

inline Axis parse_axis(const Token& t, int line) {
    const std::string s = lower(t.text);
    if (s == "x") return Axis::PlusX;
    if (s == "-x") return Axis::MinusX;
    if (s == "y") return Axis::PlusY;
    if (s == "-y") return Axis::MinusY;
    if (s == "z") return Axis::Z;
    throw ParseError(line, t.column, "unknown rotation axis '" + t.text + "'");
}

inline double parse_angle(const Token& t, int line) {
    const char* begin = t.text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + t.text.size())
        throw ParseError(line, t.column, "malformed angle '" + t.text + "'");
    if (!(v > -360.0) || !(v <= 360.0))
        throw ParseError(line, t.column, "angle must lie in (-360, 360] degrees");
    return v;
}

inline int parse_jevolve_arg(const Token& t, int line) {
    const std::string s = lower(t.text);
    const size_t slash = s.find('/');
    if (slash == std::string::npos || s.substr(slash) != "/2j")
        throw ParseError(line, t.column, "jevolve duration must have the form <k>/2J");
    int k = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + slash, k);
    if (ec != std::errc{} || p != s.data() + slash || k <= 0)
        throw ParseError(line, t.column, "jevolve multiple must be a positive integer");
    return k;
}

}  // namespace detail

/// Parses pulse-file text into an event list, in source order.
inline PulseSequence parse_sequence(std::string_view text, std::string name = "") {
    PulseSequence seq{std::move(name), {}};
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t eol = text.find('\n', pos);
        const std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

        const auto tokens = detail::tokenize(line);
        if (tokens.empty()) continue;

        const std::string mnemonic = detail::lower(tokens[0].text);
        auto expect_argc = [&](size_t n) {
            if (tokens.size() != n + 1)
                throw ParseError(line_no, tokens[0].column,
                                 "'" + mnemonic + "' expects " + std::to_string(n) +
                                     " argument(s), got " + std::to_string(tokens.size() - 1));
        };

        if (mnemonic == "rot") {
            expect_argc(3);
            seq.events.push_back(Rotation{detail::parse_spin(tokens[1], line_no),
                                          detail::parse_axis(tokens[2], line_no),
                                          detail::parse_angle(tokens[3], line_no)});
        } else if (mnemonic == "jevolve") {
            expect_argc(1);
            seq.events.push_back(JEvolution{detail::parse_jevolve_arg(tokens[1], line_no)});
        } else if (mnemonic == "grad") {
            expect_argc(1);
            if (detail::lower(tokens[1].text) != "z")
                throw ParseError(line_no, tokens[1].column, "only z gradients are supported");
            seq.events.push_back(GradientZ{});
        } else if (mnemonic == "refocus") {
            expect_argc(1);
            seq.events.push_back(RefocusPiX{detail::parse_spin(tokens[1], line_no)});
        } else {
            throw ParseError(line_no, tokens[0].column, "unknown mnemonic '" + tokens[0].text + "'");
        }
    }
    return seq;
}

namespace detail {

inline std::string format_angle(double v) {
    std::array<char, 32> buf{};
    const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), p);
}

inline const char* spin_letter(Spin s) { return s == Spin::Ancilla ? "H" : "C"; }

inline const char* axis_name(Axis a) {
    switch (a) {
        case Axis::PlusX: return "x";
        case Axis::MinusX: return "-x";
        case Axis::PlusY: return "y";
        case Axis::MinusY: return "-y";
        case Axis::Z: return "z";
    }
    return "?";
}

}  // namespace detail

/// Prints a sequence back into the file format. Angles use the shortest
/// round-tripping decimal form, so parse(render(s)) reproduces s exactly.
inline std::string render(const PulseSequence& seq) {
    std::string out;
    for (const PulseEvent& e : seq.events) {
        if (const auto* r = std::get_if<Rotation>(&e)) {
            out += "rot ";
            out += detail::spin_letter(r->target);
            out += ' ';
            out += detail::axis_name(r->axis);
            out += ' ';
            out += detail::format_angle(r->angle_deg);
        } else if (const auto* j = std::get_if<JEvolution>(&e)) {
            out += "jevolve " + std::to_string(j->half_j_multiples) + "/2J";
        } else if (std::get_if<GradientZ>(&e)) {
            out += "grad z";
        } else if (const auto* f = std::get_if<RefocusPiX>(&e)) {
            out += "refocus ";
            out += detail::spin_letter(f->target);
        }
        out += '\n';
    }
    return out;
}

}  // namespace qdc
