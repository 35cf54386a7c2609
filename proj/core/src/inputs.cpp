#include "tlift/inputs.hpp"

#include <cctype>
#include <stdexcept>

namespace tlift {

namespace {

[[noreturn]] void bad(const std::string& expr, const std::string& why) {
    throw std::invalid_argument("cannot parse form '" + expr + "': " + why);
}

int parse_int(const std::string& s, const std::string& expr) {
    if (s.empty()) bad(expr, "missing integer");
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        bad(expr, "bad integer '" + s + "'");
    }
    if (used != s.size()) bad(expr, "bad integer '" + s + "'");
    return v;
}

QSeries one(int terms) {
    QSeries s;
    s.coeffs.assign(static_cast<std::size_t>(terms), Rational(0));
    s.coeffs[0] = 1;
    return s;
}

QSeries parse_product(const std::string& text, const std::string& expr, int terms) {
    static const std::pair<const char*, StandardForm> names[] = {
        {"Delta12", StandardForm::Delta}, {"delta12", StandardForm::Delta}, {"Delta", StandardForm::Delta},
        {"E4", StandardForm::E4},         {"E6", StandardForm::E6},         {"j", StandardForm::j},
        {"J", StandardForm::J}};
    if (text == "1") return one(terms + 8);
    if (text.empty()) bad(expr, "empty factor list");
    QSeries result = one(terms + 8);
    std::size_t pos = 0;
    while (pos < text.size()) {
        bool matched = false;
        for (const auto& [name, which] : names) {
            std::string n(name);
            if (text.compare(pos, n.size(), n) != 0) continue;
            pos += n.size();
            int e = 1;
            if (pos < text.size() && text[pos] == '^') {
                std::size_t start = ++pos;
                if (pos < text.size() && text[pos] == '-') ++pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                e = parse_int(text.substr(start, pos - start), expr);
            }
            QSeries f = standard_series(which, terms);
            result = mul(result, e >= 0 ? pow(f, e) : inverse(pow(f, -e)));
            matched = true;
            break;
        }
        if (!matched) bad(expr, "unknown factor at '" + text.substr(pos) + "'");
    }
    return result;
}

QSeries eisenstein_product(int w, int terms) {
    const QSeries e4 = standard_series(StandardForm::E4, terms);
    const QSeries e6 = standard_series(StandardForm::E6, terms);
    int b = (w % 4 == 0) ? 0 : 1;
    int a = (w - 6 * b) / 4;
    QSeries r = pow(e4, a);
    return b ? mul(r, e6) : r;
}

int reference_r(int k) {
    int r = 1;
    while (!(12 * r - 2 * k == 4 || 12 * r - 2 * k >= 6)) ++r;
    return r;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

}  // namespace

QSeries parse_form_expression(const std::string& expr, int terms) {
    std::string text;
    for (char c : expr)
        if (!std::isspace(static_cast<unsigned char>(c))) text += c;
    if (text.empty()) bad(expr, "empty expression");
    std::size_t slash = text.find('/');
    if (slash != std::string::npos && text.find('/', slash + 1) != std::string::npos) bad(expr, "more than one '/'");
    if (slash == std::string::npos) return parse_product(text, expr, terms);
    QSeries num = parse_product(text.substr(0, slash), expr, terms);
    QSeries den = parse_product(text.substr(slash + 1), expr, terms);
    return div(num, den);
}

QSeries reference_form(int k, int terms) {
    if (k < 0) throw std::invalid_argument("reference_form: k must be non-negative");
    if (k == 0) return standard_series(StandardForm::J, terms);
    int r = reference_r(k);
    QSeries den = pow(standard_series(StandardForm::Delta, terms), r);
    return div(eisenstein_product(12 * r - 2 * k, terms), den);
}

std::string reference_form_name(int k) {
    if (k == 0) return "J";
    int r = reference_r(k);
    int w = 12 * r - 2 * k;
    int b = (w % 4 == 0) ? 0 : 1;
    int a = (w - 6 * b) / 4;
    std::string s;
    if (a > 0) s += a == 1 ? "E4" : "E4^" + std::to_string(a);
    if (b) s += "E6";
    s += "/Delta";
    if (r > 1) s += "^" + std::to_string(r);
    return s;
}

InputSpec parse_input(const std::string& raw, int terms) {
    const std::string text = trim(raw);
    InputSpec in;
    in.text = text;
    auto colon = text.find(':');
    std::string head = colon == std::string::npos ? text : text.substr(0, colon);
    std::string rest = colon == std::string::npos ? std::string() : text.substr(colon + 1);
    if (colon != std::string::npos && head == "raised") {
        in.k = parse_int(trim(rest), text);
        if (in.k < 0) bad(text, "k must be non-negative");
        in.series = reference_form(in.k, terms);
        return in;
    }
    if (colon != std::string::npos && head == "poincare") {
        auto comma = rest.find(',');
        if (comma == std::string::npos) bad(text, "expected poincare:k,m");
        in.kind = InputSpec::Kind::Poincare;
        in.k = parse_int(trim(rest.substr(0, comma)), text);
        in.m = parse_int(trim(rest.substr(comma + 1)), text);
        if (in.k < 1 || in.m < 1) bad(text, "need k >= 1 and m >= 1");
        return in;
    }
    if (colon != std::string::npos && head != "weaklyhol") bad(text, "unknown input kind '" + head + "'");
    in.series = parse_form_expression(colon == std::string::npos ? text : rest, terms);
    if (in.series.weight > 0 && in.series.weight % 2 != 0) bad(text, "odd weight");
    in.k = in.series.weight <= 0 ? -in.series.weight / 2 : 0;
    return in;
}

}  // namespace tlift
