#include "rmtheta/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace rmtheta {

namespace {

// Non-empty lines with comments stripped; bracketed elements stay one token
// even if they contain spaces.
std::vector<std::vector<std::string>> tokenize(std::string_view text) {
    std::vector<std::vector<std::string>> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (auto h = line.find('#'); h != std::string_view::npos)
            line = line.substr(0, h);
        std::vector<std::string> toks;
        std::string cur;
        int depth = 0;
        for (char ch : line) {
            if (ch == '[')
                ++depth;
            if (ch == ']')
                --depth;
            if (std::isspace(static_cast<unsigned char>(ch)) && depth == 0) {
                if (!cur.empty())
                    toks.push_back(std::move(cur));
                cur.clear();
            } else if (!std::isspace(static_cast<unsigned char>(ch))) {
                cur += ch;
            }
        }
        if (depth != 0)
            throw Error(Errc::SyntaxError, "unbalanced brackets in '" + std::string(line) + "'");
        if (!cur.empty())
            toks.push_back(std::move(cur));
        if (!toks.empty())
            lines.push_back(std::move(toks));
    }
    return lines;
}

mpz_class to_integer(const std::string &s) {
    mpz_class z;
    if (s.empty() || z.set_str(s, 10) != 0)
        throw Error(Errc::SyntaxError, "bad integer '" + s + "'");
    return z;
}

int to_digit(const std::string &s, int max) {
    if (s.size() != 1 || s[0] < '0' || s[0] - '0' > max)
        throw Error(Errc::SyntaxError, "bad index '" + s + "'");
    return s[0] - '0';
}

void expect(bool ok, const std::string &what) {
    if (!ok)
        throw Error(Errc::SyntaxError, what);
}

} // namespace

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::Io, "cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::filesystem::path &path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size())))
        throw Error(Errc::Io, "cannot write " + path.string());
}

Field parse_field(std::string_view text, bool check_irreducible) {
    auto lines = tokenize(text);
    expect(!lines.empty() && lines.size() <= 2, "a field file has a prime line and at most one ext line");
    expect(lines[0].size() == 2 && lines[0][0] == "prime", "expected 'prime <p>'");
    Field f = Field::prime(to_integer(lines[0][1]));
    if (lines.size() == 1)
        return f;
    const auto &ext = lines[1];
    expect(ext.size() >= 4 && ext[0] == "ext", "expected 'ext <name> <c0> ... <cn>'");
    std::vector<mpz_class> modulus;
    for (std::size_t k = 2; k < ext.size(); ++k)
        modulus.push_back(to_integer(ext[k]));
    return f.extend(std::move(modulus), ext[1], check_irreducible);
}

std::string format_field(const Field &f) {
    std::string out = "prime " + f.characteristic().get_str() + "\n";
    if (f.is_extension()) {
        out += "ext " + f.generator_name();
        for (const auto &c : f.modulus())
            out += " " + c.get_str();
        out += "\n";
    }
    return out;
}

ThetaPoint4 parse_point4(std::string_view text, const Field &f) {
    std::array<std::optional<Element>, 16> c;
    std::size_t count = 0;
    for (const auto &t : tokenize(text)) {
        expect(t.size() == 4 && t[0] == "a", "expected 'a <i> <j> <element>'");
        Index u(to_digit(t[1], 3), to_digit(t[2], 3));
        expect(!c[u.ordinal()], "a " + t[1] + " " + t[2] + " given twice");
        c[u.ordinal()] = f.parse(t[3]);
        ++count;
    }
    if (count == 10) {
        std::array<Element, 10> reduced;
        for (std::size_t k = 0; k < 10; ++k) {
            auto &v = c[kReducedIndexes[k].ordinal()];
            expect(v.has_value(), "missing a " + kReducedIndexes[k].to_string());
            reduced[k] = *v;
        }
        return ThetaPoint4::from_reduced(reduced);
    }
    expect(count == 16, "a level-4 point file has 10 or 16 coordinates, got " + std::to_string(count));
    std::array<Element, 16> full;
    for (std::size_t k = 0; k < 16; ++k)
        full[k] = *c[k];
    return ThetaPoint4(std::move(full));
}

std::string format_point4(const ThetaPoint4 &p) {
    Field f = p.field();
    std::string out;
    for (Index u : kReducedIndexes)
        out += "a " + std::to_string(u.i) + " " + std::to_string(u.j) + " " + f.format(p[u]) + "\n";
    return out;
}

ThetaPoint2 parse_point2(std::string_view text, const Field &f) {
    std::array<std::optional<Element>, 4> c;
    for (const auto &t : tokenize(text)) {
        expect(t.size() == 4 && t[0] == "b", "expected 'b <i> <j> <element>'");
        std::size_t k = 2 * to_digit(t[1], 1) + to_digit(t[2], 1);
        expect(!c[k], "b " + t[1] + " " + t[2] + " given twice");
        c[k] = f.parse(t[3]);
    }
    std::array<Element, 4> b;
    for (std::size_t k = 0; k < 4; ++k) {
        expect(c[k].has_value(), "missing b " + std::to_string(k / 2) + " " + std::to_string(k % 2));
        b[k] = *c[k];
    }
    return ThetaPoint2(std::move(b));
}

std::string format_point2(const ThetaPoint2 &b) {
    Field f = b.field();
    std::string out;
    for (std::size_t k = 0; k < 4; ++k)
        out += "b " + std::to_string(k / 2) + " " + std::to_string(k % 2) + " " + f.format(b[k]) + "\n";
    return out;
}

RosenhainCurve parse_curve(std::string_view text, const Field &f) {
    auto lines = tokenize(text);
    expect(lines.size() == 1, "a curve file has exactly one line");
    const auto &t = lines[0];
    if (t[0] == "rosenhain") {
        expect(t.size() == 4, "expected 'rosenhain <l1> <l2> <l3>'");
        return RosenhainCurve({f.parse(t[1]), f.parse(t[2]), f.parse(t[3])});
    }
    expect(t[0] == "branch" && t.size() == 7, "expected 'rosenhain <l1> <l2> <l3>' or 'branch <e1> ... <e6>'");
    std::array<Element, 6> e;
    for (std::size_t k = 0; k < 6; ++k)
        e[k] = f.parse(t[k + 1]);
    return RosenhainCurve::from_branch_points(e);
}

std::string format_curve(const RosenhainCurve &c) {
    Field f = c.field();
    return "rosenhain " + f.format(c[0]) + " " + f.format(c[1]) + " " + f.format(c[2]) + "\n";
}

} // namespace rmtheta
