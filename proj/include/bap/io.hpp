#pragma once

#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "instance.hpp"

namespace bap {

/// Malformed instance or solution file; message carries the 1-based line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

namespace detail {

/// Whitespace tokenizer over a text stream with line tracking. '#' starts a
/// comment running to the end of the line; blank lines are skipped. A
/// leading "# name:" comment is captured as the instance label.
class TokenReader {
public:
    explicit TokenReader(std::istream& in) : in_(in) {}

    std::optional<std::string> next() {
        while (pos_ >= line_.size()) {
            if (!std::getline(in_, line_)) return std::nullopt;
            ++line_no_;
            handle_comment();
            pos_ = 0;
            skip_spaces();
        }
        const std::size_t start = pos_;
        while (pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos_])))
            ++pos_;
        std::string tok = line_.substr(start, pos_ - start);
        skip_spaces();
        return tok;
    }

    std::string expect(const char* what) {
        auto tok = next();
        if (!tok) throw ParseError(std::string("unexpected end of file, expected ") + what,
                                   line_no_);
        return *tok;
    }

    long long expect_int(const char* what) {
        const std::string tok = expect(what);
        try {
            std::size_t used = 0;
            const long long v = std::stoll(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw ParseError("expected integer " + std::string(what) + ", got '" + tok + "'",
                             line_no_);
        }
    }

    double expect_real(const char* what) {
        const std::string tok = expect(what);
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw ParseError("expected number " + std::string(what) + ", got '" + tok + "'",
                             line_no_);
        }
    }

    int line() const { return line_no_; }
    const std::string& captured_name() const { return name_; }

private:
    void handle_comment() {
        const std::size_t hash = line_.find('#');
        if (hash == std::string::npos) return;
        const std::string comment = line_.substr(hash + 1);
        const std::size_t tag = comment.find("name:");
        if (name_.empty() && tag != std::string::npos) {
            std::size_t s = tag + 5;
            while (s < comment.size() && std::isspace(static_cast<unsigned char>(comment[s])))
                ++s;
            std::size_t e = comment.size();
            while (e > s && std::isspace(static_cast<unsigned char>(comment[e - 1]))) --e;
            name_ = comment.substr(s, e - s);
        }
        line_.erase(hash);
    }

    void skip_spaces() {
        while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_])))
            ++pos_;
    }

    std::istream& in_;
    std::string line_;
    std::size_t pos_ = 0;
    int line_no_ = 0;
    std::string name_;
};

inline void write_points(std::ostream& out, const char* label,
                         const std::vector<Point>& pts) {
    out << label << "\n";
    std::ostringstream line;
    line.precision(17);
    for (const Point& p : pts) {
        line.str("");
        line << p.x << " " << p.y;
        out << line.str() << "\n";
    }
}

inline std::vector<Point> read_points(TokenReader& r, const char* label, int count) {
    const std::string head = r.expect(label);
    if (head != label)
        throw ParseError(std::string("expected point list '") + label + "', got '" + head + "'",
                         r.line());
    std::vector<Point> pts(count);
    for (auto& p : pts) {
        p.x = r.expect_real("point coordinate");
        p.y = r.expect_real("point coordinate");
    }
    return pts;
}

}  // namespace detail

/// Text format:
///   line 1: `BAP <m> <n>`, then sections `C` (m rows of m integers),
///   `D` (n rows), `Q` (m*m blocks in (i,j) order, each n rows of n
///   integers, row k column l), and an optional `POINTS` section with the
///   four labelled point lists of a euclidean instance. `#` starts a
///   comment; blank lines are ignored. The writer records the instance name
///   in a `# name:` comment, which the reader recognizes.
inline void write_instance(const BapInstance& inst, std::ostream& out) {
    if (!inst.name().empty()) out << "# name: " << inst.name() << "\n";
    const int m = inst.m(), n = inst.n();
    out << "BAP " << m << " " << n << "\n";
    out << "C\n";
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) out << (j ? " " : "") << inst.c(i, j);
        out << "\n";
    }
    out << "D\n";
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) out << (l ? " " : "") << inst.d(k, l);
        out << "\n";
    }
    out << "Q\n";
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            for (int k = 0; k < n; ++k) {
                for (int l = 0; l < n; ++l) out << (l ? " " : "") << inst.q(i, j, k, l);
                out << "\n";
            }
        }
    }
    if (inst.points()) {
        out << "POINTS\n";
        detail::write_points(out, "A", inst.points()->a);
        detail::write_points(out, "B", inst.points()->b);
        detail::write_points(out, "U", inst.points()->u);
        detail::write_points(out, "V", inst.points()->v);
    }
}

inline void write_instance(const BapInstance& inst, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    write_instance(inst, out);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline BapInstance read_instance(std::istream& in, const std::string& fallback_name = "") {
    detail::TokenReader r(in);
    const std::string magic = r.expect("BAP header");
    if (magic != "BAP") throw ParseError("expected 'BAP <m> <n>' header", r.line());
    const long long m64 = r.expect_int("m"), n64 = r.expect_int("n");
    if (m64 < 1 || n64 < 1 || m64 > n64)
        throw ParseError("invalid dimensions (need 1 <= m <= n)", r.line());
    // Q holds m*m*n*n entries; refuse files that would allocate absurd amounts.
    const int128 q_entries = int128(m64) * m64 * n64 * n64;
    if (q_entries > 250'000'000LL)
        throw ParseError("instance too large (m*m*n*n entries over the reader limit)",
                         r.line());
    const int m = static_cast<int>(m64), n = static_cast<int>(n64);

    const auto section = [&](const char* label) {
        const std::string head = r.expect(label);
        if (head != label)
            throw ParseError(std::string("expected section '") + label + "', got '" + head + "'",
                             r.line());
    };

    section("C");
    std::vector<long long> c(static_cast<std::size_t>(m) * m);
    for (auto& v : c) v = r.expect_int("C entry");
    section("D");
    std::vector<long long> d(static_cast<std::size_t>(n) * n);
    for (auto& v : d) v = r.expect_int("D entry");
    section("Q");
    std::vector<long long> q(static_cast<std::size_t>(m) * m * n * n);
    for (auto& v : q) v = r.expect_int("Q entry");

    std::optional<PointSets> points;
    if (auto tok = r.next()) {
        if (*tok != "POINTS")
            throw ParseError("unexpected trailing token '" + *tok + "'", r.line());
        PointSets pts;
        pts.a = detail::read_points(r, "A", m);
        pts.b = detail::read_points(r, "B", m);
        pts.u = detail::read_points(r, "U", n);
        pts.v = detail::read_points(r, "V", n);
        if (auto extra = r.next())
            throw ParseError("unexpected trailing token '" + *extra + "'", r.line());
        points = std::move(pts);
    }

    std::string name = r.captured_name();
    if (name.empty()) name = fallback_name;
    try {
        return BapInstance(m, n, std::move(q), std::move(c), std::move(d), std::move(name),
                           std::move(points));
    } catch (const std::exception& e) {
        throw ParseError(e.what(), r.line());
    }
}

inline BapInstance read_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path.string());
    return read_instance(in, path.stem().string());
}

/// Solution file: one line with the m values of pi, one with the n values of
/// phi. Comments and blank lines are tolerated on read.
inline void write_solution(const Solution& s, std::ostream& out) {
    for (int i = 0; i < s.m(); ++i) out << (i ? " " : "") << s.pi(i);
    out << "\n";
    for (int k = 0; k < s.n(); ++k) out << (k ? " " : "") << s.phi(k);
    out << "\n";
}

inline void write_solution(const Solution& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    write_solution(s, out);
}

inline Solution read_solution(std::istream& in, int m, int n) {
    detail::TokenReader r(in);
    std::vector<int> pi(m), phi(n);
    for (auto& v : pi) v = static_cast<int>(r.expect_int("pi entry"));
    for (auto& v : phi) v = static_cast<int>(r.expect_int("phi entry"));
    try {
        return Solution(std::move(pi), std::move(phi));
    } catch (const std::exception& e) {
        throw ParseError(e.what(), r.line());
    }
}

inline Solution read_solution(const std::filesystem::path& path, int m, int n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open solution file: " + path.string());
    return read_solution(in, m, n);
}

}  // namespace bap
