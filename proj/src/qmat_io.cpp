#include "quatern/qmat_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace quatern {

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0.0
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_qmat(std::ostream& os, const QMat& a) {
    os << "QMAT v1 " << a.rows() << " " << a.cols() << "\n";
    for (long i = 0; i < a.size(); ++i) {
        const Quat& q = a.data()[i];
        os << format_double(q.s) << " " << format_double(q.x) << " " << format_double(q.y) << " "
           << format_double(q.z) << "\n";
    }
}

void write_qmat_file(const std::string& path, const QMat& a) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_qmat(os, a);
}

namespace {

bool parse_double(const std::string& tok, double& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

}  // namespace

QMat read_qmat(std::istream& is) {
    std::string line;
    long lineno = 0;

    if (!std::getline(is, line)) throw ParseError("empty QMAT stream", 1);
    ++lineno;
    std::istringstream head(line);
    std::string magic, version;
    long rows = -1, cols = -1;
    if (!(head >> magic >> version >> rows >> cols) || magic != "QMAT" || version != "v1")
        throw ParseError("expected header 'QMAT v1 <rows> <cols>'", lineno);
    if (rows <= 0 || cols <= 0) throw ParseError("non-positive dimensions in header", lineno);

    QMat a(rows, cols);
    for (long i = 0; i < rows * cols; ++i) {
        if (!std::getline(is, line))
            throw ParseError("truncated: expected " + std::to_string(rows * cols) +
                                 " entry lines, got " + std::to_string(i),
                             lineno + 1);
        ++lineno;
        std::istringstream ls(line);
        std::string ts, tx, ty, tz, extra;
        if (!(ls >> ts >> tx >> ty >> tz)) throw ParseError("expected 4 components", lineno);
        if (ls >> extra) throw ParseError("trailing tokens after 4 components", lineno);
        Quat q;
        if (!parse_double(ts, q.s) || !parse_double(tx, q.x) || !parse_double(ty, q.y) ||
            !parse_double(tz, q.z))
            throw ParseError("non-numeric component", lineno);
        a.data()[i] = q;
    }

    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            throw ParseError("surplus content after last entry", lineno);
    }
    return a;
}

QMat read_qmat_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_qmat(is);
}

}  // namespace quatern
