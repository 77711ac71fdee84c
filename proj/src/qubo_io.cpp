#include "wavequbo/qubo_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace wavequbo {

namespace {

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_qubo_text(std::ostream& out, const QuboProblem& q) {
    const Matrix m = compact_qubo(q);
    out << "QUBO " << q.r() << ' ' << format17(q.offset) << '\n';
    for (int i = 0; i < q.r(); ++i)
        for (int j = i; j < q.r(); ++j)
            if (m(i, j) != 0.0) out << i << ' ' << j << ' ' << format17(m(i, j)) << '\n';
}

std::string qubo_to_text(const QuboProblem& q) {
    std::ostringstream os;
    write_qubo_text(os, q);
    return os.str();
}

QuboProblem read_qubo_text(std::istream& in) {
    std::string tag;
    int r = -1;
    double offset = 0.0;
    if (!(in >> tag >> r >> offset) || tag != "QUBO" || r < 0)
        throw PreconditionError("read_qubo_text: missing or malformed 'QUBO <r> <offset>' header");
    QuboProblem q;
    q.Q = Matrix::Zero(r, r);
    q.L = Vector::Zero(r);
    q.offset = offset;
    int i = 0, j = 0;
    double v = 0.0;
    while (in >> i >> j >> v) {
        if (i < 0 || j < i || j >= r)
            throw PreconditionError("read_qubo_text: bad index pair " + std::to_string(i) + " " + std::to_string(j));
        if (i == j) {
            q.L(i) = v;
        } else {
            q.Q(i, j) = v;
            q.Q(j, i) = v;
        }
    }
    if (!in.eof()) throw PreconditionError("read_qubo_text: trailing garbage after entries");
    return q;
}

QuboProblem qubo_from_text(const std::string& text) {
    std::istringstream is(text);
    return read_qubo_text(is);
}

}  // namespace wavequbo
