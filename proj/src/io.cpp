#include "bzap/io.hpp"

#include "bzap/errors.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace bzap::io {

namespace {

template <class T>
T read_token(std::istream& in, const char* what) {
    T value{};
    if (!(in >> value)) throw FormatError(std::string("failed to read ") + what);
    return value;
}

Index read_dimension(std::istream& in, const char* what) {
    const long long v = read_token<long long>(in, what);
    if (v < 0) throw FormatError(std::string("negative ") + what);
    return static_cast<Index>(v);
}

class PrecisionGuard {
public:
    explicit PrecisionGuard(std::ostream& out) : out_(out), prec_(out.precision(17)) {}
    ~PrecisionGuard() { out_.precision(prec_); }

private:
    std::ostream& out_;
    std::streamsize prec_;
};

} // namespace

void write_vector(std::ostream& out, const Vector& v) {
    PrecisionGuard guard(out);
    out << v.size() << '\n';
    for (Index i = 0; i < v.size(); ++i) out << v(i) << '\n';
}

Vector read_vector(std::istream& in) {
    const Index n = read_dimension(in, "vector length");
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = read_token<double>(in, "vector entry");
    return v;
}

void write_matrix(std::ostream& out, const Matrix& M) {
    PrecisionGuard guard(out);
    out << M.rows() << ' ' << M.cols() << '\n';
    for (Index i = 0; i < M.rows(); ++i) {
        for (Index j = 0; j < M.cols(); ++j) {
            if (j > 0) out << ' ';
            out << M(i, j);
        }
        out << '\n';
    }
}

Matrix read_matrix(std::istream& in) {
    const Index m = read_dimension(in, "matrix row count");
    const Index n = read_dimension(in, "matrix column count");
    Matrix M(m, n);
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < n; ++j) M(i, j) = read_token<double>(in, "matrix entry");
    }
    return M;
}

void save_vector(const std::filesystem::path& path, const Vector& v) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open " + path.string() + " for writing");
    write_vector(out, v);
}

Vector load_vector(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    return read_vector(in);
}

void save_matrix(const std::filesystem::path& path, const Matrix& M) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open " + path.string() + " for writing");
    write_matrix(out, M);
}

Matrix load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    return read_matrix(in);
}

} // namespace bzap::io
