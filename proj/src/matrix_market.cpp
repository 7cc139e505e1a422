#include "sps/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace sps {

namespace {

struct Header {
    bool coordinate = false;
    bool complex_field = false;
    enum class Symmetry { general, symmetric, hermitian, skew_symmetric } symmetry =
        Symmetry::general;
};

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

Header parse_header(const std::string& line, long lineno) {
    std::istringstream ss(line);
    std::string banner, object, format, field, symmetry;
    ss >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || lower(object) != "matrix")
        throw MatrixMarketError("not a MatrixMarket matrix file", lineno);
    Header h;
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (format == "coordinate")
        h.coordinate = true;
    else if (format != "array")
        throw MatrixMarketError("unsupported format '" + format + "'", lineno);
    if (field == "complex")
        h.complex_field = true;
    else if (field != "real" && field != "integer")
        throw MatrixMarketError("unsupported field '" + field + "'", lineno);
    if (symmetry == "general")
        h.symmetry = Header::Symmetry::general;
    else if (symmetry == "symmetric")
        h.symmetry = Header::Symmetry::symmetric;
    else if (symmetry == "hermitian")
        h.symmetry = Header::Symmetry::hermitian;
    else if (symmetry == "skew-symmetric")
        h.symmetry = Header::Symmetry::skew_symmetric;
    else
        throw MatrixMarketError("unsupported symmetry '" + symmetry + "'", lineno);
    return h;
}

bool next_content_line(std::istream& in, std::string& line, long& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '%') continue;
        return true;
    }
    return false;
}

double parse_finite(std::istringstream& ss, long lineno) {
    double v;
    if (!(ss >> v)) throw MatrixMarketError("malformed numeric value", lineno);
    if (!std::isfinite(v)) throw MatrixMarketError("non-finite value", lineno);
    return v;
}

template <typename T>
void set_with_symmetry(DenseMatrix<T>& a, index_t i, index_t j, T v, Header::Symmetry sym,
                       std::vector<char>& seen, long lineno) {
    char& flag = seen[static_cast<std::size_t>(i) * a.cols() + j];
    if (flag) throw MatrixMarketError("duplicate entry", lineno);
    flag = 1;
    a(i, j) = v;
    if (sym != Header::Symmetry::general && i != j) {
        T mirror = v;
        if (sym == Header::Symmetry::hermitian) mirror = conj_of(v);
        if (sym == Header::Symmetry::skew_symmetric) mirror = -v;
        a(j, i) = mirror;
    }
}

template <typename T>
DenseMatrix<T> read_body(std::istream& in, const Header& h, long& lineno) {
    std::string line;
    if (!next_content_line(in, line, lineno))
        throw MatrixMarketError("missing size line", lineno);
    std::istringstream ss(line);
    long m = 0, n = 0, nnz = 0;
    if (!(ss >> m >> n)) throw MatrixMarketError("malformed size line", lineno);
    if (h.coordinate && !(ss >> nnz)) throw MatrixMarketError("malformed size line", lineno);
    if (m < 1 || n < 1) throw MatrixMarketError("matrix dimensions must be positive", lineno);

    DenseMatrix<T> a(static_cast<index_t>(m), static_cast<index_t>(n));

    const auto read_value = [&](std::istringstream& vs) -> T {
        const double re = parse_finite(vs, lineno);
        if constexpr (is_complex_v<T>) {
            const double im = parse_finite(vs, lineno);
            return T{re, im};
        } else {
            return T{re};
        }
    };

    if (h.coordinate) {
        std::vector<char> seen(static_cast<std::size_t>(m) * n, 0);
        for (long t = 0; t < nnz; ++t) {
            if (!next_content_line(in, line, lineno))
                throw MatrixMarketError("unexpected end of file", lineno);
            std::istringstream vs(line);
            long i = 0, j = 0;
            if (!(vs >> i >> j)) throw MatrixMarketError("malformed coordinate line", lineno);
            if (i < 1 || i > m || j < 1 || j > n)
                throw MatrixMarketError("index out of bounds", lineno);
            set_with_symmetry(a, static_cast<index_t>(i - 1), static_cast<index_t>(j - 1),
                              read_value(vs), h.symmetry, seen, lineno);
        }
    } else {
        // array format stores the lower triangle only under symmetric storage
        const bool lower_only = h.symmetry != Header::Symmetry::general;
        for (long j = 0; j < n; ++j) {
            for (long i = lower_only ? j : 0; i < m; ++i) {
                if (h.symmetry == Header::Symmetry::skew_symmetric && i == j) continue;
                if (!next_content_line(in, line, lineno))
                    throw MatrixMarketError("unexpected end of file", lineno);
                std::istringstream vs(line);
                const T v = read_value(vs);
                a(static_cast<index_t>(i), static_cast<index_t>(j)) = v;
                if (lower_only && i != j) {
                    T mirror = v;
                    if (h.symmetry == Header::Symmetry::hermitian) mirror = conj_of(v);
                    if (h.symmetry == Header::Symmetry::skew_symmetric) mirror = -v;
                    a(static_cast<index_t>(j), static_cast<index_t>(i)) = mirror;
                }
            }
        }
    }
    return a;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

template <typename T>
void write_dense(const std::string& path, const DenseMatrix<T>& a) {
    std::ostringstream out;
    out << "%%MatrixMarket matrix array " << (is_complex_v<T> ? "complex" : "real")
        << " general\n";
    out << a.rows() << " " << a.cols() << "\n";
    for (index_t j = 0; j < a.cols(); ++j)
        for (index_t i = 0; i < a.rows(); ++i) {
            out << format_value(real_of(a(i, j)));
            if constexpr (is_complex_v<T>) out << " " << format_value(imag_of(a(i, j)));
            out << "\n";
        }
    write_text(path, out.str());
}

template <typename T>
void write_csr(const std::string& path, const SparseMatrixCsr<T>& x) {
    std::ostringstream out;
    out << "%%MatrixMarket matrix coordinate " << (is_complex_v<T> ? "complex" : "real")
        << " general\n";
    out << x.num_rows << " " << x.num_cols << " " << x.nnz() << "\n";
    for (index_t i = 0; i < x.num_rows; ++i)
        for (index_t t = x.row_offsets[static_cast<std::size_t>(i)];
             t < x.row_offsets[static_cast<std::size_t>(i) + 1]; ++t) {
            const T v = x.values[static_cast<std::size_t>(t)];
            out << (i + 1) << " " << (x.column_ids[static_cast<std::size_t>(t)] + 1) << " "
                << format_value(real_of(v));
            if constexpr (is_complex_v<T>) out << " " << format_value(imag_of(v));
            out << "\n";
        }
    write_text(path, out.str());
}

}  // namespace

DenseVariant read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    long lineno = 0;
    std::string line;
    if (!std::getline(in, line)) throw MatrixMarketError("empty file", 1);
    ++lineno;
    const Header h = parse_header(line, lineno);
    if (h.complex_field) return read_body<std::complex<double>>(in, h, lineno);
    return read_body<double>(in, h, lineno);
}

void write_matrix_market(const std::string& path, const DenseMatrix<double>& a) {
    write_dense(path, a);
}
void write_matrix_market(const std::string& path, const DenseMatrix<std::complex<double>>& a) {
    write_dense(path, a);
}
void write_matrix_market(const std::string& path, const SparseMatrixCsr<double>& x) {
    write_csr(path, x);
}
void write_matrix_market(const std::string& path,
                         const SparseMatrixCsr<std::complex<double>>& x) {
    write_csr(path, x);
}

}  // namespace sps
