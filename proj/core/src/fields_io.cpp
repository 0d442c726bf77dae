#include "ossfem/fields_io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "ossfem/mesh_io.hpp"

namespace ossfem {

namespace {

std::string next_token(std::istream& in) {
    std::string tok;
    if (!(in >> tok)) throw std::invalid_argument("fields file: unexpected end of file");
    return tok;
}

void expect(std::istream& in, const std::string& key) {
    if (next_token(in) != key || next_token(in) != "=")
        throw std::invalid_argument("fields file: expected '" + key + " ='");
}

double number(std::istream& in) {
    const std::string tok = next_token(in);
    double v = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw std::invalid_argument("fields file: bad number '" + tok + "'");
    return v;
}

long integer(std::istream& in) {
    const std::string tok = next_token(in);
    long v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw std::invalid_argument("fields file: bad integer '" + tok + "'");
    return v;
}

}  // namespace

void save_fields(const FieldsFile& f, std::ostream& out) {
    out << "schema_version = 1\n";
    out << "order = " << f.order << "\n";
    out << "mode = " << f.mode << "\n";
    out << "lambda = " << format_double(f.lambda) << "\n";
    out << "field_count = " << f.fields.size() << "\n";
    for (const auto& fd : f.fields) {
        if (fd.values.size() % fd.components != 0)
            throw std::invalid_argument("fields file: value count not divisible by components");
        out << "field = " << fd.name << " " << fd.components << " "
            << fd.values.size() / fd.components << "\n";
        for (size_t i = 0; i < fd.values.size(); ++i)
            out << format_double(fd.values[i]) << ((i + 1) % fd.components == 0 ? "\n" : " ");
    }
}

void save_fields(const FieldsFile& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    save_fields(f, out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

FieldsFile load_fields(std::istream& in) {
    FieldsFile f;
    expect(in, "schema_version");
    if (integer(in) != 1) throw std::invalid_argument("fields file: unsupported schema_version");
    expect(in, "order");
    f.order = static_cast<int>(integer(in));
    expect(in, "mode");
    f.mode = static_cast<int>(integer(in));
    expect(in, "lambda");
    f.lambda = number(in);
    expect(in, "field_count");
    const long nf = integer(in);
    for (long i = 0; i < nf; ++i) {
        expect(in, "field");
        FieldData fd;
        fd.name = next_token(in);
        fd.components = static_cast<int>(integer(in));
        const long count = integer(in);
        if (fd.components < 1 || count < 0) throw std::invalid_argument("fields file: bad field header");
        fd.values.resize(static_cast<size_t>(count) * fd.components);
        for (auto& v : fd.values) v = number(in);
        f.fields.push_back(std::move(fd));
    }
    return f;
}

FieldsFile load_fields(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return load_fields(in);
}

}  // namespace ossfem
