#include "ossfem/mesh_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ossfem {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

// The document is a whitespace-separated token stream of
// "key = value..." groups; array keys are followed by their count's worth
// of numeric tokens.
class TokenReader {
public:
    explicit TokenReader(std::istream& in) : in_(in) {}

    std::string next() {
        std::string tok;
        if (!(in_ >> tok)) throw std::invalid_argument("mesh file: unexpected end of file");
        return tok;
    }

    void expect_header(const std::string& key) {
        if (next() != key || next() != "=")
            throw std::invalid_argument("mesh file: expected '" + key + " ='");
    }

    double number() {
        const std::string tok = next();
        double v = 0.0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
            throw std::invalid_argument("mesh file: bad number '" + tok + "'");
        return v;
    }

    long integer() {
        const std::string tok = next();
        long v = 0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
            throw std::invalid_argument("mesh file: bad integer '" + tok + "'");
        return v;
    }

private:
    std::istream& in_;
};

}  // namespace

void save_mesh(const Mesh& mesh, std::ostream& out) {
    out << "schema_version = 1\n";
    out << "domain_tag = " << to_string(mesh.domain_tag) << "\n";
    out << "vertex_count = " << mesh.vertex_count() << "\n";
    out << "vertices =\n";
    for (const auto& p : mesh.vertices)
        out << format_double(p.x) << " " << format_double(p.y) << "\n";
    out << "triangle_count = " << mesh.triangle_count() << "\n";
    out << "triangles =\n";
    for (const auto& t : mesh.triangles)
        out << t.v[0] << " " << t.v[1] << " " << t.v[2] << "\n";
    out << "boundary_vertex_count = " << mesh.boundary_vertices.size() << "\n";
    out << "boundary_vertices =\n";
    for (auto v : mesh.boundary_vertices) out << v << "\n";
}

void save_mesh(const Mesh& mesh, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    save_mesh(mesh, f);
    if (!f) throw std::runtime_error("write failed: " + path);
}

Mesh load_mesh(std::istream& in) {
    TokenReader r(in);
    Mesh mesh;

    r.expect_header("schema_version");
    if (r.integer() != 1) throw std::invalid_argument("mesh file: unsupported schema_version");
    r.expect_header("domain_tag");
    mesh.domain_tag = domain_tag_from_string(r.next());

    r.expect_header("vertex_count");
    const long nv = r.integer();
    if (nv < 0) throw std::invalid_argument("mesh file: negative vertex_count");
    r.expect_header("vertices");
    mesh.vertices.resize(static_cast<size_t>(nv));
    for (auto& p : mesh.vertices) {
        p.x = r.number();
        p.y = r.number();
    }

    r.expect_header("triangle_count");
    const long nt = r.integer();
    if (nt < 0) throw std::invalid_argument("mesh file: negative triangle_count");
    r.expect_header("triangles");
    mesh.triangles.resize(static_cast<size_t>(nt));
    for (auto& t : mesh.triangles)
        for (auto& v : t.v) v = static_cast<std::int32_t>(r.integer());

    r.expect_header("boundary_vertex_count");
    const long nb = r.integer();
    if (nb < 0) throw std::invalid_argument("mesh file: negative boundary_vertex_count");
    r.expect_header("boundary_vertices");
    mesh.boundary_vertices.resize(static_cast<size_t>(nb));
    for (auto& v : mesh.boundary_vertices) v = static_cast<std::int32_t>(r.integer());

    // h_max is derived, not stored.
    mesh.h_max = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t)
        mesh.h_max = std::max(mesh.h_max, triangle_longest_edge(mesh, t));
    return mesh;
}

Mesh load_mesh(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open: " + path);
    return load_mesh(f);
}

}  // namespace ossfem
