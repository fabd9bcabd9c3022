#include "tcc/io.h"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "tcc/errors.h"

namespace tcc {

namespace {

static_assert(std::endian::native == std::endian::little, "state files assume a little-endian host");

std::string color_string(Color c) { return std::string(1, color_char(c)); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidLattice(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
    throw std::invalid_argument("expected a number or {\"re\", \"im\"}, got " + j.dump());
}

// Number, {"uniform": z}, or an array of numbers / objects with an optional index key.
std::vector<Complex> per_item(const Json& j, std::size_t count, const char* index_key, const char* what) {
    if (j.is_number()) return std::vector<Complex>(count, j.get<double>());
    if (j.is_object() && j.contains("uniform")) return std::vector<Complex>(count, complex_from_json(j.at("uniform")));
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": expected a number, {\"uniform\": ..} or an array");
    std::vector<Complex> out(count, 0.0);
    const bool indexed = !j.empty() && j.front().is_object() && j.front().contains(index_key);
    if (!indexed && j.size() != count) {
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(count) + " entries, got " +
                                    std::to_string(j.size()));
    }
    for (std::size_t k = 0; k < j.size(); ++k) {
        const Json& e = j[k];
        std::size_t at = k;
        if (indexed) {
            if (!e.is_object() || !e.contains(index_key)) {
                throw std::invalid_argument(std::string(what) + ": every entry needs \"" + index_key + "\"");
            }
            at = e.at(index_key).get<std::size_t>();
            if (at >= count) throw std::invalid_argument(std::string(what) + ": index " + std::to_string(at) + " out of range");
        }
        out[at] = complex_from_json(e);
    }
    return out;
}

void dump_into(const Json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    switch (j.type()) {
        case Json::value_t::number_float: {
            const double x = j.get<double>();
            if (!std::isfinite(x)) {
                out += "null";
                break;
            }
            std::string s = format_double(x);
            if (s.find_first_of(".e") == std::string::npos) s += ".0";
            out += s;
            break;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                break;
            }
            const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
            out += flat ? "[" : "[\n";
            for (std::size_t k = 0; k < j.size(); ++k) {
                if (!flat) out += pad;
                dump_into(j[k], out, indent + 2);
                if (k + 1 < j.size()) out += flat ? ", " : ",\n";
            }
            if (!flat) out += "\n" + std::string(static_cast<std::size_t>(indent), ' ');
            out += "]";
            break;
        }
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            std::size_t k = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++k) {
                out += pad + Json(it.key()).dump() + ": ";
                dump_into(it.value(), out, indent + 2);
                if (k + 1 < j.size()) out += ",\n";
            }
            out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
            break;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string dump_json(const Json& j) {
    std::string out;
    dump_into(j, out, 0);
    out += "\n";
    return out;
}

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const Colex2& colex) {
    Json j;
    j["kind"] = "colex2";
    j["closed"] = colex.closed;
    j["vertices"] = colex.num_vertices;
    Json edges = Json::array();
    for (const auto& e : colex.edges) edges.push_back(Json::array({e.a, e.b, color_string(e.color)}));
    j["edges"] = edges;
    Json faces = Json::array();
    for (const auto& f : colex.faces) {
        faces.push_back(Json{{"verts", f.verts}, {"color", color_string(f.color)}, {"partial", f.partial}});
    }
    j["faces"] = faces;
    return j;
}

Json to_json(const DualTriangulation& dual) {
    Json j;
    j["kind"] = "dual";
    j["closed"] = dual.closed;
    Json sites = Json::array();
    for (Color c : dual.site_colors) sites.push_back(color_string(c));
    j["sites"] = sites;
    Json tris = Json::array();
    for (const auto& t : dual.triangles) tris.push_back(Json::array({t[0], t[1], t[2]}));
    j["triangles"] = tris;
    return j;
}

Json to_json(const BorderedColex& bordered) {
    Json j = to_json(bordered.colex);
    j["kind"] = "bordered";
    j["source"] = to_json(bordered.source);
    return j;
}

Json to_json(const LatticeReport& report) {
    Json j;
    j["vertices"] = report.vertices;
    j["edges"] = report.edges;
    j["faces"] = report.faces;
    j["euler_characteristic"] = report.euler_characteristic;
    j["betti1"] = report.betti1 ? Json(*report.betti1) : Json(nullptr);
    j["all_passed"] = report.all_passed();
    Json checks = Json::array();
    for (const auto& c : report.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["checks"] = checks;
    return j;
}

Colex2 colex_from_json(const Json& j) {
    try {
        Colex2 c;
        c.closed = field(j, "closed").get<bool>();
        c.num_vertices = field(j, "vertices").get<std::size_t>();
        for (const auto& e : field(j, "edges")) {
            if (!e.is_array() || e.size() != 3) throw InvalidLattice("edge entries must be [a, b, color]");
            c.edges.push_back(Edge{e[0].get<std::size_t>(), e[1].get<std::size_t>(), parse_color(e[2].get<std::string>())});
        }
        for (const auto& f : field(j, "faces")) {
            Face face;
            face.verts = field(f, "verts").get<std::vector<std::size_t>>();
            face.color = parse_color(field(f, "color").get<std::string>());
            face.partial = f.value("partial", false);
            c.faces.push_back(std::move(face));
        }
        return c;
    } catch (const Json::exception& e) {
        throw InvalidLattice(std::string("malformed colex: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw InvalidLattice(std::string("malformed colex: ") + e.what());
    }
}

DualTriangulation dual_from_json(const Json& j) {
    try {
        DualTriangulation d;
        d.closed = field(j, "closed").get<bool>();
        for (const auto& s : field(j, "sites")) d.site_colors.push_back(parse_color(s.get<std::string>()));
        for (const auto& t : field(j, "triangles")) {
            if (!t.is_array() || t.size() != 3) throw InvalidLattice("triangle entries must be [r, g, b] site indices");
            d.triangles.push_back({t[0].get<std::size_t>(), t[1].get<std::size_t>(), t[2].get<std::size_t>()});
        }
        return d;
    } catch (const Json::exception& e) {
        throw InvalidLattice(std::string("malformed dual: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw InvalidLattice(std::string("malformed dual: ") + e.what());
    }
}

LatticeFile lattice_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
        throw InvalidLattice("lattice file needs a \"kind\" of colex2, dual or bordered");
    }
    LatticeFile f;
    f.kind = j.at("kind").get<std::string>();
    if (f.kind == "colex2") {
        f.colex = colex_from_json(j);
        f.dual = build_dual(*f.colex);
    } else if (f.kind == "bordered") {
        f.colex = colex_from_json(j);
        f.dual = dual_from_json(field(j, "source"));
        if (f.dual.num_triangles() != f.colex->num_vertices || f.dual.num_sites() != f.colex->faces.size()) {
            throw InvalidLattice("bordered lattice: source dual does not match the colex");
        }
    } else if (f.kind == "dual") {
        f.dual = dual_from_json(j);
        if (!f.dual.closed) {
            BorderedColex b = build_bordered(f.dual);
            f.colex = std::move(b.colex);
            f.dual = std::move(b.source);
        }
    } else {
        throw InvalidLattice("unknown lattice kind \"" + f.kind + "\"");
    }
    return f;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw std::runtime_error(path + ": not valid JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

CouplingSet couplings_from_json(const Json& j, const DualTriangulation& dual) {
    if (!j.is_object() || !j.contains("J")) throw std::invalid_argument("couplings: need an object with \"J\"");
    CouplingSet c;
    c.beta = j.value("beta", 1.0);
    c.J = per_item(j.at("J"), dual.num_triangles(), "tri", "J");
    c.h = j.contains("h") ? per_item(j.at("h"), dual.num_sites(), "site", "h")
                          : std::vector<Complex>(dual.num_sites(), 0.0);
    return c;
}

FieldSpec fields_from_json(const Json& j, std::size_t num_vertices, std::size_t num_faces) {
    if (!j.is_object() || !j.contains("J") || !j.contains("h")) {
        throw std::invalid_argument("fields: need an object with \"J\" and \"h\"");
    }
    auto real = [](const Json& v, std::size_t count, const char* what) {
        if (v.is_number()) return std::vector<double>(count, v.get<double>());
        if (!v.is_array() || v.size() != count) {
            throw std::invalid_argument(std::string("fields: \"") + what + "\" needs " + std::to_string(count) + " numbers");
        }
        return v.get<std::vector<double>>();
    };
    FieldSpec f;
    f.beta = j.value("beta", 1.0);
    f.J = real(j.at("J"), num_vertices, "J");
    f.h = real(j.at("h"), num_faces, "h");
    return f;
}

ProductState product_state_from_json(const Json& j, std::size_t num_qubits) {
    if (j.is_object() && j.contains("cosh_sinh")) return ProductState::cosh_sinh(num_qubits, j.at("cosh_sinh").get<double>());
    if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array() || j.at("coeffs").size() != num_qubits) {
        throw std::invalid_argument("coefficients: need {\"cosh_sinh\": s} or " + std::to_string(num_qubits) +
                                    " entries under \"coeffs\"");
    }
    ProductState p;
    for (const auto& e : j.at("coeffs")) {
        const auto v = e.get<std::vector<double>>();
        if (v.size() != 4) throw std::invalid_argument("coefficients: each entry is [c0_re, c0_im, c1_re, c1_im]");
        p.coeffs.push_back({Complex(v[0], v[1]), Complex(v[2], v[3])});
    }
    return p;
}

std::vector<MeasurementBasis> bases_from_json(const Json& j, std::size_t num_qubits) {
    auto one = [](const Json& e) {
        if (e.is_string()) {
            if (e == "z") return MeasurementBasis::z();
            if (e == "x") return MeasurementBasis::x();
            throw std::invalid_argument("basis: unknown name " + e.dump());
        }
        const auto v = e.get<std::vector<double>>();
        if (v.size() != 8) throw std::invalid_argument("basis: explicit entries need 8 numbers");
        return MeasurementBasis{{Complex(v[0], v[1]), Complex(v[2], v[3])}, {Complex(v[4], v[5]), Complex(v[6], v[7])}};
    };
    const Json& list = j.is_object() && j.contains("bases") ? j.at("bases") : j;
    if (!list.is_array()) return std::vector<MeasurementBasis>(num_qubits, one(list));
    if (list.size() != num_qubits) {
        throw std::invalid_argument("basis: expected " + std::to_string(num_qubits) + " entries, got " +
                                    std::to_string(list.size()));
    }
    std::vector<MeasurementBasis> out;
    for (const auto& e : list) out.push_back(one(e));
    return out;
}

void write_state_file(const std::string& path, const StateVector& state) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    std::vector<double> raw;
    raw.reserve(2 * state.dimension());
    for (const auto& a : state.amplitudes) {
        raw.push_back(a.real());
        raw.push_back(a.imag());
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write failed for " + path);
}

StateVector read_state_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    const std::size_t dim = bytes.size() / (2 * sizeof(double));
    if (bytes.size() % (2 * sizeof(double)) != 0 || dim == 0 || !std::has_single_bit(dim)) {
        throw std::runtime_error(path + ": size is not a power-of-two array of complex float64");
    }
    StateVector s(static_cast<std::size_t>(std::countr_zero(dim)));
    for (std::size_t i = 0; i < dim; ++i) {
        double re, im;
        std::memcpy(&re, bytes.data() + 16 * i, 8);
        std::memcpy(&im, bytes.data() + 16 * i + 8, 8);
        s.amplitudes[i] = {re, im};
    }
    return s;
}

}  // namespace tcc
