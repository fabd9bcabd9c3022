#include "tcc/pauli.h"

#include <string>

#include "tcc/errors.h"
#include "tcc/gf2.h"

namespace tcc {

namespace {

BitVec face_support(const Colex2& colex, std::size_t face) {
    return BitVec::from_indices(colex.num_vertices, colex.faces.at(face).verts);
}

std::vector<BitVec> vertex_columns(const Colex2& colex) {
    std::vector<BitVec> cols(colex.num_vertices, BitVec(colex.faces.size()));
    for (std::size_t f = 0; f < colex.faces.size(); ++f) {
        for (std::size_t v : colex.faces[f].verts) cols[v].flip(f);
    }
    return cols;
}

}  // namespace

PauliOp::PauliOp(BitVec xbits, BitVec zbits) : x(std::move(xbits)), z(std::move(zbits)) {
    if (x.size() != z.size()) throw std::invalid_argument("PauliOp: x and z lengths differ");
}

PauliOp& PauliOp::operator*=(const PauliOp& other) {
    x ^= other.x;
    z ^= other.z;
    return *this;
}

bool commutes(const PauliOp& a, const PauliOp& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("commutes: operator lengths " + std::to_string(a.size()) + " and " +
                                    std::to_string(b.size()) + " differ");
    }
    return a.x.dot(b.z) == a.z.dot(b.x);
}

StringNet StringNet::of_face(const Colex2& c, std::size_t face) { return StringNet{face_support(c, face)}; }

PauliOp face_operator(const Colex2& colex, std::size_t face, PauliKind kind) {
    if (face >= colex.faces.size()) throw std::out_of_range("face index " + std::to_string(face));
    const BitVec support = face_support(colex, face);
    if (kind == PauliKind::X) {
        if (colex.faces[face].partial) {
            throw RoleViolation("face " + std::to_string(face) + " is partial: only its Z operator exists");
        }
        return PauliOp::x_type(support);
    }
    return PauliOp::z_type(support);
}

PauliOp x_operator(const StringNet& net) { return PauliOp::x_type(net.gamma); }
PauliOp z_operator(const StringNet& net) { return PauliOp::z_type(net.gamma); }

FaceChain boundary(const StringNet& net, const Colex2& colex) {
    if (net.gamma.size() != colex.num_vertices) throw std::invalid_argument("boundary: net length mismatch");
    FaceChain out{BitVec(colex.faces.size())};
    for (std::size_t f = 0; f < colex.faces.size(); ++f) {
        bool parity = false;
        for (std::size_t v : colex.faces[f].verts) parity ^= net.gamma.get(v);
        if (parity) out.x.set(f);
    }
    return out;
}

bool is_closed(const StringNet& net, const Colex2& colex) { return boundary(net, colex).x.none(); }

BoundaryWitness is_boundary(const StringNet& net, const Colex2& colex) {
    if (net.gamma.size() != colex.num_vertices) throw std::invalid_argument("is_boundary: net length mismatch");
    std::vector<BitVec> cols;
    std::vector<std::size_t> face_of_col;
    for (std::size_t f = 0; f < colex.faces.size(); ++f) {
        if (colex.faces[f].partial) continue;
        cols.push_back(face_support(colex, f));
        face_of_col.push_back(f);
    }
    BoundaryWitness out;
    if (cols.empty()) {
        out.is_boundary = net.gamma.none();
        if (out.is_boundary) out.faces = BitVec(colex.faces.size());
        return out;
    }
    auto sol = solve_linear_map(cols, colex.num_vertices, net.gamma);
    if (!sol) return out;
    out.is_boundary = true;
    BitVec faces(colex.faces.size());
    for (std::size_t c : sol->indices()) faces.set(face_of_col[c]);
    out.faces = std::move(faces);
    return out;
}

std::size_t StabilizerSet::rank() const {
    if (generators.empty()) return 0;
    std::vector<BitVec> rows;
    rows.reserve(generators.size());
    for (const auto& g : generators) {
        BitVec row(2 * num_qubits);
        for (std::size_t i : g.op.x.indices()) row.set(i);
        for (std::size_t i : g.op.z.indices()) row.set(num_qubits + i);
        rows.push_back(std::move(row));
    }
    return gf2_rank(rows);
}

StabilizerSet stabilizer_set(const Colex2& colex) {
    StabilizerSet s;
    s.num_qubits = colex.num_vertices;
    for (std::size_t f = 0; f < colex.faces.size(); ++f) {
        if (!colex.faces[f].partial) {
            s.generators.push_back({face_operator(colex, f, PauliKind::X), StabilizerRole::x_face, f});
        }
    }
    for (std::size_t f = 0; f < colex.faces.size(); ++f) {
        s.generators.push_back({face_operator(colex, f, PauliKind::Z),
                                colex.faces[f].partial ? StabilizerRole::z_partial : StabilizerRole::z_face, f});
    }
    for (std::size_t i = 0; i < s.generators.size(); ++i) {
        for (std::size_t j = i + 1; j < s.generators.size(); ++j) {
            if (!commutes(s.generators[i].op, s.generators[j].op)) {
                throw InvalidLattice("stabilizer generators for faces " + std::to_string(s.generators[i].face) +
                                     " and " + std::to_string(s.generators[j].face) + " anticommute");
            }
        }
    }
    return s;
}

std::size_t encoded_qubits(const Colex2& colex) { return colex.num_vertices - stabilizer_set(colex).rank(); }

long encoded_qubits_from_euler(const Colex2& colex) {
    const long chi = static_cast<long>(colex.num_vertices) - static_cast<long>(colex.edges.size()) +
                     static_cast<long>(colex.faces.size());
    return 4 - 2 * chi;
}

BoundaryGroup::BoundaryGroup(const Colex2& colex) : num_vertices_(colex.num_vertices) {
    Gf2Eliminator elim(colex.num_vertices, colex.faces.size());
    for (std::size_t f = 0; f < colex.faces.size(); ++f) {
        if (colex.faces[f].partial) continue;
        BitVec v = face_support(colex, f);
        if (elim.insert(v)) {
            basis_.push_back(std::move(v));
            basis_faces_.push_back(f);
        }
    }
}

bool BoundaryGroup::contains(const BitVec& gamma) const {
    if (basis_.empty()) return gamma.none();
    Gf2Eliminator elim(num_vertices_, basis_.size());
    for (const auto& b : basis_) elim.insert(b);
    return elim.in_span(gamma);
}

void BoundaryGroup::for_each(const std::function<void(const BitVec&)>& visit, std::uint64_t begin,
                             std::uint64_t end) const {
    for_each_in_span(basis_, num_vertices_, visit, begin, end);
}

std::vector<BitVec> closed_net_basis(const Colex2& colex) {
    return decompose_linear_map(vertex_columns(colex), colex.faces.size()).kernel;
}

std::size_t homology_gap(const Colex2& colex) {
    return closed_net_basis(colex).size() - BoundaryGroup(colex).rank();
}

std::optional<StringNet> coset_representative(const Colex2& colex, const FaceChain& x) {
    if (x.x.size() != colex.faces.size()) throw std::invalid_argument("coset_representative: chain length mismatch");
    auto sol = solve_linear_map(vertex_columns(colex), colex.faces.size(), x.x);
    if (!sol) return std::nullopt;
    return StringNet{*sol};
}

}  // namespace tcc
