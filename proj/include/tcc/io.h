#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tcc/cluster.h"
#include "tcc/codestate.h"
#include "tcc/colex.h"
#include "tcc/correspondence.h"
#include "tcc/spinmodel.h"

namespace tcc {

using Json = nlohmann::ordered_json;

/// A lattice read from disk. `colex` is present unless the file is a closed dual;
/// `dual` is always present. Vertex t of the colex is triangle t of the dual.
struct LatticeFile {
    std::string kind;  // "colex2", "dual" or "bordered"
    std::optional<Colex2> colex;
    DualTriangulation dual;
};

Json to_json(const Colex2& colex);
Json to_json(const DualTriangulation& dual);
Json to_json(const BorderedColex& bordered);
Json to_json(const LatticeReport& report);
Json to_json(Complex z);

Colex2 colex_from_json(const Json& j);
DualTriangulation dual_from_json(const Json& j);
/// Dispatches on "kind"; throws InvalidLattice for malformed documents.
LatticeFile lattice_from_json(const Json& j);

/// Throws std::runtime_error if the file cannot be read or is not JSON.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Deterministic JSON text: keys in insertion order, two-space indent, every
/// floating-point number written with 17 significant digits.
std::string dump_json(const Json& j);
/// printf("%.17g").
std::string format_double(double x);

/// Couplings file: {"beta": b, "J": J, "h": h}. J is a number (uniform), {"uniform": z},
/// or an array whose entries are numbers, {"re", "im"} or {"tri", "re", "im"} (missing
/// triangles default to 0). h uses the same forms with "site" and defaults to zero.
CouplingSet couplings_from_json(const Json& j, const DualTriangulation& dual);

/// Fields file: {"beta": b, "J": [per vertex], "h": [per face]}; numbers or a single uniform number.
FieldSpec fields_from_json(const Json& j, std::size_t num_vertices, std::size_t num_faces);

/// Coefficients file: {"cosh_sinh": s} or {"coeffs": [[c0_re, c0_im, c1_re, c1_im], ...]}.
ProductState product_state_from_json(const Json& j, std::size_t num_qubits);

/// Basis file: {"bases": [...]} with entries "z", "x" or [b0_re, b0_im, b0'_re, b0'_im, b1_re, ...]
/// (8 numbers: the two components of b0 then of b1), or a single entry for all qubits.
std::vector<MeasurementBasis> bases_from_json(const Json& j, std::size_t num_qubits);

/// Amplitudes as consecutive little-endian float64 (re, im) pairs in basis-index order.
void write_state_file(const std::string& path, const StateVector& state);
StateVector read_state_file(const std::string& path);

}  // namespace tcc
