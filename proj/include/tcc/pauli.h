#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "tcc/bitvec.h"
#include "tcc/colex.h"

namespace tcc {

enum class PauliKind { X, Z };

/// Pauli operator X^x Z^z without phase. Applied to a state, Z acts first.
struct PauliOp {
    BitVec x;
    BitVec z;

    PauliOp() = default;
    explicit PauliOp(std::size_t n) : x(n), z(n) {}
    PauliOp(BitVec xbits, BitVec zbits);

    static PauliOp x_type(const BitVec& support) { return PauliOp(support, BitVec(support.size())); }
    static PauliOp z_type(const BitVec& support) { return PauliOp(BitVec(support.size()), support); }

    std::size_t size() const { return x.size(); }
    std::size_t weight() const { return x.popcount() + z.popcount() - (x & z).popcount(); }
    bool is_identity() const { return x.none() && z.none(); }
    /// Product up to phase.
    PauliOp& operator*=(const PauliOp& other);
    bool operator==(const PauliOp&) const = default;
};

/// True iff the symplectic form <a.x, b.z> + <a.z, b.x> vanishes over GF(2).
bool commutes(const PauliOp& a, const PauliOp& b);

/// Vertex subset of a colex.
struct StringNet {
    BitVec gamma;
    static StringNet empty(const Colex2& c) { return StringNet{BitVec(c.num_vertices)}; }
    static StringNet of_face(const Colex2& c, std::size_t face);
    bool operator==(const StringNet&) const = default;
};

/// Face indicator vector x_f.
struct FaceChain {
    BitVec x;
    bool operator==(const FaceChain&) const = default;
};

/// Operator supported on a face's (kept) vertices. X on a partial face throws RoleViolation.
PauliOp face_operator(const Colex2& colex, std::size_t face, PauliKind kind);

PauliOp x_operator(const StringNet& net);
PauliOp z_operator(const StringNet& net);

/// x_f = parity of |gamma ∩ f| over every face, complete or partial.
FaceChain boundary(const StringNet& net, const Colex2& colex);
bool is_closed(const StringNet& net, const Colex2& colex);

struct BoundaryWitness {
    bool is_boundary = false;
    /// Complete faces whose vertex sets sum to the net (indexed over all faces).
    std::optional<BitVec> faces;
};

/// Solves gamma = sum of complete-face vertex sets over GF(2).
BoundaryWitness is_boundary(const StringNet& net, const Colex2& colex);

enum class StabilizerRole { x_face, z_face, z_partial };

struct StabilizerGenerator {
    PauliOp op;
    StabilizerRole role;
    std::size_t face;
};

struct StabilizerSet {
    std::size_t num_qubits = 0;
    std::vector<StabilizerGenerator> generators;

    /// GF(2) rank of the generators as symplectic vectors [x | z].
    std::size_t rank() const;
};

/// X and Z generators for complete faces, Z generators for partial faces.
/// Throws InvalidLattice if two generators anticommute.
StabilizerSet stabilizer_set(const Colex2& colex);

/// n - rank of the stabilizer group.
std::size_t encoded_qubits(const Colex2& colex);
/// 4 - 2 chi; only meaningful for closed colexes.
long encoded_qubits_from_euler(const Colex2& colex);

/// Group Γ₀ of boundary string-nets: the span of complete-face vertex sets.
class BoundaryGroup {
  public:
    explicit BoundaryGroup(const Colex2& colex);

    std::size_t num_vertices() const { return num_vertices_; }
    /// Reduced basis (rows of the GF(2) elimination in pivot order).
    const std::vector<BitVec>& basis() const { return basis_; }
    /// Complete faces whose vertex sets form an independent generating set.
    const std::vector<std::size_t>& basis_faces() const { return basis_faces_; }
    std::size_t rank() const { return basis_.size(); }
    bool contains(const BitVec& gamma) const;
    /// Visits every element of Γ₀ (2^rank of them); throws CapExceeded beyond kMaxSpanRank.
    void for_each(const std::function<void(const BitVec&)>& visit, std::uint64_t begin = 0,
                  std::uint64_t end = UINT64_MAX) const;

  private:
    std::size_t num_vertices_;
    std::vector<BitVec> basis_;
    std::vector<std::size_t> basis_faces_;
};

/// Basis of closed string-nets (kernel of the color boundary over all faces).
std::vector<BitVec> closed_net_basis(const Colex2& colex);

/// dim(closed nets) - rank(Γ₀): number of independent non-boundary closed classes.
std::size_t homology_gap(const Colex2& colex);

/// One string-net with boundary x, or nullopt if Γ_x is empty.
std::optional<StringNet> coset_representative(const Colex2& colex, const FaceChain& x);

}  // namespace tcc
