#pragma once

#include <cstdint>
#include <string>

namespace lbz {

/// Resource caps for the enumeration-heavy operations.  Everything fails
/// loudly (cap_exceeded) instead of silently truncating.
struct Caps {
    std::size_t max_dim = 6;                 // ambient dimension for subspace enumeration
    std::uint32_t max_p = 7;                 // largest prime field modulus for enumeration
    std::size_t max_lattice_nodes = 5000;    // projected subspace/node count
    std::uint64_t max_gl_order = 1000000;    // |GL(n,p)| for brute-force isomorphism
    std::uint32_t rational_height = 3;       // numerator/denominator bound for Q searches
    std::uint64_t max_enum_tables = 1u << 24; // p^(n^3) bound for full algebra enumeration
    std::size_t max_maps = 1u << 20;         // lattice isomorphism enumeration bound

    std::string describe() const {
        return "max_dim=" + std::to_string(max_dim) + " max_p=" + std::to_string(max_p) +
               " max_lattice_nodes=" + std::to_string(max_lattice_nodes) +
               " max_gl_order=" + std::to_string(max_gl_order) +
               " rational_height=" + std::to_string(rational_height);
    }
};

} // namespace lbz
