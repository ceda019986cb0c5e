#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sixv/weights.hpp"

namespace sixv {

// Geometry of the n x n lattice region: internal vertices (i, j) with
// 0 <= i, j < n, origin at the lower left, x east, y north. Every vertex
// has degree 4; edges leaving the region are boundary stubs.
//
// Edge indexing (this order is the serialization contract):
//   horizontal edges first, row-major:  h(j, i) = j*(n+1) + i  for
//     j in [0, n), i in [0, n]; h(j, i) joins (i-1, j) -- (i, j), so
//     i = 0 is the west stub of (0, j) and i = n the east stub of (n-1, j).
//   then vertical edges, column-major:  v(i, j) = n*(n+1) + i*(n+1) + j
//     for i in [0, n), j in [0, n]; v(i, j) joins (i, j-1) -- (i, j).
// Orientation bit 1 means east (horizontal) or north (vertical); a set bit
// is exactly a "kept" edge of the lattice-path view.

struct Lattice {
  int n;

  explicit Lattice(int n_) : n(n_) {
    if (n < 1) throw std::invalid_argument("lattice side must be >= 1");
  }

  int num_edges() const { return 2 * n * (n + 1); }
  int num_stubs() const { return 4 * n; }
  int num_vertices() const { return n * n; }

  int h_edge(int j, int i) const { return j * (n + 1) + i; }
  int v_edge(int i, int j) const { return n * (n + 1) + i * (n + 1) + j; }

  bool is_horizontal(int e) const { return e < n * (n + 1); }

  std::vector<int> stub_edges() const {
    std::vector<int> s;
    s.reserve(num_stubs());
    for (int j = 0; j < n; ++j) {
      s.push_back(h_edge(j, 0));
      s.push_back(h_edge(j, n));
    }
    for (int i = 0; i < n; ++i) {
      s.push_back(v_edge(i, 0));
      s.push_back(v_edge(i, n));
    }
    return s;
  }

  // Incident edges of vertex (i, j) in W, E, S, N order.
  std::array<int, 4> vertex_edges(int i, int j) const {
    return {h_edge(j, i), h_edge(j, i + 1), v_edge(i, j), v_edge(i, j + 1)};
  }
};

/// The six ice-rule vertex types, named by their role in the lattice-path
/// view (which pins the (a, b, c) grouping the analysis depends on):
///   A1 crossing      in = {W, S}   two paths cross
///   A2 empty         in = {E, N}   no kept edges
///   B3 h-straight    in = {W, N}   path continues west -> east
///   B4 v-straight    in = {E, S}   path continues south -> north
///   C5 corner        in = {W, E}   path turns east-heading -> north
///   C6 corner        in = {S, N}   path turns north-heading -> east
enum class VertexType : int { A1 = 0, A2, B3, B4, C5, C6 };

inline const char* vertex_type_name(VertexType t) {
  static const char* names[6] = {"a1", "a2", "b3", "b4", "c5", "c6"};
  return names[static_cast<int>(t)];
}

struct InvalidConfiguration : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Edge orientations of one state. Value type; cheap to copy at desk scale.
struct Configuration {
  int n = 0;
  std::vector<std::uint64_t> words;

  Configuration() = default;
  explicit Configuration(int n_)
      : n(n_), words((Lattice(n_).num_edges() + 63) / 64, 0) {}

  Lattice lattice() const { return Lattice(n); }

  bool get(int e) const { return (words[e >> 6] >> (e & 63)) & 1; }
  void set(int e, bool b) {
    const std::uint64_t mask = std::uint64_t(1) << (e & 63);
    if (b)
      words[e >> 6] |= mask;
    else
      words[e >> 6] &= ~mask;
  }
  void flip(int e) { words[e >> 6] ^= std::uint64_t(1) << (e & 63); }

  bool operator==(const Configuration& o) const {
    return n == o.n && words == o.words;
  }

  /// Edges directed north or east (the lattice-path view keeps exactly
  /// the set bits).
  bool kept(int e) const { return get(e); }
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(c.n);
    for (std::uint64_t w : c.words) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// In-degree convention per vertex (i, j): W in iff bit 1, E in iff bit 0,
// S in iff bit 1, N in iff bit 0.
inline std::array<bool, 4> incoming_mask(const Configuration& c, int i,
                                         int j) {
  const auto e = c.lattice().vertex_edges(i, j);
  return {c.get(e[0]), !c.get(e[1]), c.get(e[2]), !c.get(e[3])};
}

inline bool ice_ok_at(const Configuration& c, int i, int j) {
  const auto in = incoming_mask(c, i, j);
  return in[0] + in[1] + in[2] + in[3] == 2;
}

inline bool ice_ok(const Configuration& c) {
  for (int j = 0; j < c.n; ++j)
    for (int i = 0; i < c.n; ++i)
      if (!ice_ok_at(c, i, j)) return false;
  return true;
}

inline VertexType classify_vertex(const Configuration& c, int i, int j) {
  const auto in = incoming_mask(c, i, j);  // W, E, S, N
  if (in[0] + in[1] + in[2] + in[3] != 2)
    throw InvalidConfiguration("ice rule violated at vertex (" +
                               std::to_string(i) + ", " + std::to_string(j) +
                               ")");
  if (in[0] && in[2]) return VertexType::A1;
  if (in[1] && in[3]) return VertexType::A2;
  if (in[0] && in[3]) return VertexType::B3;
  if (in[1] && in[2]) return VertexType::B4;
  if (in[0] && in[1]) return VertexType::C5;
  return VertexType::C6;
}

inline std::array<int, 6> type_counts(const Configuration& c) {
  std::array<int, 6> counts{};
  for (int j = 0; j < c.n; ++j)
    for (int i = 0; i < c.n; ++i)
      ++counts[static_cast<int>(classify_vertex(c, i, j))];
  return counts;
}

/// Boltzmann weight a^{n1+n2} b^{n3+n4} c^{n5+n6}. Real is double for
/// simulation and Rational for exact identities.
template <typename Real>
Real config_weight(const Configuration& c, Real a, Real b, Real cc) {
  const auto k = type_counts(c);
  auto ipow = [](Real base, int e) {
    Real r = 1;
    for (int t = 0; t < e; ++t) r *= base;
    return r;
  };
  return ipow(a, k[0] + k[1]) * ipow(b, k[2] + k[3]) * ipow(cc, k[4] + k[5]);
}

inline double config_weight(const Configuration& c, const Weights& w) {
  return config_weight<double>(c, w.a, w.b, w.c);
}

/// Weight of the vertices touched by a set of edges; everything a Glauber
/// acceptance ratio needs.
template <typename Real>
Real local_weight(const Configuration& c, const std::vector<std::pair<int, int>>& verts,
                  Real a, Real b, Real cc) {
  Real r = 1;
  for (auto [i, j] : verts) {
    switch (classify_vertex(c, i, j)) {
      case VertexType::A1:
      case VertexType::A2: r *= a; break;
      case VertexType::B3:
      case VertexType::B4: r *= b; break;
      default: r *= cc; break;
    }
  }
  return r;
}

// The two all-corner antiferroelectric ground states. x_R places the C5
// corner on even-parity vertices; x_G is its full arrow reversal. Edge
// orientations follow from the in/out pattern of the adjacent vertex.
inline Configuration ground_state_red(int n) {
  Configuration c(n);
  const Lattice lat(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i <= n; ++i) {
      // Use the east endpoint (i, j) when it exists, else the west one.
      const bool even = (i < n) ? ((i + j) % 2 == 0) : ((i - 1 + j) % 2 == 0);
      // C5: W in (bit 1), E in (bit 0); C6: the reverse.
      const bool bit = (i < n) ? even : !even;
      c.set(lat.h_edge(j, i), bit);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const bool even = (j < n) ? ((i + j) % 2 == 0) : ((i + j - 1) % 2 == 0);
      // C5: S out (bit 0), N out (bit 1); C6: the reverse.
      const bool bit = (j < n) ? !even : even;
      c.set(lat.v_edge(i, j), bit);
    }
  }
  return c;
}

inline Configuration reverse_all_edges(const Configuration& c) {
  Configuration r = c;
  for (int e = 0; e < c.lattice().num_edges(); ++e) r.flip(e);
  return r;
}

inline Configuration ground_state_green(int n) {
  return reverse_all_edges(ground_state_red(n));
}

/// Fixed stub orientations. kind is "free", "domain-wall",
/// "independent-paths", or "explicit"; non-free kinds force all 4n stubs.
struct BoundaryCondition {
  std::string kind = "free";
  std::vector<std::pair<int, bool>> fixed_stubs;  // (edge id, orientation bit)

  static BoundaryCondition free_boundary() { return {}; }

  static BoundaryCondition domain_wall(int n) {
    // Left/right stubs point inward, top/bottom stubs point outward.
    BoundaryCondition bc;
    bc.kind = "domain-wall";
    const Lattice lat(n);
    for (int j = 0; j < n; ++j) {
      bc.fixed_stubs.emplace_back(lat.h_edge(j, 0), true);   // east, inward
      bc.fixed_stubs.emplace_back(lat.h_edge(j, n), false);  // west, inward
    }
    for (int i = 0; i < n; ++i) {
      bc.fixed_stubs.emplace_back(lat.v_edge(i, 0), false);  // south, outward
      bc.fixed_stubs.emplace_back(lat.v_edge(i, n), true);   // north, outward
    }
    return bc;
  }

  static BoundaryCondition explicit_stubs(
      std::vector<std::pair<int, bool>> stubs, std::string kind = "explicit") {
    BoundaryCondition bc;
    bc.kind = std::move(kind);
    bc.fixed_stubs = std::move(stubs);
    return bc;
  }

  bool is_free() const { return fixed_stubs.empty(); }

  bool satisfied_by(const Configuration& c) const {
    for (auto [e, bit] : fixed_stubs)
      if (c.get(e) != bit) return false;
    return true;
  }

  void apply_to(Configuration& c) const {
    for (auto [e, bit] : fixed_stubs) c.set(e, bit);
  }

  /// Non-free boundary kinds must force every stub exactly once, with no
  /// contradictions.
  void validate(int n) const {
    const Lattice lat(n);
    std::vector<int> seen(lat.num_edges(), 0);
    for (auto [e, bit] : fixed_stubs) {
      (void)bit;
      if (e < 0 || e >= lat.num_edges())
        throw std::invalid_argument("boundary stub edge out of range");
      if (++seen[e] > 1)
        throw std::invalid_argument("boundary stub forced twice");
    }
    for (int e : lat.stub_edges()) seen[e] += 2;
    for (int e = 0; e < lat.num_edges(); ++e) {
      if (seen[e] == 1)
        throw std::invalid_argument("boundary forces a non-stub edge");
    }
    if (kind != "free" &&
        static_cast<int>(fixed_stubs.size()) != lat.num_stubs())
      throw std::invalid_argument(
          "non-free boundary must force all 4n stubs");
  }
};

}  // namespace sixv
