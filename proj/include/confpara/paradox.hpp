#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confpara/action.hpp"
#include "confpara/enumeration.hpp"
#include "confpara/window.hpp"

namespace confpara {

enum class Side { a, b };

/// A piece of a decomposition: A_index or B_index, index >= 1.
struct Piece {
  Side side = Side::a;
  std::uint64_t index = 1;

  friend bool operator==(const Piece&, const Piece&) = default;
  friend auto operator<=>(const Piece&, const Piece&) = default;
};

std::string format_piece(const Piece& p);

/// Two piece families {A_i}, {B_j} with translators, given by a combined
/// classifier and cover oracles.
///
/// a_cover(x) names the i with x in g_i A_i (empty when there is none), and
/// likewise b_cover for h_j B_j. Counts are empty for countable families.
struct Decomposition {
  Action action;
  std::string name;
  std::function<std::optional<Piece>(const Point&)> classify;
  std::function<Element(std::uint64_t)> a_translator;
  std::function<Element(std::uint64_t)> b_translator;
  std::function<std::optional<std::uint64_t>(const Point&)> a_cover;
  std::function<std::optional<std::uint64_t>(const Point&)> b_cover;
  std::optional<std::uint64_t> a_count;
  std::optional<std::uint64_t> b_count;
  std::map<std::string, std::string> metadata;

  Element translator(Side side, std::uint64_t i) const { return side == Side::a ? a_translator(i) : b_translator(i); }
  std::optional<std::uint64_t> cover(Side side, const Point& x) const { return side == Side::a ? a_cover(x) : b_cover(x); }
  std::optional<std::uint64_t> count(Side side) const { return side == Side::a ? a_count : b_count; }
};

/// Finite families with explicit translator lists; covers are found by
/// scanning every translator.
Decomposition pieces_decomposition(Action action, std::string name,
                                   std::function<std::optional<Piece>(const Point&)> classify,
                                   std::vector<Element> a_translators, std::vector<Element> b_translators);

enum class VerdictStatus { verified, refuted };

struct Verdict {
  VerdictStatus status = VerdictStatus::verified;
  std::string window;
  std::uint64_t index_bound = 0;
  std::uint64_t points_checked = 0;
  std::optional<Point> witness;
  std::string witness_text;
  std::string equation;
  std::string detail;

  bool verified() const { return status == VerdictStatus::verified; }
};

/// Checks on every window point, in window order:
///   the classifier places x in exactly one piece;
///   x lies in g_c A_c for c = a_cover(x), and in no other g_i A_i with i <= index_bound;
///   the same for the B family.
/// The first failing point refutes. Throws MalformedWitness when a cover
/// oracle misses a translate that does contain the point, or a piece index is
/// out of range.
Verdict verify_paradoxical(const Decomposition& dec, const Window& window, std::uint64_t index_bound);

/// Pieces of A with translators, and a cover oracle for B.
struct EquidecompositionWitness {
  std::function<std::optional<std::uint64_t>(const Point&)> classify;  // piece of a point of A
  std::function<Element(std::uint64_t)> translator;
  std::function<std::optional<std::uint64_t>(const Point&)> cover;    // i with y in g_i A_i
  std::optional<std::uint64_t> count;
};

/// Window check of A ~ B: pieces lie in A and cover it, translated pieces lie
/// in B, and every window point of B is covered by exactly one translated
/// piece among indices <= index_bound.
Verdict verify_equidecomposable(const Action& action, const std::function<bool(const Point&)>& in_a,
                                const std::function<bool(const Point&)>& in_b, const EquidecompositionWitness& witness,
                                const Window& window, std::uint64_t index_bound);

// Constructions ---------------------------------------------------------------

/// A_i = {x_{2i}}, B_i = {x_{2i-1}} for the enumeration x_1, x_2, ... of a
/// countably infinite group acting on itself, with g_i = x_i x_{2i}^-1 and
/// h_i = x_i x_{2i-1}^-1.
Decomposition singleton_decomposition(const Group& group, const Enumeration& enumeration);

/// The classical decomposition of F_2: A_1 = W(a) u {a^-n : n >= 0},
/// A_2 = W(a^-1) \ {a^-n}, B_1 = W(b), B_2 = W(b^-1), with F_2 = A_1 u a A_2 = B_1 u b B_2.
Decomposition f2_standard();

/// A subgroup H given abstractly, with its embedding into G.
struct SubgroupEmbedding {
  std::string name;
  Group subgroup;
  std::function<Element(const Element&)> embed;
  /// Inverse of embed on its image; empty outside the image.
  std::function<std::optional<Element>(const Element&)> project;
};

/// Writes g = h t with h in the image of H and t in a fixed right transversal.
struct RightTransversal {
  std::string name;
  std::function<std::pair<Element, Element>(const Element&)> decode;
};

/// k Z inside Z (free abelian rank 1), with transversal {0, ..., k-1}.
std::pair<SubgroupEmbedding, RightTransversal> multiples_in_integers(std::int64_t k);
/// <a_letter> inside F_rank as Z, with transversal the words not starting with a_letter^+-1.
std::pair<SubgroupEmbedding, RightTransversal> cyclic_in_free(std::size_t rank, std::size_t letter = 1);
/// H = G with transversal {e}.
std::pair<SubgroupEmbedding, RightTransversal> whole_group(const Group& group);

/// Pieces A_i T and B_i T for the transversal T, same translators.
Decomposition lift_via_transversal(const Group& group, const SubgroupEmbedding& embedding,
                                   const RightTransversal& transversal, const Decomposition& subgroup_decomposition);

struct SubgroupWitness {
  SubgroupEmbedding embedding;
  RightTransversal transversal;
};

/// Singleton decomposition of a countable subgroup, lifted to the group.
/// Without a witness the group itself is used. Finite groups are refused.
Decomposition countable_paradox_of_infinite(const Group& group,
                                            const std::optional<SubgroupWitness>& witness = std::nullopt);

struct CompressionResult {
  std::optional<Decomposition> decomposition;
  std::string reason;
  std::vector<Element> a_range;
  std::vector<Element> b_range;
};

/// Merges pieces with equal translators. The distinct translators are
/// collected in first-occurrence order over indices <= bound. A countable
/// family whose range still grows past bound / 2 is reported as not
/// compressible within the bound. Declared ranges replace the detection and
/// are checked against the translators up to the bound.
CompressionResult compress_translators(const Decomposition& dec, std::uint64_t bound,
                                       const std::optional<std::pair<std::vector<Element>, std::vector<Element>>>&
                                           declared = std::nullopt);

/// Splits every piece into singletons indexed by the enumeration of X:
/// A_k = {x_k} when x_k is in an A piece (empty otherwise), with the
/// translator of the piece it came from.
Decomposition refine_to_singletons(const Decomposition& dec, const Enumeration& points);

/// Orbit data for an action: representatives x_k (k >= 0), and the maps
/// phi_k : G/G_{x_k} -> [x_k], with G/G_{x_k} given as a G-set.
struct OrbitStructure {
  std::string name;
  std::function<Point(std::uint64_t)> representative;
  std::function<std::pair<std::uint64_t, Point>(const Point&)> decode;
  std::function<Point(std::uint64_t, const Point&)> encode;
  std::function<Action(std::uint64_t)> coset_action;
  std::optional<std::uint64_t> orbit_count;
};

/// Orbits base x {k} of a product action over a free left translation.
OrbitStructure layered_orbits(const Action& product);
/// Singleton orbits of a trivial action.
OrbitStructure trivial_orbits(const Action& trivial);

enum class GlueMode { uniform, independent };

struct GlueOptions {
  GlueMode mode = GlueMode::uniform;
  /// Points of X on which the orbit maps are probed.
  std::vector<Point> probe_points;
  /// Orbits whose coset actions and translators are probed.
  std::uint64_t probe_orbits = 8;
  /// Translator indices compared across orbits in uniform mode.
  std::uint64_t probe_indices = 16;
};

/// Pieces are the unions over orbits of phi_x(A_i^x). Uniform mode keeps the
/// shared translators; independent mode flattens (i, k) to
/// cantor_pair(i - 1, k) + 1.
Decomposition glue_orbit_decompositions(const Action& action, const OrbitStructure& orbits,
                                        std::function<Decomposition(std::uint64_t)> per_orbit,
                                        const GlueOptions& options = {});

/// Pulls A_i and B_j back to G/G_x along phi_x for the orbit with index k.
Decomposition restrict_to_orbit(const Decomposition& dec, std::uint64_t orbit, const OrbitStructure& orbits);

}  // namespace confpara
