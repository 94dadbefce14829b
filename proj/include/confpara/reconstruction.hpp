#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "confpara/configurations.hpp"
#include "confpara/enumeration.hpp"
#include "confpara/group.hpp"

namespace confpara {

/// pi(i, j) = k iff g_i g_j = g_k, over the first `bound` enumerated elements.
/// Indices are 1-based and index 1 is the identity. Products that fall outside
/// the enumerated range are unknown.
class MultiplicationIndexTable {
 public:
  MultiplicationIndexTable(std::vector<Element> elements, std::vector<std::vector<std::optional<std::size_t>>> pi,
                           std::vector<std::optional<std::size_t>> inverse);

  std::size_t bound() const { return elements_.size(); }
  const std::vector<Element>& elements() const { return elements_; }
  std::optional<std::size_t> get(std::size_t i, std::size_t j) const;
  /// Throws PreconditionError when the entry is unknown.
  std::size_t at(std::size_t i, std::size_t j) const;
  /// i' with pi(i, i') = 1, when it lies within the bound.
  std::optional<std::size_t> inverse(std::size_t i) const;
  /// Every entry known.
  bool complete() const;

 private:
  std::vector<Element> elements_;
  std::vector<std::vector<std::optional<std::size_t>>> pi_;
  std::vector<std::optional<std::size_t>> inverse_;
};

/// Errors when the enumeration does not start at the identity or repeats an element.
MultiplicationIndexTable multiplication_index_table(const Group& group, const Enumeration& enumeration,
                                                    std::size_t bound);

struct AssociativityViolation {
  std::size_t i = 0, j = 0, k = 0;
};
/// First (i, j, k) in lexicographic order with pi(i, pi(j, k)) != pi(pi(i, j), k)
/// among fully known entries.
std::optional<AssociativityViolation> find_associativity_violation(const MultiplicationIndexTable& table);

/// {(j, pi(2, j), ..., pi(depth, j)) : j <= bound}, each of length `depth`.
ConfigSet canonical_configurations(const MultiplicationIndexTable& table, std::size_t depth);

struct CosetFamily {
  /// F_1, F_2, ...; F_1 contains the identity. Each block is sorted.
  std::vector<std::vector<Element>> blocks;
  /// Label of the identity's block in the input partition.
  std::size_t input_identity_block = 1;
  /// relabel[l - 1] is the input label of F_l.
  std::vector<std::size_t> relabel;

  const std::vector<Element>& subgroup() const { return blocks.front(); }
};

/// Recovers F_1 and the cosets F_l from a pair (h_1, ..., h_d) over a finite H
/// whose configurations match the canonical ones of G, where d = |G|.
/// Entry h_1 plays the role of g_1 = e_G; the configurations compared are
/// those of (h_2, ..., h_d). The blocks are relabeled so that e_H lies in F_1,
/// and every identity h_j F_l = F_{pi(j, l)} is checked.
/// Throws PreconditionError when the configuration sets differ and
/// ReconstructionFailure for the first failing (j, l).
CosetFamily recover_cosets(const Group& h, const ConfigPair& pair, const MultiplicationIndexTable& g_table);

struct NormalIsoVerdict {
  bool holds = false;
  bool subgroup = false;
  bool normal = false;
  bool homomorphism = false;
  bool bijective = false;
  /// On failure: the violated identity and the elements involved.
  std::string violated;
  std::vector<Element> witnesses;
  /// phi: g_j -> F_j, as (j, F_j).
  std::vector<std::pair<std::size_t, std::vector<Element>>> isomorphism;
};

NormalIsoVerdict verify_normal_and_iso(const Group& h, const CosetFamily& family,
                                       const MultiplicationIndexTable& g_table);

enum class QStatus { trivial_kernel, refinement_unrealizable, refinement_realized };

struct QVerdict {
  QStatus status = QStatus::trivial_kernel;
  /// Refined partition {e}, F_1 \ {e}, F_2, ... (empty for a trivial kernel).
  std::vector<std::vector<Element>> refined_blocks;
  ConfigSet refined_configurations;
  std::uint64_t pairs_searched = 0;
  std::uint64_t rejected_by_label_count = 0;
  /// When realized: the tuple and partition of G that reproduce the Con set.
  std::vector<Element> witness_tuple;
  std::vector<std::vector<Element>> witness_blocks;
};

/// With F_1 trivial, phi is already an isomorphism G -> H. Otherwise splits F_1
/// into {e} and F_1 \ {e} and searches every pair over G (tuples of length
/// d - 1, partitions into at most as many blocks as the refinement) for one
/// with the same configuration set up to relabeling.
QVerdict q_group_refinement_check(const Group& h, const ConfigPair& pair, const CosetFamily& family,
                                  const MultiplicationIndexTable& g_table, std::uint64_t cap = 0);

/// Every subgroup of a finite group, each sorted, ordered by (size, elements).
std::vector<std::vector<Element>> subgroups(const Group& group);
std::vector<std::vector<Element>> normal_subgroups(const Group& group);

struct Quotient {
  Group group;  // cosets as indices 0..k-1, index 0 the subgroup itself
  std::vector<std::vector<Element>> cosets;
  std::vector<Element> representatives;  // least element of each coset
};

/// H/N for a normal subgroup N. Cosets after N are ordered by least element.
Quotient quotient_group(const Group& h, const std::vector<Element>& normal);

}  // namespace confpara
