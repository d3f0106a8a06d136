#pragma once

#include <string>
#include <vector>

namespace exclasso {

/// Disjoint, exhaustive grouping of the coordinates {0, ..., p-1}.
///
/// Groups are stored with 0-based indices; the text file format is 1-based
/// (one group per line). Membership lookup is precomputed so that the group
/// of a coordinate is an O(1) query.
class GroupPartition {
public:
  /// Builds a partition from explicit groups. Throws std::invalid_argument
  /// if the groups are empty, overlap, or do not cover {0, ..., p-1}.
  GroupPartition(int p, std::vector<std::vector<int>> groups);

  /// One group per k consecutive residues: group r = {i : i mod k == r}.
  static GroupPartition modulo(int p, int k);

  /// Every coordinate its own group.
  static GroupPartition singletons(int p);

  /// Parses the plain-text format: line k lists the 1-based indices of
  /// group k, whitespace-separated. Rejects duplicates and omissions.
  static GroupPartition from_file(const std::string& path);
  static GroupPartition from_string(const std::string& text);

  /// Writes the 1-based text format.
  std::string to_string() const;

  int dim() const { return p_; }
  int num_groups() const { return static_cast<int>(groups_.size()); }
  const std::vector<int>& group(int g) const { return groups_[g]; }
  const std::vector<std::vector<int>>& groups() const { return groups_; }
  /// Group id containing coordinate i.
  int group_of(int i) const { return group_of_[i]; }

private:
  int p_;
  std::vector<std::vector<int>> groups_;
  std::vector<int> group_of_;
};

/// A partition restricted to a support set J: the induced groups are the
/// nonempty intersections G ∩ J, addressed by positions local to J.
///
/// Keeps enough bookkeeping for both the restricted norms (local positions)
/// and the off-support index sets used by the active-set machinery.
class RestrictedView {
public:
  /// `support` holds 0-based global indices; duplicates are rejected and the
  /// stored support is sorted.
  RestrictedView(const GroupPartition& parent, std::vector<int> support);

  const GroupPartition& parent() const { return *parent_; }
  const std::vector<int>& support() const { return support_; }
  int support_size() const { return static_cast<int>(support_.size()); }

  /// Number of induced (nonempty) groups.
  int num_groups() const { return static_cast<int>(local_groups_.size()); }
  /// Local positions (into the support vector) of induced group g.
  const std::vector<int>& local_group(int g) const { return local_groups_[g]; }
  /// Parent group id of induced group g.
  int parent_group(int g) const { return parent_group_[g]; }

  /// Induced group (local positions) containing local position j, or -1.
  int group_of_local(int j) const { return group_of_local_[j]; }

  /// Local position of global index i, or -1 if i is not in the support.
  int local_of(int i) const;

  /// Inactive entries of active groups (global indices, sorted).
  const std::vector<int>& off_support() const { return off_support_; }
  /// Entries of groups that do not meet the support (global indices, sorted).
  const std::vector<int>& inactive() const { return inactive_; }

private:
  const GroupPartition* parent_;
  std::vector<int> support_;
  std::vector<std::vector<int>> local_groups_;
  std::vector<int> parent_group_;
  std::vector<int> group_of_local_;
  std::vector<int> off_support_;
  std::vector<int> inactive_;
};

}  // namespace exclasso
