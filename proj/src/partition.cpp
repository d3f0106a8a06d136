#include "exclasso/partition.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace exclasso {

GroupPartition::GroupPartition(int p, std::vector<std::vector<int>> groups)
    : p_(p), groups_(std::move(groups)) {
  if (p_ <= 0) throw std::invalid_argument("partition: dimension must be positive");
  if (groups_.empty()) throw std::invalid_argument("partition: no groups");
  group_of_.assign(p_, -1);
  for (int g = 0; g < static_cast<int>(groups_.size()); ++g) {
    auto& grp = groups_[g];
    if (grp.empty()) throw std::invalid_argument("partition: empty group");
    std::sort(grp.begin(), grp.end());
    for (int i : grp) {
      if (i < 0 || i >= p_) throw std::invalid_argument("partition: index out of range");
      if (group_of_[i] != -1) throw std::invalid_argument("partition: groups overlap");
      group_of_[i] = g;
    }
  }
  for (int i = 0; i < p_; ++i)
    if (group_of_[i] == -1) throw std::invalid_argument("partition: index not covered");
}

GroupPartition GroupPartition::modulo(int p, int k) {
  if (k <= 0 || k > p) throw std::invalid_argument("partition: invalid modulus");
  std::vector<std::vector<int>> groups(k);
  for (int i = 0; i < p; ++i) groups[i % k].push_back(i);
  return GroupPartition(p, std::move(groups));
}

GroupPartition GroupPartition::singletons(int p) {
  std::vector<std::vector<int>> groups(p);
  for (int i = 0; i < p; ++i) groups[i] = {i};
  return GroupPartition(p, std::move(groups));
}

GroupPartition GroupPartition::from_string(const std::string& text) {
  std::vector<std::vector<int>> groups;
  std::istringstream lines(text);
  std::string line;
  int max_index = 0;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::vector<int> grp;
    long long v;
    while (fields >> v) {
      if (v < 1) throw std::invalid_argument("partition file: indices are 1-based");
      grp.push_back(static_cast<int>(v - 1));
      max_index = std::max(max_index, static_cast<int>(v));
    }
    if (!fields.eof()) throw std::invalid_argument("partition file: malformed line");
    if (!grp.empty()) groups.push_back(std::move(grp));
  }
  if (groups.empty()) throw std::invalid_argument("partition file: no groups");
  return GroupPartition(max_index, std::move(groups));
}

GroupPartition GroupPartition::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("partition file: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str());
}

std::string GroupPartition::to_string() const {
  std::ostringstream out;
  for (const auto& grp : groups_) {
    for (size_t j = 0; j < grp.size(); ++j) {
      if (j) out << ' ';
      out << grp[j] + 1;
    }
    out << '\n';
  }
  return out.str();
}

RestrictedView::RestrictedView(const GroupPartition& parent, std::vector<int> support)
    : parent_(&parent), support_(std::move(support)) {
  std::sort(support_.begin(), support_.end());
  if (std::adjacent_find(support_.begin(), support_.end()) != support_.end())
    throw std::invalid_argument("restricted view: duplicate support index");
  for (int i : support_)
    if (i < 0 || i >= parent.dim())
      throw std::invalid_argument("restricted view: support index out of range");

  const int ng = parent.num_groups();
  std::vector<std::vector<int>> locals(ng);
  group_of_local_.assign(support_.size(), -1);
  for (int j = 0; j < static_cast<int>(support_.size()); ++j)
    locals[parent.group_of(support_[j])].push_back(j);

  std::vector<char> active(ng, 0);
  for (int g = 0; g < ng; ++g) {
    if (locals[g].empty()) continue;
    active[g] = 1;
    for (int j : locals[g]) group_of_local_[j] = static_cast<int>(local_groups_.size());
    parent_group_.push_back(g);
    local_groups_.push_back(std::move(locals[g]));
  }

  for (int g = 0; g < ng; ++g) {
    for (int i : parent.group(g)) {
      if (std::binary_search(support_.begin(), support_.end(), i)) continue;
      (active[g] ? off_support_ : inactive_).push_back(i);
    }
  }
  std::sort(off_support_.begin(), off_support_.end());
  std::sort(inactive_.begin(), inactive_.end());
}

int RestrictedView::local_of(int i) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), i);
  if (it == support_.end() || *it != i) return -1;
  return static_cast<int>(it - support_.begin());
}

}  // namespace exclasso
