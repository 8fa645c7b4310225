#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "mtws/braid.hpp"
#include "mtws/invariants.hpp"

namespace mtws {

struct TransversalClass {
  int sl = 0;
  std::string label;
  std::vector<std::string> members;  // Legendrian labels collapsing onto this class
  bool operator==(const TransversalClass&) const = default;
};

inline TransversalClass positive_pushoff(const ClassicalInvariants& c, const std::string& label = "") {
  return {c.tb - c.r, label, {label}};
}

// One Legendrian class of a mountain-range fragment and the labels of its
// negative stabilizations inside the fragment.
struct LegendrianEntry {
  std::string label;
  int tb = 0;
  int r = 0;
  std::vector<std::string> s_minus;
};

// The positive push-off does not see negative stabilization, so classes joined by
// S_- edges collapse. Classes are listed by descending sl, then label.
inline std::vector<TransversalClass> transverse_collapse(const std::vector<LegendrianEntry>& classes) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < classes.size(); ++i) index[classes[i].label] = static_cast<int>(i);
  std::vector<int> parent(classes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (const auto& t : classes[i].s_minus) {
      auto it = index.find(t);
      if (it == index.end()) continue;  // stabilization leaves the fragment
      const auto& a = classes[i];
      const auto& b = classes[it->second];
      if (a.tb - a.r != b.tb - b.r)
        throw BraidError(BraidErrc::InconsistentOrbit, a.label + " and " + b.label + " have different sl");
      parent[find(static_cast<int>(i))] = find(it->second);
    }
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < classes.size(); ++i) groups[find(static_cast<int>(i))].push_back(static_cast<int>(i));
  std::vector<TransversalClass> out;
  for (auto& [root, ms] : groups) {
    TransversalClass t;
    t.sl = classes[ms.front()].tb - classes[ms.front()].r;
    for (int m : ms) t.members.push_back(classes[m].label);
    std::sort(t.members.begin(), t.members.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    t.label = "T+(" + t.members.front() + ")";
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.sl != b.sl ? a.sl > b.sl : a.label < b.label;
  });
  return out;
}

}  // namespace mtws
