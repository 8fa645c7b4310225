#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mtws/explore/script.hpp"

namespace mtws {

struct SearchBudget {
  int max_depth = 20;
  long long max_states = 1'000'000;
  int max_grid_size = 64;
  int wall_clock_seconds = 60;
  long long spill_threshold = 4'000'000;  // visited keys kept in memory before spilling to disk
  int workers = 0;                        // 0 = hardware concurrency
};

// Exact visited set. Past the threshold only the 64-bit key and a file offset stay in
// memory; the full key goes to an append-only log and is re-read to confirm a hit.
class VisitedSet {
 public:
  explicit VisitedSet(long long spill_threshold) : threshold_(spill_threshold) {}
  VisitedSet(const VisitedSet&) = delete;
  VisitedSet& operator=(const VisitedSet&) = delete;
  ~VisitedSet() {
    if (log_) {
      std::fclose(log_);
      std::error_code ec;
      std::filesystem::remove(path_, ec);
    }
  }

  // True if the key was not present (and is now).
  bool insert(const std::string& key) {
    if (memory_.count(key)) return false;
    if (log_) {
      auto [lo, hi] = spilled_.equal_range(detail::hash_bytes(key));
      for (auto it = lo; it != hi; ++it)
        if (read_at(it->second, key.size()) == key) return false;
    }
    ++size_;
    if (static_cast<long long>(memory_.size()) < threshold_) {
      memory_.insert(key);
      return true;
    }
    if (!log_) open_log();
    std::fseek(log_, 0, SEEK_END);
    long off = std::ftell(log_);
    std::fwrite(key.data(), 1, key.size(), log_);
    spilled_.emplace(detail::hash_bytes(key), off);
    return true;
  }

  long long size() const { return size_; }
  bool spilled() const { return log_ != nullptr; }

 private:
  void open_log() {
    path_ = std::filesystem::temp_directory_path() /
            ("mtws_visited_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "_" +
             std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
    log_ = std::fopen(path_.c_str(), "w+b");
    if (!log_) throw std::runtime_error("cannot open visited-set spill file");
  }
  std::string read_at(long off, std::size_t len) {
    std::string s(len, '\0');
    std::fflush(log_);
    std::fseek(log_, off, SEEK_SET);
    if (std::fread(s.data(), 1, len, log_) != len) s.clear();
    return s;
  }

  long long threshold_;
  long long size_ = 0;
  std::unordered_set<std::string> memory_;
  std::unordered_multimap<std::uint64_t, long> spilled_;
  std::FILE* log_ = nullptr;
  std::filesystem::path path_;
};

struct SearchStats {
  int depth = 0;  // deepest level fully or partly expanded
  long long states = 0;
  long long frontier = 0;
  std::string reason;  // why an exhausted search stopped
};

struct SearchOutcome {
  bool found = false;
  MoveScript script;
  GridDiagram terminal;
  SearchStats stats;
};

inline const std::set<MoveKind>& default_search_moves() {
  static const std::set<MoveKind> k{MoveKind::Commutation, MoveKind::CyclicFlip, MoveKind::Destabilize};
  return k;
}

// Moves the search may take: stabilizations and destabilizations only of the
// type that leaves the Legendrian class alone.
inline std::vector<Move> search_moves(const GridDiagram& d, const std::set<MoveKind>& kinds, int max_grid_size) {
  std::vector<Move> out;
  for (auto& m : enumerate_moves(d, kinds)) {
    if (m.kind == MoveKind::TransposeFlip) continue;
    if (m.kind == MoveKind::Destabilize) {
      auto s = destabilization_at(d, m.row, m.col);
      if (!s || s->type != StabilizationType::Neutral) continue;
    }
    if (m.kind == MoveKind::Stabilize) {
      Marker mk;
      d.has_marker(m.row, m.col, &mk);
      if (stabilization_type(mk, m.corner) != StabilizationType::Neutral || d.size() + 1 > max_grid_size) continue;
    }
    out.push_back(m);
  }
  return out;
}

// Breadth-first, level by level. Children are generated in parallel but merged in
// frontier order then move order, so the result does not depend on the worker count.
inline SearchOutcome search_equivalence(const GridDiagram& start, const std::function<bool(const GridDiagram&)>& goal,
                                        const std::set<MoveKind>& kinds, const SearchBudget& budget) {
  using clock = std::chrono::steady_clock;
  const auto deadline = clock::now() + std::chrono::seconds(budget.wall_clock_seconds);
  struct Node {
    long long parent;
    Move move;
  };
  std::vector<Node> nodes{{-1, Move{}}};
  VisitedSet visited(budget.spill_threshold);
  visited.insert(exact_key(start));

  SearchOutcome out;
  auto finish = [&](long long idx, const GridDiagram& d) {
    out.found = true;
    out.terminal = d;
    std::vector<Move> path;
    for (long long i = idx; nodes[i].parent >= 0; i = nodes[i].parent) path.push_back(nodes[i].move);
    std::reverse(path.begin(), path.end());
    out.script.from = canonical_key(start);
    out.script.steps = std::move(path);
    out.script.expect = footer_of(d);
    out.stats.states = visited.size();
    return out;
  };
  if (goal(start)) return finish(0, start);

  std::vector<std::pair<long long, GridDiagram>> frontier{{0, start}};
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = budget.workers > 0 ? static_cast<unsigned>(budget.workers) : hw;
  std::atomic<bool> late{false};

  for (int depth = 1; depth <= budget.max_depth; ++depth) {
    out.stats.depth = depth;
    std::vector<std::vector<std::pair<Move, GridDiagram>>> kids(frontier.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < frontier.size();) {
        if ((i & 63) == 0 && clock::now() > deadline) late = true;
        if (late) return;
        const auto& d = frontier[i].second;
        for (const auto& m : search_moves(d, kinds, budget.max_grid_size)) kids[i].push_back({m, apply_move(d, m)});
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (late) {
      out.stats.reason = "wall clock";
      break;
    }

    std::vector<std::pair<long long, GridDiagram>> next_frontier;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (auto& [m, child] : kids[i]) {
        if (!visited.insert(exact_key(child))) continue;
        nodes.push_back({frontier[i].first, m});
        const long long idx = static_cast<long long>(nodes.size()) - 1;
        if (goal(child)) return finish(idx, child);
        if (visited.size() >= budget.max_states) {
          out.stats.reason = "state budget";
          out.stats.states = visited.size();
          out.stats.frontier = static_cast<long long>(frontier.size());
          return out;
        }
        next_frontier.emplace_back(idx, std::move(child));
      }
      kids[i].clear();
    }
    frontier = std::move(next_frontier);
    if (frontier.empty()) {
      out.stats.reason = "move graph exhausted";
      break;
    }
  }
  if (out.stats.reason.empty()) out.stats.reason = "depth budget";
  out.stats.states = visited.size();
  out.stats.frontier = static_cast<long long>(frontier.size());
  return out;
}

inline std::optional<DestabilizationSite> signed_site(const GridDiagram& d, int sign) {
  const auto want = sign > 0 ? StabilizationType::Positive : StabilizationType::Negative;
  for (const auto& s : destabilization_sites(d))
    if (s.type == want) return s;
  return std::nullopt;
}

// Searches for a diagram with a sign-destabilization; the returned script ends with it.
inline SearchOutcome find_destabilization(const GridDiagram& d, int sign, const SearchBudget& budget,
                                          const std::set<MoveKind>& kinds = default_search_moves()) {
  auto res = search_equivalence(d, [&](const GridDiagram& g) { return signed_site(g, sign).has_value(); }, kinds,
                                budget);
  if (!res.found) return res;
  auto site = *signed_site(res.terminal, sign);
  res.script.steps.push_back(Move::destabilization(site.row, site.col));
  res.terminal = destabilize(res.terminal, site);
  res.script.expect = footer_of(res.terminal);
  return res;
}

}  // namespace mtws
