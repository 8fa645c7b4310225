#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>
#include <unordered_map>

#include "mtws/explore/mountain.hpp"
#include "mtws/explore/replay.hpp"
#include "mtws/explore/search.hpp"
#include "oracles.hpp"

using namespace mtws;

namespace {

GridDiagram grid_file(const std::string& name) {
  std::ifstream in(data_path(name));
  REQUIRE(in);
  return read_grid(in);
}

ReplayErrc replay_error_of(const MoveScript& s, const GridDiagram& d) {
  try {
    replay(s, d);
  } catch (const ReplayError& e) {
    return e.code();
  }
  FAIL("expected a ReplayError");
  return ReplayErrc::HashMismatch;
}

std::vector<std::string> step_strings(const MoveScript& s) {
  std::vector<std::string> out;
  for (const auto& m : s.steps) out.push_back(to_string(m));
  return out;
}

const std::set<MoveKind> kIsotopy{MoveKind::Commutation, MoveKind::CyclicFlip};

// Plain depth-first enumeration of every move sequence up to `limit`.
int brute_distance(const GridDiagram& from, const GridDiagram& to, int limit) {
  std::function<bool(const GridDiagram&, int)> reach = [&](const GridDiagram& d, int left) {
    if (d == to) return true;
    if (left == 0) return false;
    for (const auto& m : search_moves(d, kIsotopy, 64))
      if (reach(apply_move(d, m), left - 1)) return true;
    return false;
  };
  for (int k = 0; k <= limit; ++k)
    if (reach(from, k)) return k;
  return -1;
}

std::map<std::pair<int, int>, int> label_counts(const MountainRange& m) {
  std::map<std::pair<int, int>, int> out;
  for (const auto& p : m.points) out[{p.r, p.tb}] = static_cast<int>(p.labels.size());
  return out;
}

}  // namespace

TEST_CASE("canonical keys separate distinct grids", "[explorer]") {
  std::mt19937_64 rng(99);
  std::unordered_map<std::uint64_t, std::string> seen;
  std::set<std::string> grids;
  int distinct = 0;
  for (int k = 0; k < 20000; ++k) {
    auto d = oracle::random_grid(2 + k % 9, rng);
    auto key = canonical_key(d);
    auto [it, fresh] = seen.emplace(key, exact_key(d));
    grids.insert(exact_key(d));
    if (fresh) ++distinct;
    else CHECK(it->second == exact_key(d));  // a repeat must be the same grid
    CHECK(canonical_key(d) == key);
  }
  CHECK(distinct == static_cast<int>(grids.size()));
  CHECK(distinct > 10000);
  CHECK(parse_hex64(hex64(0x0123456789abcdefULL)) == 0x0123456789abcdefULL);
  CHECK_THROWS_AS(parse_hex64("xyz"), GridError);
}

TEST_CASE("move scripts round trip through text", "[explorer]") {
  auto lplus = grid_file("lplus.grid");
  MoveScript empty{canonical_key(lplus), {}, std::nullopt};
  CHECK(replay(empty, lplus) == lplus);
  auto text = format_script(empty);
  CHECK(parse_script(text).from == empty.from);
  CHECK(parse_script(text).steps.empty());

  const auto& tmpl = vertical_flype_template();
  auto back = parse_script(format_script(tmpl));
  CHECK(back.from == tmpl.from);
  CHECK(step_strings(back) == step_strings(tmpl));
  CHECK(back.expect == tmpl.expect);

  CHECK_THROWS_AS(parse_script("COMMUTE row 1\n"), GridError);
  CHECK_THROWS_AS(parse_script("FROM 00\nEXPECT tb=1 r=0\n"), GridError);
  CHECK_THROWS_AS(parse_script("FROM 00\nEXPECT tb=1 r=0 alex=00\nCOMMUTE row 1\n"), GridError);
  CHECK_THROWS_AS(parse_script("FROM 00\nWIGGLE 3\n"), GridError);
  for (const char* line : {"COMMUTE row 3", "COMMUTE col 0", "FLIP left", "STAB 2 4 NW", "DESTAB 1 1", "TRANSPOSE",
                           "FLYPE v 0", "FLYPE h 0"})
    CHECK(to_string(parse_move(line)) == line);
}

TEST_CASE("replay rejects scripts that do not fit", "[explorer]") {
  auto lplus = grid_file("lplus.grid");
  auto post = grid_file("postflype.grid");
  auto s = load_script(data_path("destab_vertical.script"));
  CHECK(replay_error_of(s, lplus) == ReplayErrc::HashMismatch);
  auto end = replay(s, post);
  CHECK(classical_invariants(end) == ClassicalInvariants{6, 1});
  CHECK(end == grid_file("kplus.grid"));

  auto wrong = s;
  wrong.expect->tb = 7;
  CHECK(replay_error_of(wrong, post) == ReplayErrc::FooterMismatch);

  auto broken = s;
  broken.steps.insert(broken.steps.begin(), Move::destabilization(0, 0));
  CHECK(replay_error_of(broken, post) == ReplayErrc::StepInapplicable);

  auto h = load_script(data_path("destab_horizontal.script"));
  auto hend = replay(h, grid_file("postflype_h.grid"));
  CHECK(classical_invariants(hend) == ClassicalInvariants{6, -1});
  CHECK(hend == grid_file("kminus.grid"));

  // the whole flype as a one-step script
  MoveScript f{canonical_key(lplus), {parse_move("FLYPE v 0")}, footer_of(post)};
  CHECK(replay(f, lplus) == post);
}

TEST_CASE("search is deterministic across worker counts", "[explorer][search]") {
  auto post = grid_file("postflype.grid");
  std::vector<std::string> ref;
  for (int w : {1, 2, 4, 8}) {
    SearchBudget b;
    b.workers = w;
    b.max_depth = 4;
    auto res = find_destabilization(post, 1, b);
    REQUIRE(res.found);
    auto st = step_strings(res.script);
    if (ref.empty()) ref = st;
    CHECK(st == ref);
    CHECK(replay(res.script, post) == res.terminal);
  }
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    auto d = oracle::random_grid(5, rng);
    auto target = d;
    for (int i = 0; i < 4; ++i) {
      auto ms = search_moves(target, kIsotopy, 64);
      target = apply_move(target, ms[rng() % ms.size()]);
    }
    std::vector<std::string> first;
    for (int w : {1, 3}) {
      SearchBudget b;
      b.workers = w;
      b.max_depth = 4;
      auto res = search_equivalence(d, [&](const GridDiagram& g) { return g == target; }, kIsotopy, b);
      REQUIRE(res.found);
      if (w == 1) first = step_strings(res.script);
      else CHECK(step_strings(res.script) == first);
    }
  }
}

TEST_CASE("breadth-first search returns a shortest script", "[explorer][search]") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 25; ++k) {
    auto d = oracle::random_grid(3 + k % 2, rng);
    auto target = d;
    const int walk = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < walk; ++i) {
      auto ms = search_moves(target, kIsotopy, 64);
      target = apply_move(target, ms[rng() % ms.size()]);
    }
    SearchBudget b;
    b.max_depth = 4;
    auto res = search_equivalence(d, [&](const GridDiagram& g) { return g == target; }, kIsotopy, b);
    REQUIRE(res.found);
    CHECK(static_cast<int>(res.script.steps.size()) == brute_distance(d, target, walk));
    CHECK(replay(res.script, d) == target);
  }
}

TEST_CASE("searches that cannot succeed exhaust their budget", "[explorer][search]") {
  const GridDiagram unknot({1, 0}, {0, 1});
  SearchBudget b;
  b.max_depth = 6;
  auto res = find_destabilization(unknot, 1, b);
  CHECK_FALSE(res.found);
  CHECK(res.stats.reason == "move graph exhausted");

  SearchBudget small;
  small.max_states = 50;
  auto lim = find_destabilization(grid_file("lplus.grid"), 1, small);
  CHECK_FALSE(lim.found);
  CHECK(lim.stats.reason == "state budget");
  CHECK(lim.stats.states <= 50);

  SearchBudget shallow;
  shallow.max_depth = 1;
  auto sh = find_destabilization(grid_file("lplus.grid"), 1, shallow);
  CHECK_FALSE(sh.found);
  CHECK(sh.stats.reason == "depth budget");
}

TEST_CASE("the visited set spills to disk and stays exact", "[explorer][search]") {
  VisitedSet v(4);
  std::mt19937_64 rng(8);
  std::vector<std::string> keys;
  std::set<std::string> uniq;
  for (int i = 0; i < 300; ++i) {
    auto k = exact_key(oracle::random_grid(4 + i % 4, rng));
    keys.push_back(k);
    CHECK(v.insert(k) == uniq.insert(k).second);
  }
  CHECK(v.spilled());
  CHECK(v.size() == static_cast<long long>(uniq.size()));
  for (const auto& k : keys) CHECK_FALSE(v.insert(k));

  // a search with a tiny in-memory threshold finds the same script
  auto post = grid_file("postflype.grid");
  SearchBudget a, b;
  a.max_depth = b.max_depth = 3;
  b.spill_threshold = 8;
  CHECK(step_strings(find_destabilization(post, 1, a).script) == step_strings(find_destabilization(post, 1, b).script));
}

TEST_CASE("mountain range shape", "[explorer][mountain]") {
  auto m = mountain_scan(read_seed_manifest(data_path("mountain.seeds")), 4);
  auto counts = label_counts(m);
  int peak = -100;
  for (auto [pt, c] : counts) peak = std::max(peak, pt.second);
  CHECK(peak == 6);
  CHECK(counts[{1, 6}] == 1);
  CHECK(counts[{-1, 6}] == 1);
  CHECK(counts[{2, 5}] == 2);
  CHECK(counts[{-2, 5}] == 2);
  CHECK(counts[{0, 5}] == 1);
  // r -> -r symmetry, and every point satisfies the parity of the trefoil cable
  for (auto [pt, c] : counts) {
    CHECK(counts.count({-pt.first, pt.second}) == 1);
    CHECK(counts[{-pt.first, pt.second}] == c);
    CHECK((pt.second + pt.first) % 2 != 0);
  }
  // below the peaks every point is a stabilization of a point one row up
  for (auto [pt, c] : counts)
    if (pt.second < 6) CHECK(counts.count({pt.first - 1, pt.second + 1}) + counts.count({pt.first + 1, pt.second + 1}) > 0);
  // labels sit at the invariants of their class
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    const auto& n = m.nodes[i];
    CHECK(n.tb == m.nodes[m.cls[i]].tb);
    CHECK(n.r == m.nodes[m.cls[i]].r);
  }
  // flype connectors at the (+-2, 5) rows
  std::set<std::pair<int, int>> at;
  for (const auto& c : m.connectors) at.insert({c.r, c.tb});
  CHECK(at.count({2, 5}) == 1);
  CHECK(at.count({-2, 5}) == 1);
  for (const auto& c : m.connectors) CHECK(c.a != c.b);

  std::ostringstream csv, svg;
  write_mountain_csv(csv, m);
  write_mountain_svg(svg, m);
  CHECK(csv.str().rfind("r,tb,label_count\n-1,6,1\n1,6,1\n", 0) == 0);
  CHECK(svg.str().find("<svg") != std::string::npos);

  // deeper scans agree on the rows above the cut-off
  auto deeper = label_counts(mountain_scan(read_seed_manifest(data_path("mountain.seeds")), 5));
  for (auto [pt, c] : counts)
    if (pt.second >= 4) CHECK(deeper[pt] == c);
}

TEST_CASE("manifest errors", "[explorer][mountain]") {
  auto dir = std::filesystem::temp_directory_path() / "mtws_manifest_test";
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& text) {
    std::ofstream(dir / "m.seeds") << text;
    return (dir / "m.seeds").string();
  };
  CHECK_THROWS(read_seed_manifest(write("seed A missing.grid\n")));
  CHECK_THROWS(read_seed_manifest(write("bogus line\n")));
  CHECK_THROWS(read_seed_manifest(write("identify A 0 0 B 1 0\n")));
  std::filesystem::remove_all(dir);
}

TEST_CASE("transverse trail of the shallow range", "[explorer][mountain][transverse]") {
  auto m = mountain_scan(read_seed_manifest(data_path("mountain.seeds")), 2);
  auto ts = m.transverse_classes();
  std::map<int, std::vector<std::string>> by_sl;
  for (const auto& t : ts) by_sl[t.sl].push_back(t.label);
  CHECK(by_sl[3] == std::vector<std::string>{"T+(L+)", "T+(S+(K+))"});
  for (auto& [sl, ls] : by_sl)
    if (sl <= 1) CHECK(ls.size() == 1u);
  // the two sl = 3 classes are joined by a flype connector
  bool joined = false;
  for (const auto& c : m.connectors) joined |= (c.a == "L+" && c.b == "S+(K+)");
  CHECK(joined);
}
