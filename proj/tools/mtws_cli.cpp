#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "mtws/alexander.hpp"
#include "mtws/braid.hpp"
#include "mtws/explore/mountain.hpp"
#include "mtws/explore/replay.hpp"
#include "mtws/explore/search.hpp"
#include "mtws/flype.hpp"
#include "mtws/torus/cable.hpp"

using namespace mtws;

namespace {

constexpr int kExhausted = 2;
constexpr int kInvalid = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

GridDiagram load_grid(const std::string& path) {
  auto in = open_in(path);
  return read_grid(in);
}

torus::BlockDiscPresentation load_presentation(const std::string& path) {
  auto in = open_in(path);
  return torus::read_presentation(in);
}

void print_invariants(const GridDiagram& d, std::ostream& out = std::cout) {
  auto ci = classical_invariants(d);
  out << "n=" << d.size() << " writhe=" << writhe(d) << " tb=" << ci.tb << " r=" << ci.r << " sl=" << ci.sl()
            << "\n";
}

torus::SingularityGraph pick_graph(const torus::BlockDiscPresentation& p, const std::string& which) {
  const int eps = which[0] == '+' ? 1 : -1, delta = which[1] == '+' ? 1 : -1;
  return torus::graph_G(torus::tiling_from_blocks(p), eps, delta);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid-diagram moves, invariants and torus slopes"};
  app.require_subcommand(1);
  int rc = 0;

  std::string grid, script, pres, steps_file, seeds, csv, svg, axis = "v", sign = "+", graph = "++", frame = "ckprime";
  int site = 0, depth = 4;
  SearchBudget budget;
  bool allow_stab = false;

  auto* validate = app.add_subcommand("validate", "check a grid file");
  validate->add_option("grid", grid)->required();
  validate->callback([&] {
    auto d = load_grid(grid);
    std::cout << "valid " << d.size() << "x" << d.size() << "\n";
  });

  auto* inv = app.add_subcommand("invariants", "writhe, tb, r and sl of a grid");
  inv->add_option("grid", grid)->required();
  inv->callback([&] { print_invariants(load_grid(grid)); });

  auto* alex = app.add_subcommand("alexander", "normalized Alexander polynomial");
  alex->add_option("grid", grid)->required();
  alex->callback([&] { std::cout << alexander_polynomial(load_grid(grid)).to_string() << "\n"; });

  auto* apply = app.add_subcommand("apply", "replay a move script and print the result");
  apply->add_option("grid", grid)->required();
  apply->add_option("script", script)->required();
  apply->callback([&] {
    auto d = load_grid(grid);
    auto in = open_in(script);
    auto out = replay(read_script(in), d);
    write_grid(std::cout, out);
    print_invariants(out, std::cerr);
  });

  auto* flype = app.add_subcommand("flype", "elementary negative flype at a bundled template site");
  flype->add_option("grid", grid)->required();
  flype->add_option("--axis", axis)->check(CLI::IsMember({"v", "h"}));
  flype->add_option("--site", site);
  flype->callback([&] {
    auto out = elementary_negative_flype(load_grid(grid), axis == "v" ? BraidAxis::Vertical : BraidAxis::Horizontal, site);
    write_grid(std::cout, out);
    print_invariants(out, std::cerr);
  });

  auto* search = app.add_subcommand("search-destab", "bounded search for a destabilization");
  search->add_option("grid", grid)->required();
  search->add_option("--sign", sign)->check(CLI::IsMember({"+", "-"}));
  search->add_option("--max-depth", budget.max_depth);
  search->add_option("--max-states", budget.max_states);
  search->add_option("--timeout", budget.wall_clock_seconds);
  search->add_option("--workers", budget.workers);
  search->add_option("--max-grid", budget.max_grid_size);
  search->add_flag("--allow-stabilize", allow_stab);
  search->callback([&] {
    auto kinds = default_search_moves();
    if (allow_stab) kinds.insert(MoveKind::Stabilize);
    auto res = find_destabilization(load_grid(grid), sign == "+" ? 1 : -1, budget, kinds);
    if (!res.found) {
      std::cout << "exhausted (" << res.stats.reason << "): depth " << res.stats.depth << ", " << res.stats.states
                << " states, frontier " << res.stats.frontier << "\n";
      rc = kExhausted;
      return;
    }
    write_script(std::cout, res.script);
  });

  auto* scan = app.add_subcommand("scan", "mountain range from seed classes");
  scan->add_option("--seeds", seeds)->required();
  scan->add_option("--depth", depth);
  scan->add_option("--csv", csv);
  scan->add_option("--svg", svg);
  scan->callback([&] {
    auto m = mountain_scan(read_seed_manifest(seeds), depth);
    if (!csv.empty()) {
      std::ofstream f(csv);
      write_mountain_csv(f, m);
    } else {
      write_mountain_csv(std::cout, m);
    }
    if (!svg.empty()) {
      std::ofstream f(svg);
      write_mountain_svg(f, m);
    }
  });

  auto* slope = app.add_subcommand("slope", "dividing slope of a block-disc presentation");
  slope->add_option("presentation", pres)->required();
  slope->add_option("--graph", graph)->check(CLI::IsMember({"++", "--", "+-", "-+"}));
  slope->add_option("--framing", frame)->check(CLI::IsMember({"ck", "ckprime"}));
  slope->callback([&] {
    auto g = pick_graph(load_presentation(pres), graph);
    auto f = frame == "ck" ? torus::ck() : torus::ck_prime();
    std::cout << torus::format_rational(torus::curve_slope(g, f)) << "\n";
  });

  auto* elim = app.add_subcommand("eliminate", "cancel the trees of a singularity graph");
  elim->add_option("presentation", pres)->required();
  elim->add_option("--graph", graph)->check(CLI::IsMember({"++", "--", "+-", "-+"}));
  elim->callback([&] {
    auto g = pick_graph(load_presentation(pres), graph);
    auto before = torus::components(g);
    auto e = torus::giroux_eliminate(g);
    std::size_t trees = 0;
    for (const auto& c : before) trees += !c.closed && !c.edges.empty();
    std::cout << "trees removed: " << trees << ", edges left: " << e.edges.size() << ", closed curves: "
              << torus::closed_curves(e).size() << ", slope "
              << torus::format_rational(torus::curve_slope(e, torus::ck_prime())) << "\n";
  });

  auto* thin = app.add_subcommand("thin", "resize blocks or glue out discs");
  thin->add_option("presentation", pres)->required();
  thin->add_option("steps", steps_file)->required();
  thin->callback([&] {
    auto in = open_in(steps_file);
    torus::write_presentation(std::cout, torus::thin_thicken(load_presentation(pres), torus::parse_resize_steps(in)));
  });

  auto* cable = app.add_subcommand("cable", "the cable grid drawn on a presentation");
  cable->add_option("presentation", pres)->required();
  cable->callback([&] {
    auto d = torus::cable_on_torus(load_presentation(pres));
    write_grid(std::cout, d);
    print_invariants(d, std::cerr);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInvalid;
  } catch (const GridError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kInvalid;
  } catch (const torus::TorusError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kInvalid;
  } catch (const BraidError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kInvalid;
  } catch (const ReplayError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kInvalid;
  } catch (const InputError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kInvalid;
  }
  return rc;
}
