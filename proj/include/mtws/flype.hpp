#pragma once

#include <fstream>
#include <string>

#include "mtws/braid.hpp"
#include "mtws/explore/script.hpp"

#ifndef MTWS_DATA_DIR
#define MTWS_DATA_DIR "data"
#endif

namespace mtws {

inline std::string data_path(const std::string& name) { return std::string(MTWS_DATA_DIR) + "/" + name; }

inline MoveScript load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GridError(GridErrc::Parse, "cannot open " + path);
  return read_script(in);
}

// The vertical-axis template: a positive stabilization, a Legendrian isotopy and
// a positive destabilization, recorded against one source diagram.
inline const MoveScript& vertical_flype_template() {
  static const MoveScript s = load_script(data_path("flype_vertical.script"));
  return s;
}

namespace detail {

inline StabilizationType stab_type_of(const GridDiagram& d, const Move& m) {
  Marker mk;
  if (!d.has_marker(m.row, m.col, &mk)) throw BraidError(BraidErrc::TemplateMismatch, "stabilization off the markers");
  return stabilization_type(mk, m.corner);
}

inline GridDiagram run_flype_macro(const GridDiagram& g, const MoveScript& tmpl) {
  auto mismatch = [](const std::string& m) { throw BraidError(BraidErrc::TemplateMismatch, m); };
  if (canonical_key(g) != tmpl.from) mismatch("diagram does not match the flype template");
  if (tmpl.steps.size() < 2) mismatch("template too short");
  const auto& first = tmpl.steps.front();
  if (first.kind != MoveKind::Stabilize || stab_type_of(g, first) != StabilizationType::Positive)
    mismatch("template must open with a positive stabilization");
  GridDiagram cur = apply_move(g, first);
  for (std::size_t i = 1; i < tmpl.steps.size(); ++i) {
    const auto& m = tmpl.steps[i];
    const bool last = i + 1 == tmpl.steps.size();
    try {
      if (m.kind == MoveKind::Destabilize) {
        auto site = destabilization_at(cur, m.row, m.col);
        auto want = last ? StabilizationType::Positive : StabilizationType::Neutral;
        if (!site || site->type != want) mismatch("unexpected destabilization in template");
      } else if (m.kind == MoveKind::Stabilize) {
        if (last || stab_type_of(cur, m) != StabilizationType::Neutral) mismatch("unexpected stabilization in template");
      } else if (m.kind != MoveKind::Commutation && m.kind != MoveKind::CyclicFlip) {
        mismatch("template steps must be Legendrian moves");
      } else if (last) {
        mismatch("template must close with a positive destabilization");
      }
      cur = apply_move(cur, m);
    } catch (const GridError& e) {
      mismatch(e.what());
    }
  }
  return cur;
}

}  // namespace detail

// Vertical axis: the template runs on the base grid. Horizontal axis: the same
// macro conjugated by transpose_flip, so S_- ... negative destabilization.
inline BraidedRectDiagram elementary_negative_flype(const BraidedRectDiagram& b, int site,
                                                    const MoveScript& tmpl = vertical_flype_template()) {
  if (site != 0) throw BraidError(BraidErrc::TemplateMismatch, "only template site 0 is bundled");
  const bool vertical = b.axis == BraidAxis::Vertical;
  const GridDiagram g = vertical ? b.base : transpose_flip(b.base);
  GridDiagram out = detail::run_flype_macro(g, tmpl);
  if (!vertical) out = transpose_flip(out);
  return to_braided_form(out, b.axis);
}

inline GridDiagram elementary_negative_flype(const GridDiagram& d, BraidAxis axis, int site,
                                             const MoveScript& tmpl = vertical_flype_template()) {
  return elementary_negative_flype(BraidedRectDiagram{d, axis, false, {}, 0}, site, tmpl).base;
}

}  // namespace mtws
