#pragma once

#include <stdexcept>
#include <string>

#include "mtws/explore/script.hpp"
#include "mtws/flype.hpp"

namespace mtws {

enum class ReplayErrc { HashMismatch, StepInapplicable, FooterMismatch };

inline const char* to_string(ReplayErrc e) {
  switch (e) {
    case ReplayErrc::HashMismatch: return "HashMismatch";
    case ReplayErrc::StepInapplicable: return "StepInapplicable";
    case ReplayErrc::FooterMismatch: return "FooterMismatch";
  }
  return "?";
}

class ReplayError : public std::runtime_error {
 public:
  ReplayError(ReplayErrc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ReplayErrc code() const noexcept { return code_; }

 private:
  ReplayErrc code_;
};

inline GridDiagram apply_step(const GridDiagram& d, const Move& m) {
  if (m.kind == MoveKind::Flype)
    return elementary_negative_flype(d, m.axis == Axis::Column ? BraidAxis::Vertical : BraidAxis::Horizontal, m.index);
  return apply_move(d, m);
}

// Every step must apply and keep the Alexander polynomial; the footer must match.
inline GridDiagram replay(const MoveScript& s, const GridDiagram& d) {
  if (canonical_key(d) != s.from)
    throw ReplayError(ReplayErrc::HashMismatch, "script is for " + hex64(s.from) + ", diagram is " + hex64(canonical_key(d)));
  const auto alex = alexander_polynomial(d);
  GridDiagram cur = d;
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    const auto& m = s.steps[i];
    try {
      cur = apply_step(cur, m);
    } catch (const std::runtime_error& e) {
      throw ReplayError(ReplayErrc::StepInapplicable, "step " + std::to_string(i + 1) + " (" + to_string(m) + "): " + e.what());
    }
    if (!(alexander_polynomial(cur) == alex))
      throw ReplayError(ReplayErrc::StepInapplicable, "step " + std::to_string(i + 1) + " changes the Alexander polynomial");
  }
  if (s.expect && !(footer_of(cur) == *s.expect)) {
    auto f = footer_of(cur);
    throw ReplayError(ReplayErrc::FooterMismatch, "reached tb=" + std::to_string(f.tb) + " r=" + std::to_string(f.r) +
                                                      " alex=" + hex64(f.alex));
  }
  return cur;
}

}  // namespace mtws
