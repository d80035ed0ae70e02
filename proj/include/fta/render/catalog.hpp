/// @file catalog.hpp
/// Standard FTA symbol for every event and gate kind.
#pragma once

#include <string_view>

#include "fta/core/types.hpp"

namespace fta::render {

enum class Glyph {
  Rectangle,    // intermediate and top events
  Circle,       // basic event
  Diamond,      // undeveloped event
  House,        // external event
  Oval,         // conditioning event
  Triangle,     // transfer in/out
  AndGate,      // flat-bottom D
  OrGate,       // curved-bottom shield
  XorGate,      // OR with exclusion arc
  PriorityAndGate,
  InhibitGate,  // hexagon
};

inline constexpr Glyph glyph_for(EventKind kind) {
  switch (kind) {
    case EventKind::Basic: return Glyph::Circle;
    case EventKind::External: return Glyph::House;
    case EventKind::Undeveloped: return Glyph::Diamond;
    case EventKind::Conditioning: return Glyph::Oval;
    case EventKind::Intermediate:
    case EventKind::TopEvent: return Glyph::Rectangle;
    case EventKind::TransferIn:
    case EventKind::TransferOut: return Glyph::Triangle;
  }
  return Glyph::Rectangle;
}

inline constexpr Glyph glyph_for(GateKind kind) {
  switch (kind) {
    case GateKind::And: return Glyph::AndGate;
    case GateKind::Or: return Glyph::OrGate;
    case GateKind::Xor: return Glyph::XorGate;
    case GateKind::PriorityAnd: return Glyph::PriorityAndGate;
    case GateKind::Inhibit: return Glyph::InhibitGate;
  }
  return Glyph::OrGate;
}

/// Name used for the `data-glyph` attribute in rendered SVG.
inline constexpr std::string_view glyph_name(Glyph g) {
  switch (g) {
    case Glyph::Rectangle: return "rectangle";
    case Glyph::Circle: return "circle";
    case Glyph::Diamond: return "diamond";
    case Glyph::House: return "house";
    case Glyph::Oval: return "oval";
    case Glyph::Triangle: return "triangle";
    case Glyph::AndGate: return "and-gate";
    case Glyph::OrGate: return "or-gate";
    case Glyph::XorGate: return "xor-gate";
    case Glyph::PriorityAndGate: return "priority-and-gate";
    case Glyph::InhibitGate: return "inhibit-gate";
  }
  return "?";
}

}  // namespace fta::render
