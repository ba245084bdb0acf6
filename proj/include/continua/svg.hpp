#pragma once

// SVG renderings: phase diagrams of interval maps (arrows pointing right on
// R intervals and left on L intervals) and the embedded arc model.

#include "continua/continuum.hpp"

#include <string>

namespace continua::svg {

struct Style {
  double width = 960;
  std::string r_color = "#1f5fbf";
  std::string l_color = "#c0392b";
  std::string fixed_color = "#222222";
};

std::string phase_diagram(const PLHomeo& f, const Style& style = {});

// Arcs drawn in the plane (y up); with g, each wandering interval is drawn
// in its orientation color on top of the arc.
std::string model_diagram(const YModel& model, const YHomeo* g = nullptr, const Style& style = {});

}  // namespace continua::svg
