#pragma once

#include <ostream>
#include <string>

#include "devtopo/persistence.hpp"

namespace devtopo {

struct SvgOptions {
  int width = 900;
  int bar_height = 4;
  int bar_gap = 2;
  std::string title;
};

// Horizontal barcode, one panel per degree, x axis 0..max_filtration.
// Infinite bars run to the right edge and end in an arrowhead.
void write_barcode_svg(std::ostream& out, const Barcode& b, const SvgOptions& opts = {});

}  // namespace devtopo
