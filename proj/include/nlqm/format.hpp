#pragma once

#include <string>

namespace nlqm {

/// Decimal with 17 significant digits (`%.17g`), enough to round-trip a double.
std::string format_real(double v);

}  // namespace nlqm
