#include "nlqm/format.hpp"

#include <cstdio>

namespace nlqm {

std::string format_real(double v) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return {buf, static_cast<std::size_t>(n)};
}

}  // namespace nlqm
