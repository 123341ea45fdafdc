#include "hexpst/pulse.hpp"

namespace hexpst {

std::string LayerSet::to_string() const {
  if (empty()) return "I";
  std::string s;
  for (int l = 1; l <= 3; ++l) {
    if (contains(l)) s += "Z" + std::to_string(l);
  }
  return s;
}

}  // namespace hexpst
