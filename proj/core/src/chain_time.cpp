#include "hexpst/chain_time.hpp"

#include <charconv>
#include <stdexcept>
#include <string>

namespace hexpst {

std::string ChainTime::to_string() const {
  if (n0 == 0 && n1 == 0) return "0";
  std::string s;
  auto term = [&](int n, const char* unit) {
    if (n == 0) return;
    if (!s.empty()) s += n > 0 ? "+" : "";
    if (n == -1) {
      s += "-";
    } else if (n != 1) {
      s += std::to_string(n);
    }
    s += unit;
  };
  term(n0, "t0");
  term(n1, "t1");
  return s;
}

ChainTime ChainTime::parse(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("cannot parse chain time '" + std::string(text) + "'"); };
  if (text == "0") return {};
  ChainTime out;
  std::size_t pos = 0;
  bool any = false;
  while (pos < text.size()) {
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '-') sign = -1;
      ++pos;
    } else if (any) {
      fail();
    }
    int count = 1;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, count);
    if (ec == std::errc()) {
      pos += static_cast<std::size_t>(ptr - first);
    } else {
      count = 1;
    }
    if (pos + 2 > text.size() || text[pos] != 't' || (text[pos + 1] != '0' && text[pos + 1] != '1')) fail();
    (text[pos + 1] == '0' ? out.n0 : out.n1) += sign * count;
    pos += 2;
    any = true;
  }
  if (!any) fail();
  return out;
}

}  // namespace hexpst
