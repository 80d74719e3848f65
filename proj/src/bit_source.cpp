#include "fldr/bit_source.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>

namespace fldr {

ReplayBitSource ReplayBitSource::from_text(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char ch : text) {
    if (ch == '0' || ch == '1') {
      bits.push_back(static_cast<std::uint8_t>(ch - '0'));
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      throw std::invalid_argument(std::string("bit script: unexpected character '") + ch + "'");
    }
  }
  return ReplayBitSource(std::move(bits));
}

ReplayBitSource ReplayBitSource::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bit script " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

}  // namespace fldr
