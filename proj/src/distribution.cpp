#include "fldr/distribution.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fldr {

WeightedDistribution::WeightedDistribution(std::vector<std::uint64_t> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("distribution has no weights");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] == 0) {
      throw std::invalid_argument("nonpositive weight at outcome " + std::to_string(i + 1));
    }
    if (weights_[i] > kMaxSum - sum_) throw std::overflow_error("weight sum exceeds 2^63");
    sum_ += weights_[i];
  }
}

std::uint64_t WeightedDistribution::max_weight() const noexcept {
  return *std::max_element(weights_.begin(), weights_.end());
}

double entropy(const WeightedDistribution& dist) {
  return static_cast<double>(entropy_precise(dist));
}

long double entropy_precise(const WeightedDistribution& dist) {
  const long double m = static_cast<long double>(dist.sum());
  long double h = 0;
  for (std::uint64_t a : dist.weights()) {
    const long double p = static_cast<long double>(a) / m;
    h += p * std::log2(m / static_cast<long double>(a));
  }
  return h;
}

std::uint64_t reduced_modulus(const WeightedDistribution& dist) {
  const std::uint64_t m = dist.sum();
  std::uint64_t modulus = 1;
  for (std::uint64_t a : dist.weights()) {
    // Each term divides m, so the running lcm does too and never overflows.
    modulus = std::lcm(modulus, m / std::gcd(a, m));
  }
  return modulus;
}

WeightedDistribution parse_weights(std::string_view text) {
  std::vector<std::uint64_t> weights;
  std::size_t pos = 0;
  auto is_sep = [](char c) { return c == ',' || std::isspace(static_cast<unsigned char>(c)); };
  while (pos < text.size()) {
    if (is_sep(text[pos])) {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() && !is_sep(text[end])) ++end;
    const std::string_view token = text.substr(pos, end - pos);
    if (token.front() == '-') {
      throw std::invalid_argument("nonpositive weight '" + std::string(token) + "'");
    }
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec == std::errc::result_out_of_range) {
      throw std::overflow_error("weight '" + std::string(token) + "' does not fit in 64 bits");
    }
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw std::invalid_argument("malformed weight '" + std::string(token) + "'");
    }
    weights.push_back(value);
    pos = end;
  }
  return WeightedDistribution(std::move(weights));
}

std::vector<WeightedDistribution> parse_weight_file(std::string_view contents) {
  std::vector<WeightedDistribution> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= contents.size()) {
    std::size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    try {
      out.push_back(parse_weights(line));
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<WeightedDistribution> read_weight_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open weight file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_weight_file(buf.str());
}

std::string format_weights(const WeightedDistribution& dist) {
  std::string out;
  for (std::uint64_t a : dist.weights()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(a);
  }
  return out;
}

}  // namespace fldr
