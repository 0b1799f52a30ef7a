#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace biapn {

// Splits [0, n) into contiguous chunks and runs fn(begin, end) on each, using
// up to `threads` std::threads (0 = hardware concurrency). fn must be safe to
// run concurrently on disjoint ranges.
inline void parallel_for(std::uint64_t n, unsigned threads,
                         const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  if (threads == 1 || n < 2) {
    if (n) fn(0, n);
    return;
  }
  if (threads > n) threads = static_cast<unsigned>(n);
  std::vector<std::thread> pool;
  std::uint64_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::uint64_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

inline std::string to_hex(std::uint64_t v) {
  if (v == 0) return "0";
  static const char* digits = "0123456789abcdef";
  std::string s;
  while (v) {
    s.insert(s.begin(), digits[v & 0xf]);
    v >>= 4;
  }
  return s;
}

// Parses lowercase/uppercase hex without 0x prefix; returns false on bad input.
inline bool parse_hex(const std::string& s, std::uint64_t& out) {
  if (s.empty() || s.size() > 16) return false;
  std::uint64_t v = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else return false;
    v = v << 4 | static_cast<std::uint64_t>(d);
  }
  out = v;
  return true;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

}  // namespace biapn
