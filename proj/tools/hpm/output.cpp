#include "output.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <regex>
#include <thread>

#include <fmt/format.h>

#ifndef HPM_VERSION
#define HPM_VERSION "unknown"
#endif

namespace hpm::cli {

cplx parse_complex(const std::string& text) {
  static const std::regex num_re(R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*)");
  static const std::regex full(
      R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*([+-]\s*(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)\s*i\s*)");
  static const std::regex imag_only(R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)\s*i\s*)");
  std::smatch m;
  auto coef = [](std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return std::stod(s);
  };
  if (std::regex_match(text, m, num_re)) return {std::stod(m[1]), 0.0};
  if (std::regex_match(text, m, full)) return {std::stod(m[1]), coef(m[2])};
  if (std::regex_match(text, m, imag_only)) return {0.0, coef(m[1])};
  throw UsageError("cannot parse complex number '" + text + "' (expected e.g. 2, 3+1i, 0.5-2i)");
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

void Csv::write(std::ostream& os) const {
  os << "#hpm-csv-version=1\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

nlohmann::json Manifest::to_json() const {
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {{"command", command},       {"params", params},         {"version", HPM_VERSION},
          {"seeds", seeds},           {"tolerances", tolerances}, {"wall_time_s", wall}};
}

void emit(const std::string& path, const std::string& text, const Manifest& manifest) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
  std::ofstream m(path + ".manifest.json", std::ios::binary);
  if (!m) throw UsageError("cannot write " + path + ".manifest.json");
  m << manifest.to_json().dump(2) << '\n';
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) {
    const char* env = std::getenv("HPM_THREADS");
    threads = env ? std::max(1, std::atoi(env)) : 1;
  }
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += threads) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace hpm::cli
