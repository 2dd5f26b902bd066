#pragma once

#include <chrono>
#include <functional>
#include <stdexcept>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hpm/params.hpp"

namespace hpm::cli {

// Usage problems (bad flag values, empty grids); exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "2", "-0.25", "3+1i", "4-0.5i", "0.7i".
cplx parse_complex(const std::string& text);

// 17 significant digits; inf/nan spelled out.
std::string num(double v);

// CSV with a version line, a header and string cells.
class Csv {
 public:
  explicit Csv(std::vector<std::string> columns) : columns_(std::move(columns)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void write(std::ostream& os) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

// Everything needed to rerun a command.
struct Manifest {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json seeds = nlohmann::json::array();
  nlohmann::json tolerances = nlohmann::json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  nlohmann::json to_json() const;
};

// Writes text to path ("-" or empty means stdout) and, for real files, the
// manifest next to it as <path>.manifest.json.
void emit(const std::string& path, const std::string& text, const Manifest& manifest);

// Calls fn(i) for i in [0, n) on up to `threads` threads (0: HPM_THREADS or 1).
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace hpm::cli
