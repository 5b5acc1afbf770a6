#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "trustlens/detail/random.hpp"
#include "trustlens/learners/matrix.hpp"

namespace testing_support {

namespace fs = std::filesystem;

inline fs::path source_dir() { return fs::path(TRUSTLENS_SOURCE_DIR); }

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    for (int attempt = 0; attempt < 100; ++attempt) {
      auto p = fs::temp_directory_path() / ("trustlens-test-" + std::to_string(rd()));
      if (fs::create_directory(p)) {
        path_ = p;
        return;
      }
    }
    throw std::runtime_error("cannot create temp dir");
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline void write_text(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

inline std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Plain comma split; fixture tables have no quoted cells.
inline std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

struct Dataset2d {
  trustlens::learners::Matrix x;
  std::vector<int> y;
};

/// Two Gaussian blobs with unit variance, centres `separation` apart.
inline Dataset2d blobs(std::size_t n, std::uint64_t seed, double separation = 6.0) {
  trustlens::detail::Rng rng(seed);
  Dataset2d d{trustlens::learners::Matrix(n, 2), std::vector<int>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const int c = static_cast<int>(i % 2);
    const double shift = c == 1 ? separation / 2 : -separation / 2;
    d.x(i, 0) = trustlens::detail::normal(rng) + shift;
    d.x(i, 1) = trustlens::detail::normal(rng) + shift;
    d.y[i] = c;
  }
  return d;
}

/// Inner disc (class 1, radius <= 1) inside an outer ring (class 0, radius 2..3).
inline Dataset2d circles(std::size_t n, std::uint64_t seed) {
  trustlens::detail::Rng rng(seed);
  Dataset2d d{trustlens::learners::Matrix(n, 2), std::vector<int>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const int c = static_cast<int>(i % 2);
    const double r = c == 1 ? trustlens::detail::uniform(rng, 0.0, 1.0) : trustlens::detail::uniform(rng, 2.0, 3.0);
    const double a = trustlens::detail::uniform(rng, 0.0, 2 * std::numbers::pi);
    d.x(i, 0) = r * std::cos(a);
    d.x(i, 1) = r * std::sin(a);
    d.y[i] = c;
  }
  return d;
}

inline Dataset2d xor4() {
  Dataset2d d{trustlens::learners::Matrix::from_rows({{0, 0}, {0, 1}, {1, 0}, {1, 1}}), {0, 1, 1, 0}};
  return d;
}

inline double accuracy(const std::vector<int>& truth, const std::vector<int>& pred) {
  std::size_t ok = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) ok += truth[i] == pred[i];
  return static_cast<double>(ok) / static_cast<double>(truth.size());
}

template <typename Model>
std::vector<int> predict_rows(const Model& m, const trustlens::learners::Matrix& x) {
  std::vector<int> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) out[i] = m.predict(x.row(i));
  return out;
}

}  // namespace testing_support
