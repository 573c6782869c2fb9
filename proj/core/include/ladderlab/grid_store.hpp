// grid_store.hpp
//
// Owner of the process-wide J grid. Requests name the height and tolerance
// they need; the store loads the cache file, extends it, or rebuilds it at a
// finer tolerance, then writes it back. Grids handed out are immutable
// values sharing their node storage.

#pragma once

#include "ladderlab/hl_integral.hpp"

#include <filesystem>
#include <mutex>
#include <optional>

namespace ladderlab::hl {

class GridStore {
 public:
  // An empty path keeps the grid in memory only.
  explicit GridStore(std::filesystem::path cache_path = {}, BuildOptions options = {});

  // A grid with t_max >= t_max and tol() <= tol.
  ZetaGrid ensure(double t_max, double tol);

  // Whatever is loaded (or loadable from disk) right now, without building.
  std::optional<ZetaGrid> current();

  const std::filesystem::path& cache_path() const noexcept { return path_; }
  // Number of builds/extensions performed by this store.
  int builds() const noexcept { return builds_; }

 private:
  void try_load();

  std::filesystem::path path_;
  BuildOptions options_;
  std::optional<ZetaGrid> grid_;
  bool load_attempted_ = false;
  int builds_ = 0;
  std::mutex mutex_;
};

}  // namespace ladderlab::hl
