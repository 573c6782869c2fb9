// grid_store.cpp

#include "ladderlab/grid_store.hpp"

#include "ladderlab/errors.hpp"

#include <iostream>

namespace ladderlab::hl {

GridStore::GridStore(std::filesystem::path cache_path, BuildOptions options)
    : path_(std::move(cache_path)), options_(options) {}

void GridStore::try_load() {
  if (load_attempted_) return;
  load_attempted_ = true;
  if (path_.empty() || !std::filesystem::exists(path_)) return;
  try {
    grid_ = load_grid(path_);
  } catch (const CacheError& e) {
    std::cerr << "ladderlab: ignoring grid cache: " << e.what() << '\n';
  }
}

std::optional<ZetaGrid> GridStore::current() {
  std::lock_guard lock(mutex_);
  try_load();
  return grid_;
}

ZetaGrid GridStore::ensure(double t_max, double tol) {
  std::lock_guard lock(mutex_);
  try_load();
  const double target = std::max(t_max, 100.0);
  bool changed = false;
  if (!grid_ || grid_->tol() > tol) {
    // Missing or too coarse: build from scratch up to the larger height.
    const double height = grid_ ? std::max(target, grid_->t_max()) : target;
    grid_ = build_grid(height, tol, options_);
    changed = true;
  } else if (grid_->t_max() < target) {
    grid_ = extend(*grid_, target, options_);
    changed = true;
  }
  if (changed) {
    ++builds_;
    if (!path_.empty()) save_grid(*grid_, path_);
  }
  return *grid_;
}

}  // namespace ladderlab::hl
