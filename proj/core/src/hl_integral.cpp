// hl_integral.cpp

#include "ladderlab/hl_integral.hpp"

#include "ladderlab/constants.hpp"
#include "ladderlab/errors.hpp"
#include "ladderlab/zeta_critical.hpp"
#include "quadrature.hpp"

#include <nlohmann/json.hpp>
#include <omp.h>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace ladderlab::hl {
namespace {

// integral_0^10 |zeta(1/2+it)|^2 dt to 40 digits:
// 9.982734637918992531399987893073568098031
constexpr double kHeadValue = 9.982734637918992531399987893073568098031;
constexpr std::size_t kChunk = 2048;
constexpr char kMagic[8] = {'L', 'L', 'Z', 'G', 'R', 'I', 'D', '1'};

double integrand(double t) { return zeta::modulus_sq(t); }

struct Leaf {
  double end;
  double value;
};

struct PanelResult {
  std::vector<Leaf> leaves;
  double achieved = 0.0;
};

PanelResult refine_panel(double a, double b, double tol, double min_width) {
  PanelResult out;
  struct Pending {
    double a, b;
    detail::PanelEstimate est;
  };
  std::vector<Pending> stack;
  stack.push_back({a, b, detail::kronrod15(integrand, a, b)});
  // Depth-first, left half on top, so leaves come out in ascending order.
  while (!stack.empty()) {
    Pending p = stack.back();
    stack.pop_back();
    const double width = p.b - p.a;
    const double scale = std::max(std::abs(p.est.value), width);
    if (p.est.error <= tol * scale || width <= min_width) {
      out.achieved = std::max(out.achieved, p.est.error / scale);
      out.leaves.push_back({p.b, p.est.value});
      continue;
    }
    const double mid = p.a + 0.5 * width;
    stack.push_back({mid, p.b, detail::kronrod15(integrand, mid, p.b)});
    stack.push_back({p.a, mid, detail::kronrod15(integrand, p.a, mid)});
  }
  return out;
}

int thread_count(int requested) { return requested > 0 ? requested : omp_get_max_threads(); }

// Appends whole panels [first, last) (panel k covers [10+k, 11+k]).
double append_panels(std::vector<GridNode>& nodes, std::size_t first, std::size_t last,
                     double tol, const BuildOptions& options) {
  double achieved = 0.0;
  const int threads = thread_count(options.threads);
  std::vector<PanelResult> results;
  for (std::size_t start = first; start < last; start += kChunk) {
    const std::size_t stop = std::min(last, start + kChunk);
    results.assign(stop - start, {});
    const auto count = static_cast<std::ptrdiff_t>(stop - start);
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const double a = ZetaGrid::kTMin + static_cast<double>(start + static_cast<std::size_t>(i));
      results[static_cast<std::size_t>(i)] = refine_panel(a, a + 1.0, tol, options.min_width);
    }
    std::size_t added = 0;
    for (const auto& r : results) added += r.leaves.size();
    if (nodes.size() + added > options.node_budget) {
      throw ConvergenceError("build_grid: node budget exhausted before t=" +
                                 std::to_string(ZetaGrid::kTMin + static_cast<double>(start)),
                             achieved);
    }
    nodes.reserve(nodes.size() + added);
    for (const auto& r : results) {
      achieved = std::max(achieved, r.achieved);
      for (const auto& leaf : r.leaves) {
        nodes.push_back({leaf.end, 0.0, nodes.back().cumulative + leaf.value});
      }
    }
    // Node values of |zeta|^2, filled in parallel.
    const auto begin = static_cast<std::ptrdiff_t>(nodes.size() - added);
    const auto end = static_cast<std::ptrdiff_t>(nodes.size());
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::ptrdiff_t i = begin; i < end; ++i) {
      auto& n = nodes[static_cast<std::size_t>(i)];
      n.modulus_sq = integrand(n.t);
    }
  }
  return achieved;
}

void check_tol(double tol) {
  if (!(tol >= 1e-10 && tol <= 1e-3)) {
    throw DomainError("build_grid: tol must lie in [1e-10, 1e-3], got " + std::to_string(tol));
  }
}

std::size_t panel_count(double t_max) {
  return static_cast<std::size_t>(std::ceil(t_max - ZetaGrid::kTMin));
}

double elapsed(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

void check_range(const ZetaGrid& grid, double T, const char* op) {
  if (!(T >= ZetaGrid::kTMin && T <= grid.t_max())) {
    throw DomainError(std::string(op) + ": T=" + std::to_string(T) + " outside [10, " +
                      std::to_string(grid.t_max()) + "]");
  }
}

// Little-endian encoding independent of host order.
void put_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}
void put_f64(std::string& buf, double x) {
  std::uint64_t v;
  std::memcpy(&v, &x, sizeof v);
  put_u64(buf, v);
}
std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}
double get_f64(const unsigned char* p) {
  const std::uint64_t v = get_u64(p);
  double x;
  std::memcpy(&x, &v, sizeof x);
  return x;
}

class FileLock {
 public:
  FileLock(const std::filesystem::path& path, int op) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0) throw CacheError("cannot open lock file " + path.string());
    if (::flock(fd_, op) != 0) {
      ::close(fd_);
      throw CacheError("cannot lock " + path.string());
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

std::filesystem::path with_suffix(const std::filesystem::path& p, const char* suffix) {
  return std::filesystem::path(p.string() + suffix);
}

}  // namespace

double ZetaGrid::head_value() noexcept { return kHeadValue; }

std::string ZetaGrid::step_policy() const {
  std::ostringstream os;
  os << "unit panels from t=10, adaptive GK15 leaves with |K15-G7| <= " << tol_
     << " * max(|K15|, width)";
  return os.str();
}

ZetaGrid build_grid(double t_max, double tol, const BuildOptions& options) {
  if (!(t_max >= 100.0)) {
    throw DomainError("build_grid: t_max must be >= 100, got " + std::to_string(t_max));
  }
  check_tol(tol);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t panels = panel_count(t_max);
  auto nodes = std::make_shared<std::vector<GridNode>>();
  nodes->push_back({ZetaGrid::kTMin, integrand(ZetaGrid::kTMin), kHeadValue});
  const double achieved = append_panels(*nodes, 0, panels, tol, options);

  ZetaGrid grid;
  grid.t_max_ = ZetaGrid::kTMin + static_cast<double>(panels);
  grid.tol_ = tol;
  grid.nodes_ = std::move(nodes);
  grid.stats_ = {elapsed(start), thread_count(options.threads), achieved};
  if (achieved > tol) {
    throw ConvergenceError("build_grid: tolerance not met at minimum panel width", achieved);
  }
  return grid;
}

ZetaGrid extend(const ZetaGrid& grid, double new_t_max, const BuildOptions& options) {
  if (new_t_max <= grid.t_max()) return grid;
  const auto start = std::chrono::steady_clock::now();
  const std::size_t have = panel_count(grid.t_max());
  const std::size_t want = panel_count(new_t_max);
  auto nodes = std::make_shared<std::vector<GridNode>>(*grid.nodes_);
  const double achieved = append_panels(*nodes, have, want, grid.tol(), options);

  ZetaGrid out;
  out.t_max_ = ZetaGrid::kTMin + static_cast<double>(want);
  out.tol_ = grid.tol();
  out.nodes_ = std::move(nodes);
  out.stats_ = {grid.stats().seconds + elapsed(start), thread_count(options.threads),
                std::max(grid.stats().achieved_tol, achieved)};
  if (achieved > grid.tol()) {
    throw ConvergenceError("extend: tolerance not met at minimum panel width", achieved);
  }
  return out;
}

ZetaGrid ZetaGrid::halved(const BuildOptions& options) const {
  const auto& src = *nodes_;
  const auto count = static_cast<std::ptrdiff_t>(src.size()) - 1;
  std::vector<std::array<double, 2>> halves(static_cast<std::size_t>(std::max<std::ptrdiff_t>(count, 0)));
#pragma omp parallel for schedule(dynamic, 64) num_threads(thread_count(options.threads))
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const double a = src[static_cast<std::size_t>(i)].t;
    const double b = src[static_cast<std::size_t>(i) + 1].t;
    const double mid = a + 0.5 * (b - a);
    halves[static_cast<std::size_t>(i)] = {detail::kronrod15(integrand, a, mid).value,
                                           detail::kronrod15(integrand, mid, b).value};
  }
  auto nodes = std::make_shared<std::vector<GridNode>>();
  nodes->reserve(2 * src.size());
  nodes->push_back(src.front());
  for (std::size_t i = 0; i + 1 < src.size(); ++i) {
    const double a = src[i].t;
    const double mid = a + 0.5 * (src[i + 1].t - a);
    const double c_mid = nodes->back().cumulative + halves[i][0];
    nodes->push_back({mid, integrand(mid), c_mid});
    nodes->push_back({src[i + 1].t, src[i + 1].modulus_sq, c_mid + halves[i][1]});
  }
  ZetaGrid out = *this;
  out.nodes_ = std::move(nodes);
  return out;
}

double j_integral(const ZetaGrid& grid, double T) {
  check_range(grid, T, "j_integral");
  const auto nodes = grid.nodes();
  auto it = std::upper_bound(nodes.begin(), nodes.end(), T,
                             [](double v, const GridNode& n) { return v < n.t; });
  const GridNode& left = *(it - 1);
  if (left.t == T) return left.cumulative;
  return left.cumulative + detail::kronrod15(integrand, left.t, T).value;
}

double j_segment(const ZetaGrid& grid, double T1, double T2) {
  if (T1 > T2) throw DomainError("j_segment: T1 > T2");
  check_range(grid, T1, "j_segment");
  check_range(grid, T2, "j_segment");
  if (T1 == T2) return 0.0;
  return j_integral(grid, T2) - j_integral(grid, T1);
}

double hli_main_term(double T) {
  return T * std::log(T) - (1.0 + kLnTwoPi - 2.0 * kEulerGamma) * T;
}

HliComparison hli_compare(const ZetaGrid& grid, double T, double delta) {
  if (!(delta > 0.0 && delta <= 0.2)) throw DomainError("hli_compare: delta must be in (0, 0.2]");
  if (!(T >= 100.0)) throw DomainError("hli_compare: T must be >= 100");
  HliComparison out;
  out.T = T;
  out.delta = delta;
  out.j_value = j_integral(grid, T);
  out.main_term = hli_main_term(T);
  out.remainder = out.j_value - out.main_term;
  out.exponent_witness = std::abs(out.remainder) / std::pow(T, 1.0 / 3.0 + delta);
  return out;
}

void save_grid(const ZetaGrid& grid, const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  FileLock lock(with_suffix(path, ".lock"), LOCK_EX);

  const auto nodes = grid.nodes();
  std::string buf;
  buf.reserve(40 + nodes.size() * 24);
  buf.append(kMagic, sizeof kMagic);
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((ZetaGrid::kFormatVersion >> (8 * i)) & 0xffu));
  for (int i = 0; i < 4; ++i) buf.push_back('\0');
  put_f64(buf, grid.t_max());
  put_f64(buf, grid.tol());
  put_u64(buf, nodes.size());
  for (const auto& n : nodes) {
    put_f64(buf, n.t);
    put_f64(buf, n.modulus_sq);
    put_f64(buf, n.cumulative);
  }

  const auto tmp = with_suffix(path, ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write " + tmp.string());
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw CacheError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw CacheError("cannot replace " + path.string() + ": " + ec.message());

  nlohmann::json meta = {
      {"format_version", ZetaGrid::kFormatVersion},
      {"t_min", grid.t_min()},
      {"t_max", grid.t_max()},
      {"tol", grid.tol()},
      {"node_count", nodes.size()},
      {"head_value", ZetaGrid::head_value()},
      {"step_policy", grid.step_policy()},
      {"build_seconds", grid.stats().seconds},
      {"threads", grid.stats().threads},
      {"achieved_tol", grid.stats().achieved_tol},
  };
  std::ofstream side(with_suffix(path, ".json"), std::ios::trunc);
  side << meta.dump(2) << '\n';
}

ZetaGrid load_grid(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw CacheError("no grid cache at " + path.string());
  FileLock lock(with_suffix(path, ".lock"), LOCK_SH);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot read " + path.string());
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < 40 || std::memcmp(buf.data(), kMagic, sizeof kMagic) != 0) {
    throw CacheError("not a grid cache: " + path.string());
  }
  std::uint32_t version = 0;
  for (int i = 3; i >= 0; --i) version = (version << 8) | buf[8 + i];
  if (version != ZetaGrid::kFormatVersion) {
    throw CacheError("grid cache version " + std::to_string(version) + " unsupported");
  }
  const std::uint64_t count = get_u64(buf.data() + 32);
  if (count == 0 || buf.size() != 40 + count * 24) throw CacheError("truncated grid cache");

  auto nodes = std::make_shared<std::vector<GridNode>>(count);
  const unsigned char* p = buf.data() + 40;
  for (auto& n : *nodes) {
    n = {get_f64(p), get_f64(p + 8), get_f64(p + 16)};
    p += 24;
  }
  ZetaGrid grid;
  grid.t_max_ = get_f64(buf.data() + 16);
  grid.tol_ = get_f64(buf.data() + 24);
  grid.nodes_ = std::move(nodes);
  if (grid.nodes_->front().t != ZetaGrid::kTMin || grid.nodes_->back().t != grid.t_max_) {
    throw CacheError("grid cache inconsistent with its header");
  }

  std::ifstream side(with_suffix(path, ".json"));
  if (side) {
    try {
      const auto meta = nlohmann::json::parse(side);
      grid.stats_.seconds = meta.value("build_seconds", 0.0);
      grid.stats_.threads = meta.value("threads", 1);
      grid.stats_.achieved_tol = meta.value("achieved_tol", 0.0);
    } catch (const nlohmann::json::exception&) {
      // Metadata is advisory; the binary file is authoritative.
    }
  }
  return grid;
}

}  // namespace ladderlab::hl
