#include "padic_beta/srs.hpp"

#include <array>
#include <atomic>
#include <complex>
#include <cstdint>
#include <fstream>
#include <map>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include <Eigen/Dense>

namespace padic_beta {

namespace {

QRational inner(const SrsParameter& r, const IntVec& z) {
  if (r.size() != z.size()) {
    throw std::invalid_argument("dimension mismatch: r has " +
                                std::to_string(r.size()) + " entries, z has " +
                                std::to_string(z.size()));
  }
  if (r.empty()) throw std::invalid_argument("empty SRS parameter");
  QRational s = 0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r[i] * z[i];
  return s;
}

IntVec shifted(const IntVec& z, Integer last) {
  IntVec out(z.begin() + 1, z.end());
  out.push_back(std::move(last));
  return out;
}

bool all_zero(const IntVec& z) {
  for (const auto& x : z)
    if (x != 0) return false;
  return true;
}

}  // namespace

IntVec tau_tilde(const SrsParameter& r, const IntVec& z) {
  return shifted(z, -floor(inner(r, z)));
}

IntVec tau(const SrsParameter& r, const IntVec& z) {
  return shifted(z, -ceil(inner(r, z)));
}

std::string to_string(OrbitResult::Kind k) {
  switch (k) {
    case OrbitResult::Kind::reaches_zero:
      return "reaches_zero";
    case OrbitResult::Kind::cycle:
      return "cycle";
    case OrbitResult::Kind::cap_exceeded:
      return "cap_exceeded";
  }
  return "?";
}

OrbitResult orbit(SrsMap map, const SrsParameter& r, const IntVec& z,
                  std::size_t cap) {
  inner(r, z);  // validates dimensions
  std::map<IntVec, std::size_t> seen;
  std::vector<IntVec> path;
  IntVec cur = z;
  for (std::size_t k = 0; k <= cap; ++k) {
    if (all_zero(cur)) return {OrbitResult::Kind::reaches_zero, k, 0, {}};
    auto [it, inserted] = seen.emplace(cur, k);
    if (!inserted) {
      OrbitResult res{OrbitResult::Kind::cycle, it->second, k - it->second, {}};
      res.cycle.assign(path.begin() + static_cast<long>(it->second), path.end());
      return res;
    }
    path.push_back(cur);
    if (k == cap) break;
    cur = map == SrsMap::tilde ? tau_tilde(r, cur) : tau(r, cur);
  }
  return {OrbitResult::Kind::cap_exceeded, cap, 0, {}};
}

std::string to_string(SrsStatus s) {
  switch (s) {
    case SrsStatus::member:
      return "member";
    case SrsStatus::non_member:
      return "non_member";
    case SrsStatus::unknown:
      return "unknown";
  }
  return "?";
}

std::string to_string(FinStatus s) {
  switch (s) {
    case FinStatus::holds:
      return "F_holds";
    case FinStatus::fails:
      return "F_fails";
    case FinStatus::unknown:
      return "unknown";
  }
  return "?";
}

// ------------------------------------------------------------- d0 search --

namespace {

struct Overflow {};

// Word-sized kernel for n ≤ 4 and small parameters; throws Overflow when a
// coordinate leaves the safe range.
class SmallKernel {
 public:
  static constexpr std::size_t kMaxDim = 4;
  using Vec = std::array<std::int64_t, kMaxDim>;
  struct Hash {
    std::size_t operator()(const Vec& v) const {
      std::uint64_t h = 0x9e3779b97f4a7c15ull;
      for (auto x : v) {
        h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) +
             (h >> 2);
      }
      return h;
    }
  };
  template <class T>
  using Map = std::unordered_map<Vec, T, Hash>;

  static std::optional<SmallKernel> make(const SrsParameter& r) {
    if (r.size() > kMaxDim) return std::nullopt;
    Integer den = 1;
    for (const auto& x : r) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    }
    const Integer limit = Integer(1) << 30;
    if (den >= limit) return std::nullopt;
    SmallKernel k;
    k.n_ = r.size();
    k.den_ = den.get_si();
    for (std::size_t i = 0; i < r.size(); ++i) {
      const QRational scaled = r[i] * den;
      if (abs(scaled.get_num()) >= limit) return std::nullopt;
      k.num_[i] = scaled.get_num().get_si();
    }
    return k;
  }

  std::size_t dim() const { return n_; }
  Vec zero() const { return Vec{}; }
  Vec unit(std::size_t i, int sign) const {
    Vec v{};
    v[i] = sign;
    return v;
  }
  static bool is_zero(const Vec& v) { return v == Vec{}; }

  // τ̃ when ceil_variant is false, z ↦ −τ̃(−z) otherwise.
  Vec step(const Vec& z, bool ceil_variant) const {
    __int128 s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += static_cast<__int128>(num_[i]) * z[i];
    __int128 q = s / den_;
    const __int128 rem = s % den_;
    if (!ceil_variant && rem != 0 && s < 0) --q;  // floor
    if (ceil_variant && rem != 0 && s > 0) ++q;   // ceil
    const __int128 last = -q;
    if (last > kBound || last < -kBound) throw Overflow{};
    Vec out{};
    for (std::size_t i = 0; i + 1 < n_; ++i) out[i] = z[i + 1];
    out[n_ - 1] = static_cast<std::int64_t>(last);
    return out;
  }

  double coord(const Vec& v, std::size_t i) const {
    return static_cast<double>(v[i]);
  }
  IntVec to_int(const Vec& v) const {
    IntVec out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = static_cast<long>(v[i]);
    return out;
  }

 private:
  static constexpr __int128 kBound = static_cast<__int128>(1) << 40;
  std::size_t n_ = 0;
  std::int64_t den_ = 1;
  std::array<std::int64_t, kMaxDim> num_{};
};

class BigKernel {
 public:
  using Vec = IntVec;
  template <class T>
  using Map = std::map<Vec, T>;

  explicit BigKernel(SrsParameter r) : r_(std::move(r)) {}

  std::size_t dim() const { return r_.size(); }
  Vec zero() const { return Vec(r_.size(), Integer(0)); }
  Vec unit(std::size_t i, int sign) const {
    Vec v = zero();
    v[i] = sign;
    return v;
  }
  static bool is_zero(const Vec& v) { return all_zero(v); }
  Vec step(const Vec& z, bool ceil_variant) const {
    return ceil_variant ? tau(r_, z) : tau_tilde(r_, z);
  }
  double coord(const Vec& v, std::size_t i) const { return v[i].get_d(); }
  IntVec to_int(const Vec& v) const { return v; }

 private:
  SrsParameter r_;
};

// Left eigen-directions u of the companion matrix with |λ| > 1. Along such a
// direction u·τ̃(z) = λ u·z + u_n ε with ε ∈ [0,1), so once
// |u·z| > |u_n| / (|λ| − 1) the projection grows strictly for ever.
struct EscapeDirection {
  std::vector<std::complex<double>> u;
  double bound;
};

std::vector<EscapeDirection> escape_directions(const SrsParameter& r) {
  const auto n = static_cast<Eigen::Index>(r.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    a(n - 1, j) = -r[static_cast<std::size_t>(j)].get_d();
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a.transpose());
  std::vector<EscapeDirection> out;
  if (solver.info() != Eigen::Success) return out;
  for (Eigen::Index k = 0; k < n; ++k) {
    const std::complex<double> lambda = solver.eigenvalues()(k);
    const double mod = std::abs(lambda);
    if (mod < 1.0 + 1e-6) continue;
    EscapeDirection d;
    double norm = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      d.u.push_back(solver.eigenvectors()(i, k));
      norm = std::max(norm, std::abs(d.u.back()));
    }
    for (auto& c : d.u) c /= norm;
    d.bound = std::abs(d.u.back()) / (mod - 1.0);
    out.push_back(std::move(d));
  }
  return out;
}

template <class Kernel>
class D0Search {
 public:
  using Vec = typename Kernel::Vec;

  D0Search(const Kernel& k, const SrsParameter& r, std::size_t witness_cap,
           std::size_t orbit_cap)
      : k_(k), witness_cap_(witness_cap), orbit_cap_(orbit_cap) {
    if (schur_cohn(r).region != Region::interior) {
      escape_ = escape_directions(r);
    }
  }

  SrsVerdict run() {
    if (auto w = seed_search()) {
      return {SrsStatus::non_member, std::move(w), 0, 0};
    }
    return closure();
  }

 private:
  bool escapes(const Vec& z) const {
    for (const auto& d : escape_) {
      std::complex<double> s = 0;
      for (std::size_t i = 0; i < k_.dim(); ++i) s += d.u[i] * k_.coord(z, i);
      if (std::abs(s) > d.bound * (1 + 1e-6) + 1e-6) return true;
    }
    return false;
  }

  std::vector<Vec> seeds() const {
    const std::size_t n = k_.dim();
    std::vector<Vec> out;
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(k_.unit(i, 1));
      out.push_back(k_.unit(i, -1));
    }
    long radius = 1;
    while (true) {
      long count = 1;
      for (std::size_t i = 0; i < n; ++i) count *= 2 * (radius + 1) + 1;
      if (count > 125) break;
      ++radius;
    }
    std::vector<long> digits(n, -radius);
    while (true) {
      Vec v = k_.zero();
      for (std::size_t i = 0; i < n; ++i) {
        v = add_unit(v, i, digits[i]);
      }
      if (!Kernel::is_zero(v)) out.push_back(v);
      std::size_t i = 0;
      while (i < n && digits[i] == radius) digits[i++] = -radius;
      if (i == n) break;
      ++digits[i];
    }
    return out;
  }

  Vec add_unit(Vec v, std::size_t i, long times) const {
    const Vec e = k_.unit(i, times < 0 ? -1 : 1);
    for (long t = 0; t < std::labs(times); ++t) v[i] += e[i];
    return v;
  }

  // Orbits of a few small vectors: a cycle avoiding 0 or a certified escape
  // settles non-membership cheaply.
  std::optional<SrsWitness> seed_search() {
    typename Kernel::template Map<bool> reaches_zero;
    for (const Vec& seed : seeds()) {
      typename Kernel::template Map<std::size_t> index;
      std::vector<Vec> path;
      Vec cur = seed;
      bool settled = false;
      for (std::size_t k = 0; k <= orbit_cap_ && !settled; ++k) {
        if (Kernel::is_zero(cur) || reaches_zero.count(cur)) {
          for (auto& v : path) reaches_zero.emplace(std::move(v), true);
          settled = true;
          break;
        }
        if (auto it = index.find(cur); it != index.end()) {
          SrsWitness w{SrsWitness::Kind::cycle, k_.to_int(seed), {}};
          for (std::size_t i = it->second; i < path.size(); ++i) {
            w.states.push_back(k_.to_int(path[i]));
          }
          return w;
        }
        index.emplace(cur, path.size());
        path.push_back(cur);
        if (escapes(cur)) {
          SrsWitness w{SrsWitness::Kind::escape, k_.to_int(seed), {}};
          for (const auto& v : path) w.states.push_back(k_.to_int(v));
          return w;
        }
        cur = k_.step(cur, false);
      }
    }
    return std::nullopt;
  }

  SrsVerdict closure() {
    typename Kernel::template Map<std::size_t> index;
    std::vector<Vec> nodes;
    std::vector<std::size_t> next;
    const auto intern = [&](const Vec& v) -> std::optional<std::size_t> {
      auto [it, inserted] = index.emplace(v, nodes.size());
      if (inserted) {
        if (nodes.size() >= witness_cap_) return std::nullopt;
        nodes.push_back(v);
      }
      return it->second;
    };

    for (std::size_t i = 0; i < k_.dim(); ++i) {
      for (int s : {1, -1}) {
        if (!intern(k_.unit(i, s))) return unknown(nodes.size(), 0);
      }
    }
    for (std::size_t head = 0; head < nodes.size(); ++head) {
      const Vec cur = nodes[head];
      const auto fwd = intern(k_.step(cur, false));
      const auto bwd = intern(k_.step(cur, true));
      if (!fwd || !bwd) return unknown(nodes.size(), 0);
      next.push_back(*fwd);
    }

    // The set is closed under τ̃, so each orbit either hits 0 or a cycle
    // inside it.
    constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
    constexpr std::size_t kOnPath = static_cast<std::size_t>(-2);
    std::vector<std::size_t> depth(nodes.size(), kUnvisited);
    std::size_t max_depth = 0;
    for (std::size_t start = 0; start < nodes.size(); ++start) {
      std::vector<std::size_t> path;
      std::size_t cur = start;
      while (depth[cur] == kUnvisited && !Kernel::is_zero(nodes[cur])) {
        depth[cur] = kOnPath;
        path.push_back(cur);
        cur = next[cur];
      }
      std::size_t base;
      if (Kernel::is_zero(nodes[cur])) {
        depth[cur] = 0;
        base = 0;
      } else if (depth[cur] == kOnPath) {
        SrsWitness w{SrsWitness::Kind::cycle, k_.to_int(nodes[start]), {}};
        std::size_t c = cur;
        do {
          w.states.push_back(k_.to_int(nodes[c]));
          c = next[c];
        } while (c != cur);
        return {SrsStatus::non_member, std::move(w), nodes.size(), max_depth};
      } else {
        base = depth[cur];
      }
      for (std::size_t i = path.size(); i-- > 0;) {
        depth[path[i]] = ++base;
      }
      max_depth = std::max(max_depth, base);
    }
    if (max_depth > orbit_cap_) return unknown(nodes.size(), max_depth);
    return {SrsStatus::member, std::nullopt, nodes.size(), max_depth};
  }

  static SrsVerdict unknown(std::size_t size, std::size_t depth) {
    return {SrsStatus::unknown, std::nullopt, size, depth};
  }

  const Kernel& k_;
  std::size_t witness_cap_;
  std::size_t orbit_cap_;
  std::vector<EscapeDirection> escape_;
};

}  // namespace

SrsVerdict d0_test(const SrsParameter& r, std::size_t witness_cap,
                   std::size_t orbit_cap) {
  if (r.empty()) throw std::invalid_argument("empty SRS parameter");
  if (auto small = SmallKernel::make(r)) {
    try {
      return D0Search<SmallKernel>(*small, r, witness_cap, orbit_cap).run();
    } catch (const Overflow&) {
      // fall through to arbitrary precision
    }
  }
  const BigKernel big(r);
  return D0Search<BigKernel>(big, r, witness_cap, orbit_cap).run();
}

// ------------------------------------------------------------ finiteness --

FinVerdict fin_certify(const MinPoly& m, const Caps& caps) {
  FinVerdict out{FinStatus::fails, "", classify(m), std::nullopt, std::nullopt};
  if (out.classification.cls != PcClass::pc) {
    out.reason = "not_pc";
    return out;
  }
  const Valuation v1 = vp(m.a(1), m.prime());
  for (std::size_t i = 2; i <= m.degree(); ++i) {
    if (vp(m.a(i), m.prime()) <= v1) {
      out.reason = "coefficient_dominance";
      return out;
    }
  }
  out.srs = d0_test(m.negated_reversed(), caps.witness, caps.orbit);
  switch (out.srs->status) {
    case SrsStatus::member:
      out.status = FinStatus::holds;
      break;
    case SrsStatus::unknown:
      out.status = FinStatus::unknown;
      out.reason = "srs_unknown";
      break;
    case SrsStatus::non_member: {
      out.reason = "srs_non_member";
      // φ^{-1}(−z) for the witness z has an infinite expansion.
      const ContextPtr ctx = BetaContext::create(m);
      std::vector<QRational> w;
      for (const auto& x : out.srs->witness->start) w.emplace_back(-x);
      out.witness_element = from_v_coords(ctx, w).coords;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------- raster --

SrsParameter raster_pixel_center(const RasterBox& box, std::size_t width,
                                 std::size_t height, std::size_t col,
                                 std::size_t row) {
  const QRational fx = make_rational(Integer(static_cast<unsigned long>(2 * col + 1)),
                                     Integer(static_cast<unsigned long>(2 * width)));
  const QRational fy = make_rational(Integer(static_cast<unsigned long>(2 * row + 1)),
                                     Integer(static_cast<unsigned long>(2 * height)));
  return {QRational(box.x0 + (box.x1 - box.x0) * fx),
          QRational(box.y1 - (box.y1 - box.y0) * fy)};
}

std::vector<SrsStatus> raster_d20(const RasterBox& box, std::size_t width,
                                  std::size_t height, std::size_t witness_cap,
                                  std::size_t orbit_cap, std::size_t threads) {
  if (width == 0 || height == 0) {
    throw std::invalid_argument("raster dimensions must be positive");
  }
  if (box.x0 >= box.x1 || box.y0 >= box.y1) {
    throw std::invalid_argument("empty raster box");
  }
  std::vector<SrsStatus> grid(width * height, SrsStatus::unknown);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, height);

  std::atomic<std::size_t> next_row{0};
  const auto worker = [&] {
    for (std::size_t row = next_row++; row < height; row = next_row++) {
      for (std::size_t col = 0; col < width; ++col) {
        const SrsParameter r =
            raster_pixel_center(box, width, height, col, row);
        grid[row * width + col] = d0_test(r, witness_cap, orbit_cap).status;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return grid;
}

void write_pgm(const std::filesystem::path& path,
               const std::vector<SrsStatus>& grid, std::size_t width,
               std::size_t height) {
  if (grid.size() != width * height) {
    throw std::invalid_argument("grid size does not match dimensions");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "P5\n" << width << " " << height << "\n255\n";
  for (SrsStatus s : grid) {
    const char byte = s == SrsStatus::member       ? char(0)
                      : s == SrsStatus::non_member ? char(255)
                                                   : char(128);
    out.put(byte);
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace padic_beta
