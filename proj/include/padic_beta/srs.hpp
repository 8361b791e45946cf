#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "padic_beta/beta.hpp"

namespace padic_beta {

using IntVec = std::vector<Integer>;

/// r = (r_1, …, r_n), exact rationals, n ≥ 1.
using SrsParameter = std::vector<QRational>;

/// (z_2, …, z_n, −⌊r·z⌋).
IntVec tau_tilde(const SrsParameter& r, const IntVec& z);
/// (z_2, …, z_n, −⌈r·z⌉).
IntVec tau(const SrsParameter& r, const IntVec& z);

enum class SrsMap { tilde, ceil };

struct OrbitResult {
  enum class Kind { reaches_zero, cycle, cap_exceeded };
  Kind kind;
  /// reaches_zero: steps to 0. cycle: index of the first state on the cycle.
  /// cap_exceeded: the cap.
  std::size_t steps;
  std::size_t cycle_length = 0;
  /// The cycle, starting at its entry state.
  std::vector<IntVec> cycle;
};

std::string to_string(OrbitResult::Kind k);

OrbitResult orbit(SrsMap map, const SrsParameter& r, const IntVec& z,
                  std::size_t cap);

enum class SrsStatus { member, non_member, unknown };

std::string to_string(SrsStatus s);

struct SrsWitness {
  enum class Kind {
    cycle,   // a τ̃-cycle avoiding 0
    escape,  // an orbit whose eigen-projection provably grows forever
  };
  Kind kind;
  IntVec start;
  /// cycle: the cycle states. escape: the orbit from start up to the point
  /// where growth is certified.
  std::vector<IntVec> states;
};

struct SrsVerdict {
  SrsStatus status;
  std::optional<SrsWitness> witness;
  std::size_t witness_set_size = 0;
  std::size_t max_orbit_length = 0;
};

/// Whether every τ̃_r-orbit reaches 0. Builds the smallest set containing
/// ±e_1..±e_n closed under z ↦ τ̃_r(z) and z ↦ −τ̃_r(−z); member iff each of
/// its elements reaches 0 within orbit_cap. Non-membership is only reported
/// with a concrete witness. Exhausted caps give unknown.
///
/// The escape certificate uses a floating-point left eigenvector of the
/// companion matrix; everything else is exact.
SrsVerdict d0_test(const SrsParameter& r, std::size_t witness_cap,
                   std::size_t orbit_cap);

struct Caps {
  std::size_t orbit = 100000;
  std::size_t witness = 1000000;
  std::size_t steps = 10000;
};

enum class FinStatus { holds, fails, unknown };

std::string to_string(FinStatus s);

struct FinVerdict {
  FinStatus status;
  /// "not_pc", "coefficient_dominance", "srs_non_member", "srs_unknown" or
  /// empty when the property holds.
  std::string reason;
  PcVerdict classification;
  std::optional<SrsVerdict> srs;
  /// Power-basis coordinates of an element of Z[1/p][β] with an infinite
  /// expansion, derived from the SRS witness.
  std::optional<std::vector<QRational>> witness_element;
};

/// Finiteness property: every element of Z[1/p][β^{−1}] ∩ Z_p has a finite
/// expansion iff β is PC, ν_p(a_1) < ν_p(a_i) for i ≥ 2, and
/// (−a_n, …, −a_1) passes d0_test.
FinVerdict fin_certify(const MinPoly& m, const Caps& caps);

struct RasterBox {
  QRational x0 = -1, x1 = 1, y0 = -2, y1 = 2;
};

/// d0_test at every pixel centre of a width × height grid over the box
/// (x ↔ r_1, y ↔ r_2), row-major with the top row at y1. Pixel centres are
/// exact rationals.
std::vector<SrsStatus> raster_d20(const RasterBox& box, std::size_t width,
                                  std::size_t height, std::size_t witness_cap,
                                  std::size_t orbit_cap,
                                  std::size_t threads = 0);

/// Exact centre of pixel (col, row).
SrsParameter raster_pixel_center(const RasterBox& box, std::size_t width,
                                 std::size_t height, std::size_t col,
                                 std::size_t row);

/// Binary PGM (P5): member 0, non_member 255, unknown 128.
void write_pgm(const std::filesystem::path& path,
               const std::vector<SrsStatus>& grid, std::size_t width,
               std::size_t height);

}  // namespace padic_beta
