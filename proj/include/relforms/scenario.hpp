#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "relforms/frame_path.hpp"
#include "relforms/phase_space.hpp"

namespace relforms {

// splitmix64; used everywhere randomness is needed so outputs are
// bit-reproducible across platforms and standard libraries.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d649bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }  // [0,1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

struct AmplitudeInit {
  enum class Kind { Zero, Constant, Affine, Gaussian } kind = Kind::Zero;
  double amplitude = 0.0;
  std::array<double, 4> sigma{0.0, 0.0, 0.0, 0.0};  // 0 means flat along that axis
  std::uint64_t seed = 1;
};

struct LatticeSpec {
  std::array<int, 4> dims{0, 0, 0, 0};
  std::array<double, 4> spacing{1.0, 1.0, 1.0, 1.0};
  double offset = 0.5;
  bool paired = false;
  AmplitudeInit init_q, init_p;
};

struct ParticleSpec {
  double mass = 1.0;
  double charge = 0.0;
  std::array<double, 4> x0{0, 0, 0, 0};
  std::array<double, 3> p_spatial{0, 0, 0};  // contravariant 3-momentum
};

struct IntegratorSpec {
  std::string method = "rk4";
  double step = 1e-2;
  double tau0 = 0.0, tau1 = 1.0;
  double drift_bound = 1e-6;
};

struct FrameSpec {
  std::string kind = "static";  // static | boost | rotation | instant-clock
  int axis = 3;
  double rate = 0.0;
  double offset = 0.0;
};

struct Scenario {
  std::vector<ParticleSpec> particles;
  LatticeSpec lattice;
  FormOfDynamics form;
  FrameSpec frame;
  IntegratorSpec integrator;
  std::uint64_t seed = 1;

  FramePath frame_path() const;
};

// Parse and validate a scenario document; throws ValidationError with a
// line/field diagnostic on malformed input, unknown keys, or violated
// invariants (e.g. a mode on the null cone).
Scenario load_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);
std::string scenario_to_json(const Scenario& sc);

// Build the lattice (regular 4D grid, half-spacing offset keeps every node
// off the null cone) and the initial phase-space point.
ModeLattice build_lattice(const LatticeSpec& spec);
PhaseSpacePoint build_point(const Scenario& sc);

// Deterministic jitter used to generate families of verification points.
PhaseSpacePoint randomize_point(const PhaseSpacePoint& base, Rng& rng, double pos_scale,
                                double mom_scale, double amp_scale);

}  // namespace relforms
