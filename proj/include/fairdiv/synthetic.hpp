#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fairdiv/dataset_io.hpp"

namespace fairdiv {

// Seeded Gaussian-mixture generator: every color gets its own set of cluster
// centers drawn uniformly from [-box, box]^dim, and its points scatter around
// them with the given spread. Randomness comes from a raw mt19937_64 stream so
// runs reproduce across standard libraries.
struct SyntheticSpec {
  std::size_t n = 1000;
  std::size_t dim = 8;
  int m = 4;
  int clusters = 3;
  double spread = 0.5;
  double box = 10.0;
  std::uint64_t seed = 1;
  bool timestamps = false;  // emit t in [color, color+1) instead of a color
};

std::vector<RawRecord> make_clustered(const SyntheticSpec& spec);

// Inline dataset spec "synth://n=5000,dim=32,m=4,clusters=5,spread=0.5,seed=1".
bool is_synth_spec(const std::string& uri);
SyntheticSpec parse_synth_spec(const std::string& uri);

}  // namespace fairdiv
