#include "fairdiv/synthetic.hpp"

#include <cmath>
#include <random>

namespace fairdiv {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Box-Muller, spelled out so the stream does not depend on the standard
// library's distribution implementations.
double gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::acos(-1.0) * u2);
}

}  // namespace

std::vector<RawRecord> make_clustered(const SyntheticSpec& spec) {
  if (spec.n == 0) throw InputError("synthetic spec needs n >= 1");
  if (spec.dim == 0) throw InputError("synthetic spec needs dim >= 1");
  if (spec.m < 1) throw InputError("synthetic spec needs m >= 1");
  if (spec.clusters < 1) throw InputError("synthetic spec needs clusters >= 1");

  std::mt19937_64 rng(spec.seed);
  std::vector<RawRecord> records;
  records.reserve(spec.n);
  PointId next_id = 0;

  for (int c = 0; c < spec.m; ++c) {
    const std::size_t share = spec.n / static_cast<std::size_t>(spec.m) +
                              (static_cast<std::size_t>(c) < spec.n % static_cast<std::size_t>(spec.m) ? 1 : 0);
    std::vector<std::vector<double>> centers(static_cast<std::size_t>(spec.clusters));
    for (auto& center : centers) {
      center.resize(spec.dim);
      for (double& coord : center) coord = uniform(rng, -spec.box, spec.box);
    }
    for (std::size_t j = 0; j < share; ++j) {
      const auto& center = centers[rng() % centers.size()];
      RawRecord rec;
      rec.id = next_id++;
      rec.vec.resize(spec.dim);
      for (std::size_t d = 0; d < spec.dim; ++d) {
        rec.vec[d] = center[d] + spec.spread * gaussian(rng);
      }
      if (spec.timestamps) {
        rec.t = static_cast<double>(c) +
                (static_cast<double>(j) + 0.5) / static_cast<double>(share);
      } else {
        rec.color = c;
      }
      records.push_back(std::move(rec));
    }
  }
  return records;
}

bool is_synth_spec(const std::string& uri) { return uri.rfind("synth://", 0) == 0; }

SyntheticSpec parse_synth_spec(const std::string& uri) {
  if (!is_synth_spec(uri)) throw InputError("not a synth:// spec: '" + uri + "'");
  SyntheticSpec spec;
  std::string body = uri.substr(8);
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t end = body.find(',', pos);
    if (end == std::string::npos) end = body.size();
    const std::string item = body.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw InputError("synth spec item '" + item + "' needs key=value");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "n") spec.n = std::stoull(value);
      else if (key == "dim") spec.dim = std::stoull(value);
      else if (key == "m") spec.m = std::stoi(value);
      else if (key == "clusters") spec.clusters = std::stoi(value);
      else if (key == "spread") spec.spread = std::stod(value);
      else if (key == "box") spec.box = std::stod(value);
      else if (key == "seed") spec.seed = std::stoull(value);
      else if (key == "timestamps") spec.timestamps = (value == "1" || value == "true");
      else throw InputError("unknown synth spec key '" + key + "'");
    } catch (const std::logic_error&) {
      throw InputError("cannot parse synth spec item '" + item + "'");
    }
  }
  return spec;
}

}  // namespace fairdiv
