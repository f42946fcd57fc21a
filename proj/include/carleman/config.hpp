#ifndef CARLEMAN_CONFIG_HPP
#define CARLEMAN_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "carleman/grid.hpp"
#include "carleman/weights.hpp"

namespace carleman {

// Thrown for anything a user could fix by editing the config or flags.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<std::string> sequences;  // sequence specs, see parse_sequence
  std::string op = "laplacian";
  std::size_t n = 0;                   // 0: 4096 in 1D, 256 in 2D
  std::size_t dim = 1;
  unsigned k_lo = 1;
  unsigned k_hi = 8;
  std::optional<Box> inner;            // V
  std::optional<Box> outer;            // U
  std::optional<double> sigma;
  std::optional<double> gamma;
  std::optional<double> h;
  std::string out_dir = ".";
  std::optional<IndexWindow> window;
  std::size_t k = 4;
  std::optional<std::size_t> j_max;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  long band = 16;
  std::size_t k_max = kDefaultKMax;
  std::string input;                   // optional function file (csv or json)

  std::size_t grid_size() const { return n != 0 ? n : (dim == 1 ? 4096 : 256); }
  Box inner_box() const;
  Box outer_box() const;
  // Throws ConfigError when V is not strictly inside U or ranges are empty.
  void validate() const;
};

// Flat key=value map; "[section]" headers prefix later keys with "section.".
// Blank lines and lines starting with '#' or ';' are ignored.
std::map<std::string, std::string> parse_key_values(std::istream& is);

// Applies recognized keys to cfg; unknown keys are rejected.
void apply_key_values(RunConfig& cfg, const std::map<std::string, std::string>& kv);

// "gevrey:s", "logfam:s,sigma", "qfam:q", "table:path" or a path to a JSON
// file {name, family, params, k_max} / {name, family: "table", log_m: [...]}.
WeightSequence parse_sequence(const std::string& spec, std::size_t k_max = kDefaultKMax);
WeightSequence sequence_from_json(const std::string& text, std::size_t k_max = kDefaultKMax);

// "lo:hi".
IndexWindow parse_window(const std::string& text);
// "a:b" for an interval, "a:b,c:d" for a rectangle.
Box parse_box(const std::string& text);

}  // namespace carleman

#endif  // CARLEMAN_CONFIG_HPP
