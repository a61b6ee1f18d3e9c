#include "scatterlab/presets.hpp"

#include <stdexcept>

namespace scatterlab {

namespace {

Seed rank2_seed(const std::string& name, Int d1, Int d2) {
  return Seed{from_exchange_matrix({{0, -d1}, {d2, 0}}, {d1, d2}), name};
}

Seed rank3_seed(const std::string& name, const std::vector<std::vector<Int>>& B,
                const std::vector<Int>& delta) {
  return Seed{from_exchange_matrix(B, delta), name};
}

}  // namespace

Seed preset_seed(const std::string& name) {
  if (name == "A2") return rank2_seed(name, 1, 1);
  if (name == "B2") return rank2_seed(name, 1, 2);
  if (name == "C2") return rank2_seed(name, 2, 1);
  if (name == "G2") return rank2_seed(name, 1, 3);
  if (name == "A1(1)") return rank2_seed(name, 2, 2);
  if (name == "A2(2)") return rank2_seed(name, 1, 4);
  if (name == "A3")
    return rank3_seed(name, {{0, -1, 0}, {1, 0, -1}, {0, 1, 0}}, {1, 1, 1});
  if (name == "B3")
    return rank3_seed(name, {{0, -1, 0}, {1, 0, -1}, {0, 2, 0}}, {1, 1, 2});
  if (name == "C3")
    return rank3_seed(name, {{0, -1, 0}, {1, 0, -2}, {0, 1, 0}}, {2, 2, 1});
  if (name == "A2(1)")
    return rank3_seed(name, {{0, -1, -1}, {1, 0, -1}, {1, 1, 0}}, {1, 1, 1});
  if (name == "Markov")
    return rank3_seed(name, {{0, -1, 0}, {1, 0, -2}, {0, 2, 0}}, {1, 1, 1});
  throw std::invalid_argument("unknown preset seed: " + name);
}

std::vector<std::string> preset_names() {
  return {"A2", "B2", "C2", "G2", "A1(1)", "A2(2)", "A3", "B3", "C3", "A2(1)", "Markov"};
}

}  // namespace scatterlab
