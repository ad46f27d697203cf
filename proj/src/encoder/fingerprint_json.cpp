#include <nlohmann/json.hpp>

#include "hdfp/encoder.hpp"

namespace hdfp::encoder {

std::string to_jsonl(const std::string& smiles, const Fingerprint& fp) {
  nlohmann::ordered_json j;
  j["smiles"] = smiles;
  j["dim"] = fp.config.dim;
  j["depth"] = fp.config.depth;
  j["seed"] = fp.config.master_seed;
  const auto c = fp.vector.components();
  j["fp"] = std::vector<double>(c.begin(), c.end());
  return j.dump();
}

}  // namespace hdfp::encoder
