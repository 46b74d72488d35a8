#pragma once

#include <stdexcept>
#include <string>

namespace tdesign {

// Which circuit family the moment operator averages over: nearest-neighbour
// ring gates (local) or uniformly random pairs (uniform).
enum class Model { local, uniform };

inline const char* model_name(Model m) { return m == Model::local ? "local" : "uniform"; }

inline Model parse_model(const std::string& s) {
  if (s == "local") return Model::local;
  if (s == "uniform") return Model::uniform;
  throw std::invalid_argument("unknown model: " + s);
}

}  // namespace tdesign
