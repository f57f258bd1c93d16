#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "raga/network.hpp"
#include "raga/series.hpp"

namespace raga {

inline constexpr int kModelFormatVersion = 1;

struct ModelMetadata {
  std::uint64_t seed = 0;
  std::size_t epochs = 0;
  double final_rmse = 0.0;

  friend bool operator==(const ModelMetadata&, const ModelMetadata&) = default;
};

/// Everything needed to replay a fitted network on raw pitches.
struct Model {
  NetworkConfig config;
  NetworkWeights weights;
  Scaler scaler_in;
  Scaler scaler_out;
  ModelMetadata metadata;

  friend bool operator==(const Model&, const Model&) = default;
};

/// JSON text, two-space indented, trailing newline.
std::string model_to_json(const Model& model);
/// Throws ParseError (malformed JSON) or InputError (schema violations).
Model model_from_json(const std::string& text);

void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

/// Table 2 weights with both scalers mapping the corpus range [-7, 17] onto
/// [-1, 1]. The hidden activation defaults to tanh.
Model table2_model(Activation hidden = Activation::tanh);

}  // namespace raga
