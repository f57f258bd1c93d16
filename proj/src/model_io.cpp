#include "raga/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "raga/error.hpp"

namespace raga {

using nlohmann::json;

namespace {

json scaler_to_json(const Scaler& s) {
  return json{{"kind", to_string(s.kind)},
              {"lo", s.lo},
              {"hi", s.hi},
              {"src_min", s.src_min},
              {"src_max", s.src_max}};
}

Scaler scaler_from_json(const json& j) {
  Scaler s;
  s.kind = scaler_kind_from_string(j.at("kind").get<std::string>());
  s.lo = j.at("lo").get<double>();
  s.hi = j.at("hi").get<double>();
  s.src_min = j.at("src_min").get<double>();
  s.src_max = j.at("src_max").get<double>();
  if (s.kind == ScalerKind::minmax && !(s.src_max > s.src_min && s.hi > s.lo)) {
    throw InputError("model scaler has an empty source or target interval");
  }
  return s;
}

}  // namespace

std::string model_to_json(const Model& model) {
  const auto& cfg = model.config;
  const auto& w = model.weights;
  json w_in = json::array();
  for (std::size_t j = 0; j < w.q(); ++j) {
    json row = json::array();
    for (std::size_t i = 0; i <= w.p(); ++i) row.push_back(w.in(j, i));
    w_in.push_back(std::move(row));
  }
  json w_out = json::array();
  for (std::size_t j = 0; j <= w.q(); ++j) w_out.push_back(w.out(j));

  json doc = {
      {"format_version", kModelFormatVersion},
      {"config",
       {{"p", cfg.p},
        {"q", cfg.q},
        {"hidden_act", to_string(cfg.hidden)},
        {"output_act", to_string(cfg.output)}}},
      {"w_in", std::move(w_in)},
      {"w_out", std::move(w_out)},
      {"scaler_in", scaler_to_json(model.scaler_in)},
      {"scaler_out", scaler_to_json(model.scaler_out)},
      {"metadata",
       {{"seed", model.metadata.seed},
        {"epochs", model.metadata.epochs},
        {"final_rmse", model.metadata.final_rmse}}},
  };
  return doc.dump(2) + "\n";
}

Model model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("<model>", e.byte, e.what());
  }
  try {
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw InputError("unsupported model format_version " + std::to_string(version));
    }
    Model model;
    const auto& c = doc.at("config");
    model.config.p = c.at("p").get<std::size_t>();
    model.config.q = c.at("q").get<std::size_t>();
    model.config.hidden = activation_from_string(c.at("hidden_act").get<std::string>());
    model.config.output = activation_from_string(c.at("output_act").get<std::string>());
    model.config.check();

    const auto& w_in = doc.at("w_in");
    const auto& w_out = doc.at("w_out");
    if (w_in.size() != model.config.q || w_out.size() != model.config.q + 1) {
      throw ShapeError("model weight arrays do not match " + model.config.label());
    }
    NetworkWeights w(model.config.p, model.config.q);
    for (std::size_t j = 0; j < model.config.q; ++j) {
      if (w_in[j].size() != model.config.p + 1) {
        throw ShapeError("w_in row " + std::to_string(j) + " has wrong length");
      }
      for (std::size_t i = 0; i <= model.config.p; ++i) w.in(j, i) = w_in[j][i].get<double>();
    }
    for (std::size_t j = 0; j <= model.config.q; ++j) w.out(j) = w_out[j].get<double>();
    if (!w.all_finite()) throw InputError("model weights must be finite");
    model.weights = std::move(w);

    model.scaler_in = scaler_from_json(doc.at("scaler_in"));
    model.scaler_out = scaler_from_json(doc.at("scaler_out"));
    const auto& meta = doc.at("metadata");
    model.metadata.seed = meta.at("seed").get<std::uint64_t>();
    model.metadata.epochs = meta.at("epochs").get<std::size_t>();
    model.metadata.final_rmse = meta.at("final_rmse").get<double>();
    return model;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed model document: ") + e.what());
  }
}

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write model file " + path.string());
  out << model_to_json(model);
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open model file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

Model table2_model(Activation hidden) {
  const Scaler corpus_range{ScalerKind::minmax, -1.0, 1.0, -7.0, 17.0};
  Model model;
  model.config = {2, 4, hidden, Activation::identity};
  model.weights = table2_weights();
  model.scaler_in = corpus_range;
  model.scaler_out = corpus_range;
  return model;
}

}  // namespace raga
