#include "extsum/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "extsum/rng.hpp"

namespace extsum {

namespace {

using nlohmann::json;

constexpr const char* kMagic = "extsum-checkpoint";

std::string checksum_hex(const std::string& payload) {
  std::uint64_t h = fnv1a64(payload);
  std::ostringstream out;
  out << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) out << ((h >> shift) & 0xf);
  return out.str();
}

json dims_to_json(const ModelDims& d) {
  return {{"vocab", d.vocab},
          {"embedding", d.embedding},
          {"word_hidden", d.word_hidden},
          {"sent_hidden", d.sent_hidden},
          {"positional", d.positional},
          {"max_positions", d.max_positions},
          {"max_sentence_tokens", d.max_sentence_tokens}};
}

ModelDims dims_from_json(const json& j) {
  ModelDims d;
  d.vocab = j.at("vocab").get<std::size_t>();
  d.embedding = j.at("embedding").get<std::size_t>();
  d.word_hidden = j.at("word_hidden").get<std::size_t>();
  d.sent_hidden = j.at("sent_hidden").get<std::size_t>();
  d.positional = j.at("positional").get<std::size_t>();
  d.max_positions = j.at("max_positions").get<std::size_t>();
  d.max_sentence_tokens = j.at("max_sentence_tokens").get<std::size_t>();
  return d;
}

json config_to_json(const TrainConfig& c) {
  json j{{"arch", architecture_name(c.arch)},
         {"depth", depth_name(c.depth)},
         {"dims", dims_to_json(c.dims)},
         {"batch_size", c.batch_size},
         {"clip_threshold", c.clip_threshold},
         {"l2", c.l2},
         {"patience", c.patience},
         {"max_epochs", c.max_epochs},
         {"seed", c.seed},
         {"adadelta", {{"rho", c.adadelta.rho}, {"epsilon", c.adadelta.epsilon}}},
         {"pretrained_embeddings", c.pretrained_embeddings}};
  j["ablated"] = c.ablated.has_value() ? json(feature_name(*c.ablated)) : json(nullptr);
  return j;
}

TrainConfig config_from_json(const json& j) {
  TrainConfig c;
  c.arch = parse_architecture(j.at("arch").get<std::string>());
  c.depth = parse_depth(j.at("depth").get<std::string>());
  c.dims = dims_from_json(j.at("dims"));
  c.batch_size = j.at("batch_size").get<std::size_t>();
  c.clip_threshold = j.at("clip_threshold").get<double>();
  c.l2 = j.at("l2").get<double>();
  c.patience = j.at("patience").get<std::size_t>();
  c.max_epochs = j.at("max_epochs").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.adadelta.rho = j.at("adadelta").at("rho").get<double>();
  c.adadelta.epsilon = j.at("adadelta").at("epsilon").get<double>();
  c.pretrained_embeddings = j.at("pretrained_embeddings").get<std::string>();
  if (!j.at("ablated").is_null()) {
    c.ablated = parse_feature(j.at("ablated").get<std::string>());
  }
  return c;
}

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& ck) {
  json payload;
  payload["config"] = config_to_json(ck.config);
  payload["vocab"] = {{"cap", ck.vocab.cap()}, {"tokens", ck.vocab.tokens()}};

  json params = json::array();
  for (const auto& p : ck.model.set) {
    params.push_back({{"name", p->name},
                      {"shape", p->value.shape()},
                      {"values", p->value.values()},
                      {"regularized", p->regularized}});
  }
  payload["params"] = std::move(params);

  json grad_accum = json::array(), delta_accum = json::array();
  for (const Tensor& t : ck.optimizer.grad_accum()) grad_accum.push_back(t.values());
  for (const Tensor& t : ck.optimizer.delta_accum()) delta_accum.push_back(t.values());
  payload["optimizer"] = {{"grad_accum", std::move(grad_accum)},
                          {"delta_accum", std::move(delta_accum)}};

  payload["history"] = {{"train_loss", ck.history.train_loss},
                        {"validation_cost", ck.history.validation_cost},
                        {"best_epoch", ck.history.best_epoch}};

  std::string body = payload.dump();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CheckpointError("cannot write checkpoint file: " + path);
  out << kMagic << ' ' << Checkpoint::kVersion << ' ' << checksum_hex(body) << '\n';
  out << body << '\n';
  if (!out) throw CheckpointError("failed writing checkpoint file: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint file: " + path);
  std::string header;
  if (!std::getline(in, header)) throw CheckpointError("checkpoint file is empty: " + path);

  std::istringstream header_in(header);
  std::string magic, stored_checksum;
  int version = -1;
  header_in >> magic >> version >> stored_checksum;
  if (magic != kMagic) throw CheckpointError("not a checkpoint file: " + path);
  if (version != Checkpoint::kVersion) {
    throw CheckpointError("unsupported checkpoint version " + std::to_string(version) +
                          " (this build reads version " + std::to_string(Checkpoint::kVersion) +
                          ")");
  }

  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (!body.empty() && body.back() == '\n') body.pop_back();
  if (checksum_hex(body) != stored_checksum) {
    throw CheckpointError("checkpoint checksum mismatch (corrupt or truncated): " + path);
  }

  json payload;
  try {
    payload = json::parse(body);
  } catch (const json::exception& e) {
    throw CheckpointError("malformed checkpoint payload: " + std::string(e.what()));
  }

  try {
    Checkpoint ck;
    ck.config = config_from_json(payload.at("config"));
    ck.vocab = Vocabulary::from_tokens(
        payload.at("vocab").at("tokens").get<std::vector<std::string>>(),
        payload.at("vocab").at("cap").get<std::size_t>());

    ModelConfig mc;
    mc.arch = ck.config.arch;
    mc.depth = ck.config.depth;
    mc.dims = ck.config.dims;
    if (ck.config.ablated.has_value()) mc.features.disable(*ck.config.ablated);
    ck.model = build_model(mc, ck.config.seed);

    const json& params = payload.at("params");
    if (params.size() != ck.model.set.size()) {
      throw CheckpointError("checkpoint stores " + std::to_string(params.size()) +
                            " parameters, the configured model has " +
                            std::to_string(ck.model.set.size()));
    }
    for (const json& pj : params) {
      std::string name = pj.at("name").get<std::string>();
      Parameter* p = ck.model.set.find(name);
      if (!p) throw CheckpointError("checkpoint parameter " + name + " is not in the model");
      Tensor stored(pj.at("shape").get<std::vector<std::size_t>>(),
                    pj.at("values").get<std::vector<double>>());
      if (!stored.same_shape(p->value)) {
        throw CheckpointError("checkpoint parameter " + name + " has shape " +
                              stored.shape_string() + ", the model expects " +
                              p->value.shape_string());
      }
      p->value = std::move(stored);
      p->regularized = pj.at("regularized").get<bool>();
    }

    ck.optimizer = Adadelta(ck.model.set, ck.config.adadelta);
    const json& grad_accum = payload.at("optimizer").at("grad_accum");
    const json& delta_accum = payload.at("optimizer").at("delta_accum");
    if (grad_accum.size() != ck.model.set.size() || delta_accum.size() != ck.model.set.size()) {
      throw CheckpointError("checkpoint optimizer state does not match the parameter count");
    }
    for (std::size_t i = 0; i < ck.model.set.size(); ++i) {
      auto ga = grad_accum[i].get<std::vector<double>>();
      auto da = delta_accum[i].get<std::vector<double>>();
      if (ga.size() != ck.model.set[i].value.size() || da.size() != ck.model.set[i].value.size()) {
        throw CheckpointError("checkpoint optimizer state for " + ck.model.set[i].name +
                              " has the wrong size");
      }
      ck.optimizer.grad_accum()[i] = Tensor(ck.model.set[i].value.shape(), std::move(ga));
      ck.optimizer.delta_accum()[i] = Tensor(ck.model.set[i].value.shape(), std::move(da));
    }

    const json& history = payload.at("history");
    ck.history.train_loss = history.at("train_loss").get<std::vector<double>>();
    ck.history.validation_cost = history.at("validation_cost").get<std::vector<double>>();
    ck.history.best_epoch = history.at("best_epoch").get<std::size_t>();
    return ck;
  } catch (const CheckpointError&) {
    throw;
  } catch (const json::exception& e) {
    throw CheckpointError("malformed checkpoint payload: " + std::string(e.what()));
  }
}

}  // namespace extsum
