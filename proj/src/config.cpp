#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json_io.hpp"
#include "ltlbench/datasets.hpp"
#include "ltlbench/errors.hpp"
#include "ltlbench/harness.hpp"
#include "ltlbench/hash.hpp"

#ifndef LTLBENCH_VERSION
#define LTLBENCH_VERSION "dev"
#endif

namespace ltlbench {

using nlohmann::json;

namespace {

const std::set<std::string> kSecretKeys = {"api_key", "apikey", "key", "token", "access_token",
                                           "secret", "password", "authorization", "bearer",
                                           "credential", "credentials"};

void reject_secrets(const json& j, const std::string& where) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      std::string lower = k;
      std::transform(lower.begin(), lower.end(), lower.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (kSecretKeys.count(lower)) {
        throw ConfigError(where + "." + k +
                          ": credentials must not be stored in config; name an environment "
                          "variable in credential_env instead");
      }
      reject_secrets(v, where + "." + k);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) reject_secrets(j[i], where + "[" + std::to_string(i) + "]");
  } else if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s.rfind("sk-", 0) == 0 || s.rfind("Bearer ", 0) == 0) {
      throw ConfigError(where + ": value looks like a credential");
    }
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

std::string file_sha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

std::string template_id(Task task, Interface interface) {
  return std::string(to_string(task)) + "_" + std::string(to_string(interface));
}

DatasetKind kind_for(Task task) {
  switch (task) {
    case Task::Wff: return DatasetKind::Wff;
    case Task::TraceChar: return DatasetKind::Trace;
    case Task::Nl2Pl: return DatasetKind::ApExtraction;
    default: return DatasetKind::Nl2Ltl;
  }
}

TaskData load_task_data(Task task, const std::filesystem::path& path) {
  TaskData d;
  switch (kind_for(task)) {
    case DatasetKind::Nl2Ltl: d.nl2ltl = load_nl2ltl(path).items; break;
    case DatasetKind::Wff: d.wff = load_wff(path).items; break;
    case DatasetKind::Trace: d.traces = load_traces(path).items; break;
    case DatasetKind::ApExtraction: d.ap_extraction = load_ap_extraction(path).items; break;
  }
  return d;
}

template <typename Item>
void drop_ids(std::vector<Item>& items, const std::set<std::string>& ids) {
  items.erase(std::remove_if(items.begin(), items.end(), [&](const Item& i) { return ids.count(i.id) > 0; }),
              items.end());
}

std::set<std::string> ids_of(const TaskData& d) {
  std::set<std::string> out;
  for (const auto& i : d.nl2ltl) out.insert(i.id);
  for (const auto& i : d.wff) out.insert(i.id);
  for (const auto& i : d.traces) out.insert(i.id);
  for (const auto& i : d.ap_extraction) out.insert(i.id);
  return out;
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_secrets(j, "config");
  RunConfig cfg;
  try {
    cfg.run_id = j.value("run_id", cfg.run_id);
    cfg.output_dir = resolve(base_dir, j.value("output_dir", cfg.output_dir.string()));
    if (j.contains("transcript")) cfg.transcript = resolve(base_dir, j.at("transcript").get<std::string>());
    if (j.contains("templates")) cfg.templates = resolve(base_dir, j.at("templates").get<std::string>());
    cfg.concurrency = j.value("concurrency", cfg.concurrency);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.match_threshold = j.value("match_threshold", cfg.match_threshold);
    cfg.oracle.rng_seed = cfg.seed;
    if (j.contains("oracle")) {
      json o = j.at("oracle");
      if (!o.contains("rng_seed")) o["rng_seed"] = cfg.seed;
      cfg.oracle = detail::oracle_from_json(o);
    }
    for (const auto& m : j.at("models")) cfg.models.push_back(detail::model_from_json(m));
    for (const auto& e : j.at("experiments")) {
      ExperimentSpec x;
      std::string task = e.at("task").get<std::string>();
      auto t = parse_task(task);
      if (!t) throw ConfigError("unknown task '" + task + "'");
      x.task = *t;
      x.dataset = resolve(base_dir, e.at("dataset").get<std::string>());
      x.dataset_id = e.value("dataset_id", x.dataset.stem().string());
      if (e.contains("interfaces")) {
        for (const auto& name : e.at("interfaces")) {
          auto i = parse_interface(name.get<std::string>());
          if (!i) throw ConfigError("unknown interface '" + name.get<std::string>() + "'");
          if (!interface_supported(x.task, *i)) {
            throw ConfigError("interface " + name.get<std::string>() + " is not available for task " + task);
          }
          x.interfaces.push_back(*i);
        }
      } else {
        for (Interface i : {Interface::Minimal, Interface::Detailed, Interface::CodeCompletion}) {
          if (interface_supported(x.task, i)) x.interfaces.push_back(i);
        }
      }
      for (const auto& name : e.value("strategies", std::vector<std::string>{"zero-shot"})) {
        auto s = parse_strategy(name);
        if (!s) throw ConfigError("unknown strategy '" + name + "'");
        x.strategies.push_back(*s);
      }
      if (e.contains("exemplars")) x.exemplars = resolve(base_dir, e.at("exemplars").get<std::string>());
      x.ap_free = e.value("ap_free", false);
      if (e.contains("alignment")) x.alignment = resolve(base_dir, e.at("alignment").get<std::string>());
      if (x.ap_free && x.task != Task::Nl2Ltl && x.task != Task::Nl2Pltl) {
        throw ConfigError("ap_free only applies to nl2ltl and nl2pltl");
      }
      if (!x.exemplars && std::count(x.strategies.begin(), x.strategies.end(), Strategy::FewShot)) {
        throw ConfigError("few-shot for task " + task + " needs an exemplars file");
      }
      cfg.experiments.push_back(std::move(x));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  std::set<std::string> names;
  for (const auto& m : cfg.models) {
    if (!names.insert(m.name).second) throw ConfigError("duplicate model name '" + m.name + "'");
    if (m.kind == "http" && m.endpoint.empty()) throw ConfigError("model '" + m.name + "' needs an endpoint");
  }
  if (cfg.models.empty()) throw ConfigError("config lists no models");
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path.parent_path());
}

RunResult run_experiments(const RunConfig& cfg, bool replay) {
  if (replay && !cfg.transcript) throw ConfigError("replay needs a transcript in the config");
  TemplateStore store(cfg.templates);
  RunResult result;
  RunManifest& m = result.manifest;
  m.run_id = cfg.run_id;
  m.models = cfg.models;
  m.oracle = cfg.oracle;
  m.seeds = {{"seed", cfg.seed}, {"oracle", cfg.oracle.rng_seed}};
  m.concurrency = cfg.concurrency;
  m.match_threshold = cfg.match_threshold;
  m.code_version = LTLBENCH_VERSION;

  std::vector<std::unique_ptr<ModelClient>> clients;
  for (auto spec : cfg.models) {
    if (replay) spec.kind = "replay";
    clients.push_back(make_client(spec, cfg.transcript));
  }

  for (const auto& x : cfg.experiments) {
    TaskData data = load_task_data(x.task, x.dataset);
    std::optional<TaskData> exemplar_data;
    if (x.exemplars) {
      exemplar_data = load_task_data(x.task, *x.exemplars);
      std::set<std::string> excluded = ids_of(*exemplar_data);
      drop_ids(data.nl2ltl, excluded);
      drop_ids(data.wff, excluded);
      drop_ids(data.traces, excluded);
      drop_ids(data.ap_extraction, excluded);
      m.datasets.push_back({x.dataset_id + ":exemplars", std::string(to_string(kind_for(x.task))),
                            x.exemplars->generic_string(), file_sha256(*x.exemplars),
                            item_count(x.task, *exemplar_data)});
    }
    m.datasets.push_back({x.dataset_id, std::string(to_string(kind_for(x.task))),
                          x.dataset.generic_string(), file_sha256(x.dataset), item_count(x.task, data)});
    AlignmentOverrides alignment;
    if (x.alignment) alignment = load_alignment(*x.alignment);

    for (std::size_t c = 0; c < clients.size(); ++c) {
      for (Interface interface : x.interfaces) {
        for (Strategy strategy : x.strategies) {
          RunOptions opts;
          opts.run_id = cfg.run_id;
          opts.task = x.task;
          opts.interface = interface;
          opts.strategy = strategy;
          opts.ap_free = x.ap_free;
          opts.oracle = cfg.oracle;
          opts.alignment = alignment;
          opts.concurrency = cfg.concurrency;
          opts.match_threshold = cfg.match_threshold;
          if (strategy == Strategy::FewShot) {
            opts.exemplars = exemplars_from(x.task, interface, *exemplar_data, cfg.oracle);
            m.templates["fewshot_header"] = store.hash("fewshot_header");
            m.templates["fewshot_example"] = store.hash("fewshot_example");
          }
          if (strategy == Strategy::SelfRefine) m.templates["self_refine"] = store.hash("self_refine");
          std::string id = template_id(x.task, interface);
          m.templates[id] = store.hash(id);
          auto records = run_task(opts, data, *clients[c], store);
          for (auto& r : records) {
            r.model = cfg.models[c].name;
            result.records.push_back(std::move(r));
          }
        }
      }
    }
  }
  return result;
}

}  // namespace ltlbench
