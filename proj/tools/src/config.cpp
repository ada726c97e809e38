#include "bench/config.hpp"

#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "adabench/errors.hpp"

namespace bench {

using adabench::ConfigError;
using adabench::ScheduleKind;
using adabench::ScheduleSpec;

std::string SourceLines::where(const std::string& key) const {
  const auto it = lines.find(key);
  if (it == lines.end()) return source;
  return source + ":" + std::to_string(it->second);
}

namespace {

class Reader {
 public:
  Reader(std::string source, SourceLines& origin) : source_(std::move(source)), origin_(origin) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& key, const std::string& what) const {
    throw ConfigError(source_ + ":" + std::to_string(node.Mark().line + 1) + ": " + key + ": " + what);
  }

  void note(const std::string& key, const YAML::Node& node) {
    origin_.lines[key] = node.Mark().line + 1;
  }

  static bool quoted(const YAML::Node& n) { return n.Tag() == "!"; }

  static bool try_number(const YAML::Node& n, double& out) {
    if (!n.IsScalar() || quoted(n)) return false;
    const std::string& s = n.Scalar();
    const char* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && p == end && std::isfinite(out);
  }

  double number(const YAML::Node& n, const std::string& key) const {
    double v = 0.0;
    if (!try_number(n, v)) fail(n, key, "expected a finite number");
    return v;
  }

  std::uint64_t count(const YAML::Node& n, const std::string& key) const {
    if (n.IsScalar() && !quoted(n)) {
      const std::string& s = n.Scalar();
      std::uint64_t v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec == std::errc{} && p == s.data() + s.size()) return v;
      double d = 0.0;
      // Accept 1e5-style integers.
      if (try_number(n, d) && d >= 0.0 && d <= 9007199254740992.0 && std::floor(d) == d) {
        return static_cast<std::uint64_t>(d);
      }
    }
    fail(n, key, "expected a non-negative integer");
  }

  std::string text(const YAML::Node& n, const std::string& key) const {
    if (!n.IsScalar()) fail(n, key, "expected a string");
    return n.Scalar();
  }

  ParamValue param(const YAML::Node& n, const std::string& key) const {
    if (n.IsScalar()) {
      double v = 0.0;
      if (try_number(n, v)) return v;
      return n.Scalar();
    }
    if (!n.IsSequence()) fail(n, key, "expected a number, a string or a list");
    if (n.size() == 0) fail(n, key, "empty list");
    std::vector<double> nums;
    std::vector<std::string> strs;
    for (const auto& item : n) {
      if (!item.IsScalar()) fail(item, key, "list items must be scalars");
      double v = 0.0;
      if (try_number(item, v)) {
        nums.push_back(v);
      } else {
        strs.push_back(item.Scalar());
      }
    }
    if (!nums.empty() && !strs.empty()) fail(n, key, "list mixes numbers and strings");
    if (!strs.empty()) return strs;
    return nums;
  }

  template <class F>
  void each(const YAML::Node& map, const std::string& section, F&& f) {
    if (!map.IsMap()) fail(map, section, "expected a mapping");
    for (const auto& kv : map) {
      const std::string key = kv.first.Scalar();
      const std::string path = section.empty() ? key : section + "." + key;
      note(path, kv.first);
      if (!f(key, path, kv.second)) fail(kv.first, path, "unknown key");
    }
  }

 private:
  std::string source_;
  SourceLines& origin_;
};

bool read_schedule_field(Reader& r, const std::string& prefix, ScheduleSpec& s,
                         const std::string& key, const std::string& path, const YAML::Node& v) {
  if (key.rfind(prefix + "_", 0) != 0) return false;
  const std::string field = key.substr(prefix.size() + 1);
  if (field == "kind") {
    try {
      s.kind = adabench::parse_schedule_kind(r.text(v, path));
    } catch (const ConfigError& e) {
      r.fail(v, path, e.what());
    }
  } else if (field == "lambda") {
    s.lambda = r.number(v, path);
  } else if (field == "factor") {
    s.factor = r.number(v, path);
  } else if (field == "t_max") {
    s.t_max = r.count(v, path);
  } else if (field == "floor") {
    s.floor = r.number(v, path);
  } else if (field == "milestones") {
    if (!v.IsSequence()) r.fail(v, path, "expected a list of steps");
    s.milestones.clear();
    for (const auto& m : v) s.milestones.push_back(r.count(m, path));
  } else {
    return false;
  }
  return true;
}

std::string fmt(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string fmt(std::uint64_t v) { return std::to_string(v); }

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string fmt_param(const ParamValue& v) {
  struct Visitor {
    std::string operator()(double d) const { return fmt(d); }
    std::string operator()(const std::string& s) const { return quote(s); }
    std::string operator()(const std::vector<double>& xs) const {
      std::string out = "[";
      for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + fmt(xs[i]);
      return out + "]";
    }
    std::string operator()(const std::vector<std::string>& xs) const {
      std::string out = "[";
      for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + quote(xs[i]);
      return out + "]";
    }
  };
  return std::visit(Visitor{}, v);
}

void write_schedule(std::ostringstream& out, const std::string& prefix, const ScheduleSpec& s) {
  out << "  " << prefix << "_kind: " << quote(std::string(adabench::to_string(s.kind))) << "\n";
  out << "  " << prefix << "_lambda: " << fmt(s.lambda) << "\n";
  out << "  " << prefix << "_milestones: [";
  for (std::size_t i = 0; i < s.milestones.size(); ++i) out << (i ? ", " : "") << s.milestones[i];
  out << "]\n";
  out << "  " << prefix << "_factor: " << fmt(s.factor) << "\n";
  out << "  " << prefix << "_t_max: " << fmt(s.t_max) << "\n";
  out << "  " << prefix << "_floor: " << fmt(s.floor) << "\n";
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  ExperimentConfig c;
  c.origin.source = source;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  Reader r(source, c.origin);
  if (!root.IsMap()) throw ConfigError(source + ": the top level must be a mapping");

  bool have_problem_name = false;
  r.each(root, "", [&](const std::string& key, const std::string&, const YAML::Node& sec) {
    if (key == "problem") {
      r.each(sec, "problem", [&](const std::string& k, const std::string& path, const YAML::Node& v) {
        if (k == "name") {
          c.problem.name = r.text(v, path);
          have_problem_name = true;
        } else if (k == "dim") {
          c.problem.dim = r.count(v, path);
        } else if (k == "params") {
          if (v.IsNull()) return true;
          r.each(v, path, [&](const std::string& pk, const std::string& pp, const YAML::Node& pv) {
            c.problem.params[pk] = r.param(pv, pp);
            return true;
          });
        } else {
          return false;
        }
        return true;
      });
    } else if (key == "optimizer") {
      auto& o = c.optimizer;
      r.each(sec, "optimizer", [&](const std::string& k, const std::string& path, const YAML::Node& v) {
        if (k == "name") o.name = r.text(v, path);
        else if (k == "alpha") o.alpha = r.number(v, path);
        else if (k == "beta1") o.beta1 = r.number(v, path);
        else if (k == "beta2") o.beta2 = r.number(v, path);
        else if (k == "epsilon") o.epsilon = r.number(v, path);
        else if (k == "weight_decay") o.weight_decay = r.number(v, path);
        else if (k == "decay_mode") o.decay_mode = r.text(v, path);
        else return false;
        return true;
      });
    } else if (key == "schedule") {
      r.each(sec, "schedule", [&](const std::string& k, const std::string& path, const YAML::Node& v) {
        return read_schedule_field(r, "alpha", c.schedule.alpha, k, path, v) ||
               read_schedule_field(r, "beta1", c.schedule.beta1, k, path, v);
      });
    } else if (key == "run") {
      auto& run = c.run;
      r.each(sec, "run", [&](const std::string& k, const std::string& path, const YAML::Node& v) {
        if (k == "steps") run.steps = r.count(v, path);
        else if (k == "seed") run.seed = r.count(v, path);
        else if (k == "trials") run.trials = r.count(v, path);
        else if (k == "record_every") run.record_every = r.count(v, path);
        else if (k == "output_dir") run.output_dir = r.text(v, path);
        else return false;
        return true;
      });
    } else {
      return false;
    }
    return true;
  });
  if (!have_problem_name) throw ConfigError(source + ": problem.name is required");

  // Domain checks, reported against the offending key.
  auto check = [&](bool ok, const std::string& key, const std::string& what) {
    if (!ok) throw ConfigError(c.origin.where(key) + ": " + key + ": " + what);
  };
  check(c.problem.dim >= 1, "problem.dim", "must be >= 1");
  check(c.run.record_every >= 1, "run.record_every", "must be >= 1");
  check(c.optimizer.decay_mode == "auto" || c.optimizer.decay_mode == "none" ||
            c.optimizer.decay_mode == "coupled" || c.optimizer.decay_mode == "decoupled",
        "optimizer.decay_mode", "expected auto, none, coupled or decoupled");
  try {
    adabench::named_optimizer(c.optimizer.name);
  } catch (const ConfigError& e) {
    check(false, "optimizer.name", e.what());
  }
  const auto& o = c.optimizer;
  check(o.alpha > 0.0, "optimizer.alpha", "must be positive");
  check(o.beta1 >= 0.0 && o.beta1 < 1.0, "optimizer.beta1", "must lie in [0, 1)");
  check(o.beta2 >= 0.0 && o.beta2 < 1.0, "optimizer.beta2", "must lie in [0, 1)");
  check(o.epsilon >= 0.0, "optimizer.epsilon", "must be non-negative");
  check(o.weight_decay >= 0.0, "optimizer.weight_decay", "must be non-negative");
  for (const auto& [prefix, spec] : {std::pair{"alpha", &c.schedule.alpha},
                                     std::pair{"beta1", &c.schedule.beta1}}) {
    try {
      spec->validate();
    } catch (const ConfigError& e) {
      const std::string key = std::string("schedule.") + prefix + "_kind";
      check(false, key, e.what());
    }
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "problem:\n";
  out << "  name: " << quote(c.problem.name) << "\n";
  out << "  dim: " << c.problem.dim << "\n";
  if (c.problem.params.empty()) {
    out << "  params: {}\n";
  } else {
    out << "  params:\n";
    for (const auto& [k, v] : c.problem.params) out << "    " << k << ": " << fmt_param(v) << "\n";
  }
  const auto& o = c.optimizer;
  out << "optimizer:\n";
  out << "  name: " << quote(o.name) << "\n";
  out << "  alpha: " << fmt(o.alpha) << "\n";
  out << "  beta1: " << fmt(o.beta1) << "\n";
  out << "  beta2: " << fmt(o.beta2) << "\n";
  out << "  epsilon: " << fmt(o.epsilon) << "\n";
  out << "  weight_decay: " << fmt(o.weight_decay) << "\n";
  out << "  decay_mode: " << quote(o.decay_mode) << "\n";
  out << "schedule:\n";
  write_schedule(out, "alpha", c.schedule.alpha);
  write_schedule(out, "beta1", c.schedule.beta1);
  out << "run:\n";
  out << "  steps: " << c.run.steps << "\n";
  out << "  seed: " << c.run.seed << "\n";
  out << "  trials: " << c.run.trials << "\n";
  out << "  record_every: " << c.run.record_every << "\n";
  out << "  output_dir: " << quote(c.run.output_dir) << "\n";
  return out.str();
}

std::string config_hash(const ExperimentConfig& config) {
  const std::string text = serialize_config(config);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw adabench::Error("config_hash: SHA-256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

adabench::OptimizerConfig optimizer_config(const ExperimentConfig& c) {
  adabench::OptimizerConfig oc = adabench::named_optimizer(c.optimizer.name);
  oc.hp.alpha = c.optimizer.alpha;
  oc.hp.beta1 = c.optimizer.beta1;
  oc.hp.beta2 = c.optimizer.beta2;
  oc.hp.epsilon = c.optimizer.epsilon;
  oc.hp.weight_decay = c.optimizer.weight_decay;
  if (c.optimizer.decay_mode != "auto") {
    oc.hp.decay_mode = adabench::parse_decay_mode(c.optimizer.decay_mode);
  } else if (oc.hp.decay_mode == adabench::DecayMode::none) {
    // adamw brings its own decoupled decay; everything else adds wd * theta to the gradient.
    oc.hp.decay_mode = adabench::DecayMode::coupled;
  }
  oc.hp.alpha_schedule = c.schedule.alpha;
  oc.hp.beta1_schedule = c.schedule.beta1;
  oc.hp.validate();
  return oc;
}

}  // namespace bench
