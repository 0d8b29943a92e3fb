#include "ssa/run_config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace ssa {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::uint64_t parse_u64(const ParsedConfig::Entry& e, const std::string& key) {
  std::uint64_t v = 0;
  const auto* first = e.value.data();
  const auto* last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError(key + ": expected unsigned integer, got '" + e.value + "'", e.line);
  }
  return v;
}

double parse_double(const ParsedConfig::Entry& e, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected number, got '" + e.value + "'", e.line);
  }
}

bool parse_bool(const ParsedConfig::Entry& e, const std::string& key) {
  if (e.value == "true" || e.value == "1" || e.value == "on") return true;
  if (e.value == "false" || e.value == "0" || e.value == "off") return false;
  throw ConfigError(key + ": expected true/false, got '" + e.value + "'", e.line);
}

std::string parse_string(const ParsedConfig::Entry& e) {
  std::string v = e.value;
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    v = v.substr(1, v.size() - 2);
  }
  return v;
}

class SectionReader {
 public:
  SectionReader(const ParsedConfig& parsed, const std::string& section)
      : section_(section) {
    auto it = parsed.sections.find(section);
    if (it != parsed.sections.end()) entries_ = &it->second;
  }

  bool present() const { return entries_ != nullptr; }

  const ParsedConfig::Entry* find(const std::string& key) {
    if (!entries_) return nullptr;
    auto it = entries_->find(key);
    if (it == entries_->end()) return nullptr;
    consumed_.insert(key);
    return &it->second;
  }

  const ParsedConfig::Entry& require(const std::string& key) {
    const ParsedConfig::Entry* e = find(key);
    if (!e) throw ConfigError("[" + section_ + "] missing required key '" + key + "'", 0);
    return *e;
  }

  void reject_unknown() const {
    if (!entries_) return;
    for (const auto& [key, entry] : *entries_) {
      if (!consumed_.count(key)) {
        throw ConfigError("[" + section_ + "] unknown key '" + key + "'", entry.line);
      }
    }
  }

 private:
  std::string section_;
  const std::map<std::string, ParsedConfig::Entry>* entries_ = nullptr;
  std::set<std::string> consumed_;
};

}  // namespace

ParsedConfig parse_config_text(const std::string& text) {
  ParsedConfig out;
  std::istringstream is(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3) {
        throw ConfigError("malformed section header '" + t + "'", line_no);
      }
      section = trim(t.substr(1, t.size() - 2));
      out.sections[section];
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value', got '" + t + "'", line_no);
    }
    if (section.empty()) {
      throw ConfigError("key outside any [section]", line_no);
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line_no);
    auto& entries = out.sections[section];
    if (entries.count(key)) {
      throw ConfigError("duplicate key '" + key + "' in [" + section + "]", line_no);
    }
    entries[key] = {value, line_no};
  }
  return out;
}

AppConfig load_config_text(const std::string& text) {
  const ParsedConfig parsed = parse_config_text(text);
  for (const auto& [name, entries] : parsed.sections) {
    if (name != "sim" && name != "lif" && name != "energy" && name != "ann") {
      throw ConfigError("unknown section [" + name + "]", 0);
    }
  }

  AppConfig cfg = default_config();
  cfg.config_hash = fnv1a64(text);

  SectionReader sim(parsed, "sim");
  if (const auto* e = sim.find("tokens")) cfg.sim.tokens = parse_u64(*e, "tokens");
  if (const auto* e = sim.find("embed_dim")) cfg.sim.embed_dim = parse_u64(*e, "embed_dim");
  if (const auto* e = sim.find("key_dim")) cfg.sim.key_dim = parse_u64(*e, "key_dim");
  if (const auto* e = sim.find("t_steps")) cfg.sim.t_steps = parse_u64(*e, "t_steps");
  if (const auto* e = sim.find("seed")) cfg.sim.global_seed = parse_u64(*e, "seed");
  double lo = cfg.sim.input_range.lo;
  double hi = cfg.sim.input_range.hi;
  if (const auto* e = sim.find("input_lo")) lo = parse_double(*e, "input_lo");
  if (const auto* e = sim.find("input_hi")) hi = parse_double(*e, "input_hi");
  if (!(lo < hi)) throw ConfigError("[sim] input_lo must be < input_hi", 0);
  cfg.sim.input_range = EncoderRange(lo, hi);
  if (const auto* e = sim.find("shared_score_rng")) {
    cfg.sim.shared_score_rng = parse_bool(*e, "shared_score_rng");
  }
  if (const auto* e = sim.find("allow_general_dims")) {
    cfg.sim.allow_general_dims = parse_bool(*e, "allow_general_dims");
  }
  sim.reject_unknown();

  SectionReader lif(parsed, "lif");
  if (const auto* e = lif.find("beta")) cfg.lif.beta = parse_double(*e, "beta");
  if (const auto* e = lif.find("v_threshold")) cfg.lif.v_threshold = parse_double(*e, "v_threshold");
  if (const auto* e = lif.find("reset")) {
    const std::string v = e->value;
    if (v == "to_zero") {
      cfg.lif.reset = ResetMode::kToZero;
    } else if (v == "subtract") {
      cfg.lif.reset = ResetMode::kSubtract;
    } else {
      throw ConfigError("reset: expected to_zero or subtract, got '" + v + "'", e->line);
    }
  }
  lif.reject_unknown();

  SectionReader energy(parsed, "energy");
  if (energy.present()) {
    EnergyConfig e;
    e.mac_pj = parse_double(energy.require("mac_pj"), "mac_pj");
    e.ac_pj = parse_double(energy.require("ac_pj"), "ac_pj");
    e.and_pj = parse_double(energy.require("and_pj"), "and_pj");
    e.add_pj = parse_double(energy.require("add_pj"), "add_pj");
    e.rng_draw_pj = parse_double(energy.require("rng_draw_pj"), "rng_draw_pj");
    e.compare_pj = parse_double(energy.require("compare_pj"), "compare_pj");
    e.softmax_pj = parse_double(energy.require("softmax_pj"), "softmax_pj");
    e.mem_read_pj_per_bit = parse_double(energy.require("mem_read_pj_per_bit"), "mem_read_pj_per_bit");
    e.mem_write_pj_per_bit = parse_double(energy.require("mem_write_pj_per_bit"), "mem_write_pj_per_bit");
    e.provenance = parse_string(energy.require("provenance"));
    energy.reject_unknown();
    e.validate();
    cfg.energy = std::move(e);
  }

  SectionReader ann(parsed, "ann");
  if (const auto* e = ann.find("softmax_op_equiv")) {
    cfg.ann_cost.softmax_op_equiv = parse_double(*e, "softmax_op_equiv");
  }
  ann.reject_unknown();

  try {
    cfg.sim.validate();
    cfg.lif.validate();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(ex.what(), 0);
  }
  return cfg;
}

AppConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw ConfigError("cannot open config file: " + path.string(), 0);
  }
  std::ostringstream buffer;
  buffer << is.rdbuf();
  return load_config_text(buffer.str());
}

AppConfig default_config() {
  AppConfig cfg;
  cfg.config_hash = fnv1a64("");
  return cfg;
}

std::uint64_t fnv1a64(const std::string& bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ssa
