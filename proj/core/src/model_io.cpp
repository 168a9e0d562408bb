#include "rechems/model_io.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "text_util.hpp"

namespace rechems {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json terms_json(const TermSet& set) {
  ordered_json arr = ordered_json::array();
  for (std::size_t t = 0; t < kTermCount; ++t) {
    const MembershipFunction& m = set.terms[t];
    arr.push_back({{"term", to_string(term_from_index(t))}, {"abcd", {m.a, m.b, m.c, m.d}}});
  }
  return arr;
}

Term term_named(const json& j, const std::string& where) {
  if (!j.is_string()) throw std::invalid_argument(where + ": expected a term name");
  const std::string name = j.get<std::string>();
  for (std::size_t t = 0; t < kTermCount; ++t) {
    if (name == to_string(term_from_index(t))) return term_from_index(t);
  }
  throw std::invalid_argument(where + ": unknown term '" + name + "'");
}

TermSet terms_from(const json& arr, const std::string& where) {
  if (!arr.is_array() || arr.size() != kTermCount) {
    throw std::invalid_argument(where + ": expected 5 terms");
  }
  TermSet set;
  for (std::size_t t = 0; t < kTermCount; ++t) {
    const std::string at = where + "[" + std::to_string(t) + "]";
    const json& e = arr[t];
    if (!e.is_object() || !e.contains("abcd")) throw std::invalid_argument(at + ": missing abcd");
    if (e.contains("term") && term_named(e["term"], at + ".term") != term_from_index(t)) {
      throw std::invalid_argument(at + ": terms must be listed in order");
    }
    const json& v = e["abcd"];
    if (!v.is_array() || v.size() != 4 ||
        !std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number(); })) {
      throw std::invalid_argument(at + ".abcd: expected four numbers");
    }
    set.terms[t] = {v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>()};
  }
  return set;
}

}  // namespace

std::string format_fis_json(const FisModel& model, const std::optional<FisGenome>& genome) {
  ordered_json j;
  j["type"] = "mamdani";
  j["resolution"] = model.resolution();
  j["input"] = terms_json(model.input());
  j["output"] = terms_json(model.output());
  ordered_json rules = ordered_json::array();
  for (const Rule& r : model.rules()) {
    rules.push_back({{"if", to_string(r.antecedent)},
                     {"then", to_string(r.consequent)},
                     {"weight", r.weight}});
  }
  j["rules"] = rules;
  if (genome) j["genome"] = genome->genes;
  return j.dump(2) + "\n";
}

void write_fis_json(const std::filesystem::path& path, const FisModel& model,
                    const std::optional<FisGenome>& genome) {
  detail::write_text_file(path, format_fis_json(model, genome));
}

StoredFis parse_fis_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("fis json: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("fis json: expected an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "type" && key != "resolution" && key != "input" && key != "output" &&
        key != "rules" && key != "genome") {
      throw std::invalid_argument("fis json: unknown key '" + key + "'");
    }
  }

  std::optional<FisGenome> genome;
  if (j.contains("genome")) {
    const json& g = j["genome"];
    if (!g.is_array() || g.size() != FisGenome::kSize ||
        !std::all_of(g.begin(), g.end(), [](const json& x) { return x.is_number(); })) {
      throw std::invalid_argument("fis json: genome must hold 30 numbers");
    }
    FisGenome fg;
    for (std::size_t i = 0; i < FisGenome::kSize; ++i) fg.genes[i] = g[i].get<double>();
    genome = fg;
  }

  std::size_t resolution = FisModel::kDefaultResolution;
  if (j.contains("resolution")) {
    if (!j["resolution"].is_number_unsigned()) {
      throw std::invalid_argument("fis json: resolution must be a positive integer");
    }
    resolution = j["resolution"].get<std::size_t>();
  }

  const bool tables = j.contains("input") || j.contains("output") || j.contains("rules");
  if (!tables) {
    if (!genome) throw std::invalid_argument("fis json: needs term tables or a genome");
    DecodeOptions opt;
    opt.resolution = resolution;
    return {decode(*genome, opt), genome};
  }
  if (!j.contains("input") || !j.contains("output") || !j.contains("rules")) {
    throw std::invalid_argument("fis json: input, output and rules must appear together");
  }
  const TermSet input = terms_from(j["input"], "fis json: input");
  const TermSet output = terms_from(j["output"], "fis json: output");
  const json& rj = j["rules"];
  if (!rj.is_array() || rj.size() != kTermCount) {
    throw std::invalid_argument("fis json: rules must list one rule per input term");
  }
  std::array<Rule, kTermCount> rules;
  for (std::size_t i = 0; i < kTermCount; ++i) {
    const std::string at = "fis json: rules[" + std::to_string(i) + "]";
    const json& r = rj[i];
    if (!r.is_object() || !r.contains("if") || !r.contains("then")) {
      throw std::invalid_argument(at + ": needs if and then");
    }
    rules[i].antecedent = term_named(r["if"], at + ".if");
    rules[i].consequent = term_named(r["then"], at + ".then");
    rules[i].weight = 1.0;
    if (r.contains("weight")) {
      if (!r["weight"].is_number()) throw std::invalid_argument(at + ".weight: expected a number");
      rules[i].weight = r["weight"].get<double>();
    }
  }
  return {FisModel(input, output, rules, resolution), genome};
}

StoredFis read_fis_json(const std::filesystem::path& path) {
  return parse_fis_json(detail::read_text_file(path));
}

}  // namespace rechems
