#include "cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "msow/automata.hpp"
#include "msow/biinf.hpp"
#include "msow/compiler.hpp"
#include "msow/config.hpp"
#include "msow/decide.hpp"
#include "msow/types.hpp"
#include "selftest.hpp"

namespace msow::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Formula load_formula(const std::string& text, const std::string& file, const std::set<std::string>& free = {}) {
  if (text.empty() == file.empty()) throw UsageError("give exactly one of --formula and --formula-file");
  std::string src = file.empty() ? text : read_file(file);
  while (!src.empty() && (src.back() == '\n' || src.back() == '\r')) src.pop_back();
  return parse(src, free);
}

/// Built-in languages by name, otherwise a DFA file.
Language load_language(const std::string& spec) {
  if (spec == "all") return all_words();
  if (spec == "golden-mean") return golden_mean();
  if (spec == "alternating") return alternating_factors();
  if (spec == "lf:id") return gap_pair_language([](std::uint64_t i) { return i; }, "lf:id");
  if (spec == "lf:double") return gap_pair_language([](std::uint64_t i) { return 2 * i; }, "lf:double");
  return language_of(dfa_from_text(read_file(spec)), spec);
}

Presentation load_presentation(const std::string& spec) {
  if (spec.rfind("bi:", 0) == 0) return std::get<BiWord>(parse_word(spec));
  Language lang = load_language(spec);
  if (!lang.dfa) throw UsageError(spec + " has no automaton");
  return *lang.dfa;
}

json indicator_json(const IndicatorValue& v) {
  json j;
  j["value"] = to_string(v);
  j["witness"] = v.witness ? json(*v.witness) : json(nullptr);
  return j;
}

void emit(std::ostream& out, bool as_json, const json& j, const std::string& text) {
  if (as_json) out << j.dump(2) << "\n";
  else out << text << "\n";
}

// One stream line: step, position-0 offset, window.
std::string stream_line(std::size_t s, const BiPrefix& p) {
  return std::to_string(s) + " origin=" + std::to_string(p.origin) + " " + p.word;
}

BiPrefix parse_stream_line(const std::string& line) {
  std::istringstream in(line);
  std::string step, origin, word;
  if (!(in >> step >> origin) || origin.rfind("origin=", 0) != 0) throw UsageError("bad stream line: " + line);
  in >> word;  // empty at step 0
  return BiPrefix{word, std::stoll(origin.substr(7))};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"MSO theories of presented infinite words"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_file;
  bool as_json = false;
  app.add_option("--config", config_file, "key=value settings file");
  app.add_flag("--json", as_json, "JSON output");

  std::string formula, formula_file;
  auto formula_options = [&](CLI::App* sub) {
    sub->add_option("--formula", formula, "formula text");
    sub->add_option("--formula-file", formula_file, "file holding the formula");
  };

  auto* compile = app.add_subcommand("compile", "compile a formula to an automaton");
  formula_options(compile);
  std::string mode = "finite", out_file;
  std::vector<std::string> free_vars;
  compile->add_option("--mode", mode)->check(CLI::IsMember({"finite", "omega"}));
  compile->add_option("--out", out_file, "write the automaton here");
  compile->add_option("--free", free_vars, "free variables");

  auto* decide = app.add_subcommand("decide", "decide a sentence on a presented word");
  formula_options(decide);
  std::string word;
  decide->add_option("--word", word)->required();

  auto* indicator = app.add_subcommand("indicator", "indicator values of a sentence");
  formula_options(indicator);
  bool weak = false;
  indicator->add_option("--word", word)->required();
  indicator->add_flag("--weak", weak);

  auto* types = app.add_subcommand("types", "k-types, unary classes, representatives");
  types->require_subcommand(1);
  int k = 1;
  std::vector<std::string> words;
  auto* equiv = types->add_subcommand("equiv", "u ==_k v");
  equiv->add_option("-k", k)->required();
  equiv->add_option("words", words)->expected(2)->required();
  auto* unary = types->add_subcommand("unary", "classes of 0^n");
  unary->add_option("-k", k)->required();
  auto* rep = types->add_subcommand("rep", "representative of a presented word");
  rep->add_option("-k", k)->required();
  rep->add_option("word", word)->required();

  auto* biinf = app.add_subcommand("biinf", "bi-infinite words");
  biinf->require_subcommand(1);
  std::vector<std::string> pres;
  std::string lang_spec, bits, stream_file;
  std::size_t steps = 8;
  std::uint64_t seed = 0;
  auto* classify_cmd = biinf->add_subcommand("classify", "size of the MSO class");
  classify_cmd->add_option("word", pres)->expected(1)->required();
  auto* bequiv = biinf->add_subcommand("equiv", "MSO equivalence");
  bequiv->add_option("words", pres)->expected(2)->required();
  auto* realize = biinf->add_subcommand("realize", "stream a word with factor set L");
  realize->add_option("--lang", lang_spec)->required();
  realize->add_option("--steps", steps);
  realize->add_option("--seed", seed);
  auto* embed = biinf->add_subcommand("embed", "code oracle bits into a recurrent word");
  embed->add_option("--lang", lang_spec)->required();
  embed->add_option("--bits", bits)->required();
  embed->add_option("--seed", seed);
  auto* decode = biinf->add_subcommand("decode", "read oracle bits back");
  decode->add_option("--lang", lang_spec)->required();
  decode->add_option("--stream", stream_file)->required();
  decode->add_option("--seed", seed);

  auto* selftest = app.add_subcommand("selftest", "run the oracle suites");
  std::string only;
  selftest->add_option("--suite", only, "run one suite");

  std::vector<std::string> argv_store = {"msow"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  // settings from --config last for this call only
  struct Restore {
    Config saved = config();
    ~Restore() { config() = saved; }
  } restore;
  try {
    if (!config_file.empty()) config() = Config::from_text(read_file(config_file));

    if (*compile) {
      Formula phi = load_formula(formula, formula_file, {free_vars.begin(), free_vars.end()});
      CompiledFormula cf = mode == "finite" ? compile_finite(phi) : compile_omega(phi);
      std::string text = mode == "finite" ? (as_json ? to_json(cf.finite) : to_text(cf.finite))
                                          : (as_json ? to_json(*cf.omega, "nba") : to_text(*cf.omega, "nba"));
      if (as_json) text = json::parse(text).dump(2) + "\n";
      if (out_file.empty()) out << text;
      else {
        std::ofstream f(out_file);
        if (!f) throw UsageError("cannot write " + out_file);
        f << text;
        out << (mode == "finite" ? cf.finite.n : cf.omega->n) << " states written to " << out_file << "\n";
      }
      return kOk;
    }

    if (*decide) {
      Formula phi = load_formula(formula, formula_file);
      WordLiteral w = parse_word(word);
      json j;
      j["word"] = word;
      j["formula"] = to_string(phi);
      bool verdict = false;
      if (auto* f = std::get_if<FiniteWord>(&w)) verdict = decide_finite(*f, phi);
      else if (auto* u = std::get_if<UpWord>(&w)) verdict = decide_up(*u, phi);
      else if (auto* b = std::get_if<BiWord>(&w)) verdict = decide_bi(*b, phi);
      else {
        GapDecision d = decide_gap(std::get<GapWord>(w), phi);
        verdict = d.verdict;
        j["certificate"] = {{"n0", d.certificate.n0}, {"q", d.certificate.q}};
        j["classes"] = {{"source", d.class_source}, {"threshold", d.threshold}, {"period", d.period}};
        j["presentation"] = to_string(d.presentation);
      }
      j["verdict"] = verdict;
      emit(out, as_json, j, verdict ? "true" : "false");
      return kOk;
    }

    if (*indicator) {
      Formula phi = load_formula(formula, formula_file);
      WordLiteral w = parse_word(word);
      if (auto* u = std::get_if<UpWord>(&w)) {
        IndicatorValue v = weak ? weak_indicator_up(*u, phi) : indicator_up(*u, phi);
        json j = indicator_json(v);
        j["kind"] = weak ? "weak" : "recurrence";
        emit(out, as_json, j, to_string(v));
        return kOk;
      }
      if (auto* b = std::get_if<BiWord>(&w)) {
        if (weak) throw UsageError("--weak needs an up: word");
        BiIndicatorValue v = bi_indicator(*b, phi);
        json j = {{"left", indicator_json(v.left)}, {"right", indicator_json(v.right)}};
        emit(out, as_json, j, "left=" + to_string(v.left) + " right=" + to_string(v.right));
        return kOk;
      }
      throw UsageError("indicator needs an up: or bi: word");
    }

    if (*types) {
      if (*equiv) {
        FiniteWord u = std::get<FiniteWord>(parse_word(words[0])), v = std::get<FiniteWord>(parse_word(words[1]));
        bool same = equiv_k(u, v, k);
        json j = {{"k", k}, {"equivalent", same}, {"types", {describe(ktype_composed(u, k)), describe(ktype_composed(v, k))}}};
        emit(out, as_json, j, same ? "true" : "false");
      } else if (*unary) {
        UnaryClassification c = unary_classify(k);
        json j = {{"k", k}, {"t", c.t}, {"p", c.p}, {"l", c.l}};
        emit(out, as_json, j,
             "t=" + std::to_string(c.t) + " p=" + std::to_string(c.p) + " l=" + std::to_string(c.l));
      } else {
        WordLiteral w = parse_word(word);
        if (auto* u = std::get_if<UpWord>(&w)) {
          RepresentativeUp r = representative_up(*u, k);
          json j = {{"k", k}, {"x", r.x}, {"y", r.y}, {"exponent", r.exponent}};
          emit(out, as_json, j, "x=" + r.x + " y=" + r.y);
        } else if (auto* b = std::get_if<BiWord>(&w)) {
          RepresentativeBi r = representative_bi(*b, k);
          json j = {{"k", k}, {"x", r.x}, {"y", r.y}, {"z", r.z}};
          emit(out, as_json, j, "x=" + r.x + " y=" + r.y + " z=" + r.z);
        } else {
          throw UsageError("rep needs an up: or bi: word");
        }
      }
      return kOk;
    }

    if (*biinf) {
      if (*classify_cmd) {
        EquivalenceClassReport r = classify(load_presentation(pres[0]));
        json j = {{"cardinality", r.cardinality}, {"description", r.describe()},
                  {"witness", r.witness ? json(*r.witness) : json(nullptr)}};
        if (r.kind == ClassKind::Periodic) j["period"] = r.period;
        emit(out, as_json, j, r.describe());
      } else if (*bequiv) {
        Presentation a = load_presentation(pres[0]), b = load_presentation(pres[1]);
        bool same = mso_equivalent(a, b);
        json j = {{"equivalent", same}};
        std::string text = same ? "true" : "false";
        if (std::holds_alternative<BiWord>(a) && std::holds_alternative<BiWord>(b)) {
          auto p = shift_equivalent(std::get<BiWord>(a), std::get<BiWord>(b));
          j["shift"] = p ? json(*p) : json(nullptr);
          if (p) text += " (shift " + std::to_string(*p) + ")";
        }
        emit(out, as_json, j, text);
      } else if (*realize) {
        RealizerStream r(load_language(lang_spec), seed);
        json lines = json::array();
        std::string text;
        for (std::size_t s = 0; s <= steps; ++s) {
          if (s > 0) r.step();
          BiPrefix p = r.current();
          lines.push_back({{"step", s}, {"origin", p.origin}, {"word", p.word}});
          text += stream_line(s, p) + (s < steps ? "\n" : "");
        }
        emit(out, as_json, lines, text);
      } else if (*embed) {
        Language lang = load_language(lang_spec);
        json lines = json::array();
        std::string text;
        for (std::size_t s = 0; s <= bits.size(); ++s) {
          EmbeddingState st = embed_oracle(lang, bits.substr(0, s), seed);
          BiPrefix p{st.word(), static_cast<long long>(st.left.size())};
          lines.push_back({{"step", s}, {"origin", p.origin}, {"word", p.word}});
          text += stream_line(s, p) + (s < bits.size() ? "\n" : "");
        }
        emit(out, as_json, lines, text);
      } else {
        std::istringstream in(read_file(stream_file));
        std::vector<std::string> lines;
        for (std::string line; std::getline(in, line);)
          if (!line.empty()) lines.push_back(line);
        if (lines.empty()) throw UsageError("empty stream");
        BiPrefix last = parse_stream_line(lines.back());
        OracleBits a = decode_oracle(load_language(lang_spec), last.word.substr(static_cast<std::size_t>(last.origin)),
                                     lines.size() - 1, seed);
        emit(out, as_json, json{{"bits", a}}, a);
      }
      return kOk;
    }

    return run_selftest(out, as_json, only) ? kOk : kProperty;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::bad_variant_access&) {
    err << "usage error: wrong kind of word literal\n";
    return kUsage;
  } catch (const PropertyError& e) {
    err << "property error: " << e.what() << "\n";
    return kProperty;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return kResource;
  }
}

}  // namespace msow::cli
