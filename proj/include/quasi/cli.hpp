#pragma once

/** @file cli.hpp
 *  @brief Pipeline driver behind the `quasi` command-line tool.
 *
 *  run() executes one subcommand and writes its report. Exit codes:
 *  0 when every check passes, 1 on any axiom or verification failure,
 *  2 on input errors.
 *
 *  Machine reports are JSON Lines: one flat object per record, keys in a
 *  fixed order, rationals as "p/q" strings. Record layouts:
 *    item     record, report, item, title, status, checked, violations, witness, lhs, rhs, note
 *    witness  record, report, item, index, witness, relation, lhs, rhs
 *    outer    record, set, value, cover, cover_indices
 *    extend   record, set, value, cover
 *    measurability  record, set, verdict, counterexample, whole, inside, outside
 *    value    record, name, shape, value
 *    search   record, seeds, filter, total, passing, passing_adversarial, passing_verified,
 *             failing, failing_with_additivity_failure, violations, violation_seeds
 *    summary  record, command, status, exit
 */

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "extension.hpp"
#include "instance_io.hpp"
#include "interval.hpp"
#include "outer.hpp"
#include "quasi_measure.hpp"
#include "testkit.hpp"

namespace quasi {

enum class Command { check, outer, extend, example, search };
enum class OutputFormat { text, machine };

inline const char* to_string(Command c) {
  switch (c) {
    case Command::check: return "check";
    case Command::outer: return "outer";
    case Command::extend: return "extend";
    case Command::example: return "example";
    case Command::search: return "search";
  }
  return "?";
}

struct RunConfig {
  Command command = Command::check;
  std::string input_path;  // check, outer, extend
  Variant variant = Variant::restricted;
  CoverMode cover_mode = CoverMode::all;
  std::size_t max_n = kDefaultExhaustiveLimit;  // exhaustive loops over 2^n subsets
  std::optional<std::size_t> max_cover;         // unset: |coat|
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::text;
  std::string out_path;  // empty: the output stream given to run()

  std::string set_expr;  // outer

  std::size_t samples = 1000;  // example
  Real tol = kDefaultExampleTolerance;

  std::uint64_t seeds_begin = 0;  // search, half-open [begin, end)
  std::uint64_t seeds_end = 100;
  unsigned search_max_n = 5;
  std::size_t search_max_coat = 8;
};

/// Parses "A..B" into a half-open seed range.
inline std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw std::invalid_argument("seed range must look like A..B");
  auto num = [](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("seed range bounds must be nonnegative integers");
    }
    return std::stoull(s);
  };
  const auto a = num(text.substr(0, dots));
  const auto b = num(text.substr(dots + 2));
  if (b < a) throw std::invalid_argument("seed range is reversed");
  return {a, b};
}

namespace detail {

using Json = nlohmann::ordered_json;

inline std::string format_real(Real x) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<Real>::max_digits10) << x;
  return os.str();
}

inline std::string value_text(const Rational& r) { return to_string(r); }
inline std::string value_text(Real r) { return format_real(r); }
inline std::string set_text(const GroundSet* g, SubsetMask m) { return g->format(m); }
inline std::string set_text(const GroundSet*, const IntervalSet& s) { return s.str(); }

template <class Set, class Value>
std::string witness_text(const BasicWitness<Set, Value>& w, const GroundSet* g) {
  std::string out;
  for (std::size_t i = 0; i < w.sets.size(); ++i) {
    if (i) out += "; ";
    out += w.sets[i].first + "=" + set_text(g, w.sets[i].second);
  }
  return out;
}

template <class Value>
std::string side(const std::optional<Value>& v) {
  return v ? value_text(*v) : std::string();
}

/// Collects records and renders them as JSON Lines or as text.
class ReportWriter {
 public:
  explicit ReportWriter(OutputFormat format) : format_(format) {}

  template <class Set, class Value>
  void report(const BasicReport<Set, Value>& r, const GroundSet* g) {
    if (format_ == OutputFormat::text) text_ << r.name << '\n';
    for (const auto& item : r.items) {
      const BasicWitness<Set, Value>* first = item.witnesses.empty() ? nullptr : &item.witnesses.front();
      Json j;
      j["record"] = "item";
      j["report"] = r.name;
      j["item"] = item.id;
      j["title"] = item.title;
      j["status"] = to_string(item.status);
      j["checked"] = item.checked;
      j["violations"] = item.violations;
      j["witness"] = first ? witness_text(*first, g) : "";
      j["lhs"] = first ? side(first->lhs) : "";
      j["rhs"] = first ? side(first->rhs) : "";
      j["note"] = item.note;
      emit(j);
      if (format_ == OutputFormat::text) {
        text_ << "  [" << (item.status == Status::fail ? "FAIL" : to_string(item.status)) << "] " << std::left
              << std::setw(5) << item.id << item.title << "  (" << item.checked << " checked";
        if (item.violations) text_ << ", " << item.violations << " violations";
        text_ << ")\n";
        if (!item.note.empty()) text_ << "         " << item.note << '\n';
      }
      for (std::size_t k = 0; k < item.witnesses.size(); ++k) {
        const auto& w = item.witnesses[k];
        if (format_ == OutputFormat::machine && k > 0) {
          Json wj;
          wj["record"] = "witness";
          wj["report"] = r.name;
          wj["item"] = item.id;
          wj["index"] = k;
          wj["witness"] = witness_text(w, g);
          wj["relation"] = w.relation;
          wj["lhs"] = side(w.lhs);
          wj["rhs"] = side(w.rhs);
          emit(wj);
        }
        if (format_ == OutputFormat::text) {
          text_ << "         witness: " << witness_text(w, g);
          if (w.lhs) text_ << "; lhs=" << value_text(*w.lhs);
          if (w.rhs) text_ << "; rhs=" << value_text(*w.rhs);
          text_ << '\n';
        }
      }
    }
  }

  void record(const Json& j, const std::string& text_line) {
    emit(j);
    if (format_ == OutputFormat::text) text_ << text_line << '\n';
  }

  void summary(Command c, bool ok, int code) {
    Json j;
    j["record"] = "summary";
    j["command"] = to_string(c);
    j["status"] = ok ? "pass" : "fail";
    j["exit"] = code;
    record(j, std::string("result: ") + (ok ? "pass" : "fail"));
  }

  std::string str() const { return format_ == OutputFormat::machine ? machine_.str() : text_.str(); }

 private:
  void emit(const Json& j) {
    if (format_ == OutputFormat::machine) machine_ << j.dump() << '\n';
  }

  OutputFormat format_;
  std::ostringstream machine_;
  std::ostringstream text_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string cover_text(const QuasiMeasure& qm, const CoverSolution& c, bool indices) {
  std::string out;
  for (std::size_t k = 0; k < c.chosen.size(); ++k) {
    if (k) out += indices ? "," : " + ";
    out += indices ? std::to_string(c.chosen[k]) : qm.ground().format(qm.coat()[c.chosen[k]]);
  }
  return out;
}

/// `--set`: a whitespace- or comma-separated list of element labels, or
/// failing that a set expression over the instance's named sets.
inline SubsetMask resolve_target(const std::string& text, const InstanceSpec& spec) {
  std::vector<std::string> labels;
  std::string cur;
  for (char ch : text) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) labels.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) labels.push_back(std::move(cur));
  bool all_labels = true;
  for (const auto& l : labels) all_labels = all_labels && spec.ground.index_of(l).has_value();
  if (all_labels) return spec.ground.subset(labels);
  std::map<std::string, SubsetMask> sets;
  for (const auto& s : spec.sets) sets.emplace(s.name, s.mask);
  return parse_set_expression(text, spec.ground, sets);
}

inline int run_check(const RunConfig& cfg, const QuasiMeasure& qm, ReportWriter& w) {
  AxiomOptions opt{cfg.variant, cfg.cover_mode, cfg.max_cover, kDefaultWitnessLimit};
  const auto report = check_axioms(qm, opt);
  w.report(report, &qm.ground());
  const int code = report.passed() ? 0 : 1;
  w.summary(cfg.command, code == 0, code);
  return code;
}

inline int run_outer(const RunConfig& cfg, const InstanceSpec& spec, const QuasiMeasure& qm, ReportWriter& w) {
  const auto target = resolve_target(cfg.set_expr, spec);
  const auto res = outer(qm, target);
  Json j;
  j["record"] = "outer";
  j["set"] = qm.ground().format(target);
  j["value"] = res.value.str();
  j["cover"] = cover_text(qm, res.cover, false);
  j["cover_indices"] = cover_text(qm, res.cover, true);
  w.record(j, "outer(" + qm.ground().format(target) + ") = " + res.value.str() + "\ncover: " +
                  (res.cover.chosen.empty() ? std::string("(empty)") : cover_text(qm, res.cover, false)));
  w.summary(cfg.command, true, 0);
  return 0;
}

inline int run_extend(const RunConfig& cfg, const QuasiMeasure& qm, ReportWriter& w) {
  OuterMeasureCache cache;
  const auto table = extend(qm, cache);
  const auto& g = qm.ground();
  for (std::size_t i = 0; i < table.algebra.size(); ++i) {
    const auto m = table.algebra.members()[i];
    Json j;
    j["record"] = "extend";
    j["set"] = g.format(m);
    j["value"] = table.values[i].str();
    j["cover"] = cover_text(qm, table.provenance[i], false);
    w.record(j, "  " + g.format(m) + " -> " + table.values[i].str() + "   via " + cover_text(qm, table.provenance[i], false));
  }
  const auto report = verify_premeasure(table);
  w.report(report, &g);
  bool ok = report.passed();

  if (g.width() <= cfg.max_n) {
    MeasurabilityOptions mopt;
    mopt.max_exhaustive_n = cfg.max_n;
    for (auto m : table.algebra.members()) {
      const auto res = is_caratheodory_measurable(qm, m, cache, mopt);
      ok = ok && res.measurable();
      Json j;
      j["record"] = "measurability";
      j["set"] = g.format(m);
      j["verdict"] = to_string(res.verdict);
      j["counterexample"] = res.counterexample ? g.format(res.counterexample->a) : "";
      j["whole"] = res.counterexample ? to_string(res.counterexample->whole) : "";
      j["inside"] = res.counterexample ? to_string(res.counterexample->inside) : "";
      j["outside"] = res.counterexample ? to_string(res.counterexample->outside) : "";
      std::string line = "  " + g.format(m) + ": " + to_string(res.verdict);
      if (res.counterexample) {
        const auto& cx = *res.counterexample;
        line += "  (A=" + g.format(cx.a) + ": " + to_string(cx.whole) + " != " + to_string(cx.inside) + " + " +
                to_string(cx.outside) + ")";
      }
      w.record(j, line);
    }
  }
  const int code = ok ? 0 : 1;
  w.summary(cfg.command, ok, code);
  return code;
}

inline int run_example(const RunConfig& cfg, ReportWriter& w) {
  struct Shape {
    const char* name;
    IntervalSet set;
  };
  const Real ln2 = std::log(Real(2));
  const Shape shapes[] = {
      {"[0, ln 2]", IntervalSet::closed(0, ln2)},
      {"empty", IntervalSet::empty()},
      {"R+", IntervalSet::half_line()},
      {"[0,1) U (2,3]", IntervalSet::closed_open(0, 1) | IntervalSet::open_closed(2, 3)},
  };
  for (const auto& s : shapes) {
    const Real v = exp_eval(s.set);
    Json j;
    j["record"] = "value";
    j["name"] = s.name;
    j["shape"] = s.set.str();
    j["value"] = format_real(v);
    w.record(j, std::string("p(") + s.name + ") = " + format_real(v));
  }
  const auto report = verify_example_axioms(cfg.samples, cfg.seed, cfg.tol);
  w.report(report, nullptr);
  const int code = report.passed() ? 0 : 1;
  w.summary(cfg.command, code == 0, code);
  return code;
}

inline int run_search(const RunConfig& cfg, ReportWriter& w) {
  SearchOptions opt;
  opt.filter = cfg.variant;
  opt.max_n = cfg.search_max_n;
  opt.max_coat = cfg.search_max_coat;
  const auto s = search_theorem_instances(cfg.seeds_begin, cfg.seeds_end, opt);
  std::string seeds;
  for (std::size_t i = 0; i < s.violation_seeds.size(); ++i) {
    seeds += (i ? "," : "") + std::to_string(s.violation_seeds[i]);
  }
  Json j;
  j["record"] = "search";
  j["seeds"] = std::to_string(cfg.seeds_begin) + ".." + std::to_string(cfg.seeds_end);
  j["filter"] = to_string(cfg.variant);
  j["total"] = s.total;
  j["passing"] = s.passing;
  j["passing_adversarial"] = s.passing_adversarial;
  j["passing_verified"] = s.passing_verified;
  j["failing"] = s.failing;
  j["failing_with_additivity_failure"] = s.failing_with_additivity_failure;
  j["violations"] = s.violations();
  j["violation_seeds"] = seeds;
  std::ostringstream text;
  text << "seeds " << cfg.seeds_begin << ".." << cfg.seeds_end << " (" << to_string(cfg.variant) << ")\n"
       << "  instances: " << s.total << "\n"
       << "  axioms pass: " << s.passing << " (" << s.passing_adversarial << " adversarial), pre-measure verified: "
       << s.passing_verified << "\n"
       << "  axioms fail: " << s.failing << " (" << s.failing_with_additivity_failure
       << " with an additivity failure)\n"
       << (cfg.variant == Variant::literal ? "  additivity failures among passing: " : "  theorem violations: ")
       << s.violations() << (seeds.empty() ? "" : " at seeds " + seeds);
  w.record(j, text.str());
  // Violations under the literal variant are findings, not failures.
  const bool ok = cfg.variant == Variant::literal || s.violations() == 0;
  const int code = ok ? 0 : 1;
  w.summary(cfg.command, ok, code);
  return code;
}

}  // namespace detail

/// Executes `cfg`. The report goes to cfg.out_path when set, else to `out`;
/// input errors are described on `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  detail::ReportWriter writer(cfg.format);
  int code = 2;
  try {
    switch (cfg.command) {
      case Command::example: code = detail::run_example(cfg, writer); break;
      case Command::search: code = detail::run_search(cfg, writer); break;
      default: {
        if (cfg.input_path.empty()) throw std::invalid_argument("an instance file is required");
        const auto spec = parse_instance(detail::read_file(cfg.input_path));
        const auto qm = spec.materialize();
        if (cfg.command == Command::check) code = detail::run_check(cfg, qm, writer);
        if (cfg.command == Command::outer) code = detail::run_outer(cfg, spec, qm, writer);
        if (cfg.command == Command::extend) code = detail::run_extend(cfg, qm, writer);
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  if (cfg.out_path.empty()) {
    out << writer.str();
  } else {
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << cfg.out_path << '\n';
      return 2;
    }
    f << writer.str();
  }
  return code;
}

}  // namespace quasi
