#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "sets.hpp"

namespace quasi {

enum class Status { pass, fail, skipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

/// A finite certificate of one violation: the named sets involved, the
/// relation that failed, and both sides of it where the relation has sides.
template <class Set, class Value>
struct BasicWitness {
  std::vector<std::pair<std::string, Set>> sets;
  std::string relation;
  std::optional<Value> lhs;
  std::optional<Value> rhs;

  const Set& set(const std::string& role) const {
    for (const auto& [name, s] : sets) {
      if (name == role) return s;
    }
    throw std::out_of_range("witness has no set named " + role);
  }
};

template <class Set, class Value>
struct BasicItemResult {
  BasicItemResult() = default;
  BasicItemResult(std::string id_, std::string title_, std::string note_ = {})
      : id(std::move(id_)), title(std::move(title_)), note(std::move(note_)) {}

  std::string id;     // "i", "ii", ... or a letter for pre-measure checks
  std::string title;
  Status status = Status::pass;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::vector<BasicWitness<Set, Value>> witnesses;  // first `witness_limit` violations
  std::string note;

  void add_violation(BasicWitness<Set, Value> w, std::size_t witness_limit) {
    status = Status::fail;
    ++violations;
    if (witnesses.size() < witness_limit) witnesses.push_back(std::move(w));
  }
};

template <class Set, class Value>
struct BasicReport {
  std::string name;
  std::vector<BasicItemResult<Set, Value>> items;

  /// True when no item failed; skipped items do not count against it.
  bool passed() const {
    for (const auto& it : items) {
      if (it.status == Status::fail) return false;
    }
    return true;
  }

  const BasicItemResult<Set, Value>& item(const std::string& id) const {
    for (const auto& it : items) {
      if (it.id == id) return it;
    }
    throw std::out_of_range("report " + name + " has no item " + id);
  }
};

using Witness = BasicWitness<SubsetMask, Rational>;
using ItemResult = BasicItemResult<SubsetMask, Rational>;
using AxiomReport = BasicReport<SubsetMask, Rational>;

inline constexpr std::size_t kDefaultWitnessLimit = 16;

}  // namespace quasi
