#pragma once

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace fsc {

// Opaque handle into the process-wide symbol table.
using SymbolId = std::int32_t;

// Reserved symbols. EPSILON is the empty string on one tape of a label,
// IDENTITY stands for "the same symbol outside sigma on both tapes",
// UNKNOWN for "a symbol outside sigma, chosen per tape", BOUNDARY is the
// string-edge marker usable in rule contexts.
inline constexpr SymbolId kEpsilon  = 0;
inline constexpr SymbolId kUnknown  = 1;
inline constexpr SymbolId kIdentity = 2;
inline constexpr SymbolId kBoundary = 3;

inline constexpr const char* kEpsilonName  = "@0@";
inline constexpr const char* kUnknownName  = "@_UNKNOWN_@";
inline constexpr const char* kIdentityName = "@_IDENTITY_@";
inline constexpr const char* kBoundaryName = "@#@";

// Process-wide bidirectional map between symbol names and ids. Two ids are
// equal iff their spellings are equal. Insertions are guarded by a mutex so
// independent compilations may run concurrently.
class SymbolTable {
 public:
  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }

  SymbolId intern(const std::string& name) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = by_name_.find(name);
    if (it != by_name_.end()) return it->second;
    SymbolId id = static_cast<SymbolId>(names_.size());
    names_.push_back(name);
    by_name_.emplace(name, id);
    return id;
  }

  const std::string& name(SymbolId id) const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (id < 0 || id >= static_cast<SymbolId>(names_.size()))
      throw std::out_of_range("unknown symbol id");
    return names_[static_cast<std::size_t>(id)];
  }

  bool lookup(const std::string& name, SymbolId& out) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return false;
    out = it->second;
    return true;
  }

 private:
  SymbolTable() {
    names_ = {kEpsilonName, kUnknownName, kIdentityName, kBoundaryName};
    for (SymbolId i = 0; i < static_cast<SymbolId>(names_.size()); ++i)
      by_name_.emplace(names_[static_cast<std::size_t>(i)], i);
  }

  mutable std::mutex mutex_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, SymbolId> by_name_;
};

inline SymbolId intern_symbol(const std::string& name) {
  return SymbolTable::instance().intern(name);
}

inline const std::string& symbol_name(SymbolId id) {
  return SymbolTable::instance().name(id);
}

// An upper:lower symbol pair. Either tape may be EPSILON; a pure epsilon
// pair never survives normalization on an arc.
struct Label {
  SymbolId upper = kEpsilon;
  SymbolId lower = kEpsilon;

  friend bool operator==(const Label& a, const Label& b) {
    return a.upper == b.upper && a.lower == b.lower;
  }
  friend auto operator<=>(const Label& a, const Label& b) = default;
};

inline Label identity_label(SymbolId s) { return Label{s, s}; }

struct LabelHash {
  std::size_t operator()(const Label& l) const {
    return std::hash<std::uint64_t>()(
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(l.upper)) << 32) |
        static_cast<std::uint32_t>(l.lower));
  }
};

}  // namespace fsc
