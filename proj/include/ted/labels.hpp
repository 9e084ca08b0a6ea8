#pragma once

#include <cctype>
#include <cstdint>
#include <deque>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include "ted/errors.hpp"

namespace ted {

/// Interned label token. Equal strings intern to the same token, so equality
/// is an id comparison. Ordering is lexicographic on the underlying string.
class Label {
 public:
  Label() = default;

  static Label intern(std::string_view text) {
    if (text.empty()) throw StructuralError("empty label");
    for (char c : text)
      if (std::isspace(static_cast<unsigned char>(c)))
        throw StructuralError("label contains whitespace: '" + std::string(text) + "'");
    Registry& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    auto [it, inserted] = r.ids.try_emplace(std::string(text), static_cast<uint32_t>(r.names.size()));
    if (inserted) r.names.push_back(it->first);
    return Label(it->second);
  }

  bool valid() const { return id_ != kInvalid; }
  uint32_t id() const { return id_; }

  const std::string& str() const { return registry().names[id_]; }

  bool operator==(const Label&) const = default;

 private:
  static constexpr uint32_t kInvalid = 0xffffffffu;

  explicit Label(uint32_t id) : id_(id) {}

  struct Registry {
    std::mutex mu;
    std::unordered_map<std::string, uint32_t> ids;
    std::deque<std::string> names;  // stable storage, index = token id
  };

  static Registry& registry() {
    static Registry r;
    return r;
  }

  uint32_t id_ = kInvalid;
};

using VertexLabel = Label;
using EdgeLabel = Label;

inline int label_cmp(Label a, Label b) {
  if (a.id() == b.id()) return 0;
  return a.str() < b.str() ? -1 : 1;
}

inline bool label_less(Label a, Label b) { return label_cmp(a, b) < 0; }

/// Label for an unlabeled edge: the two endpoint labels joined with ".",
/// smaller label first so the result is orientation-independent.
inline EdgeLabel derive_edge_label(VertexLabel lu, VertexLabel lv) {
  const std::string& a = lu.str();
  const std::string& b = lv.str();
  if (b < a) return Label::intern(b + "." + a);
  return Label::intern(a + "." + b);
}

}  // namespace ted
