#pragma once

#include <string>
#include <vector>

#include "scsp/algebra.hpp"

namespace scsp {

// A named, finite constraint language over one scheme.
class Language {
 public:
  SchemePtr scheme;
  std::vector<std::string> names;
  std::vector<Relation> rels;

  Language() = default;
  explicit Language(SchemePtr s) : scheme(std::move(s)) {}

  int size() const { return static_cast<int>(names.size()); }

  int index_or(const std::string& name, int fallback) const {
    for (int i = 0; i < size(); ++i)
      if (names[i] == name) return i;
    return fallback;
  }

  bool contains(const std::string& name) const {
    return index_or(name, -1) >= 0;
  }

  int add(const std::string& name, Relation rel) {
    int idx = index_or(name, -1);
    if (idx >= 0) return idx;
    names.push_back(name);
    rels.push_back(std::move(rel));
    return size() - 1;
  }

  // Index of a binary union relation with exactly this mask, or -1.
  int index_of_mask(Mask mask) const {
    for (int i = 0; i < size(); ++i)
      if (const auto* u = std::get_if<UnionRel>(&rels[i]))
        if (u->mask == mask) return i;
    return -1;
  }
};

// All 2^m - 1 nonempty unions of basics, named canonically ("DR+PO+PP").
Language all_unions(SchemePtr scheme);

// The basic relations only, named as in the scheme.
Language basics_language(SchemePtr scheme);

// The tractable RCC-5 fragment: all nonempty unions minus the four
// excluded relations around {PP, PPi}.
Language rcc5_gamma_prime(SchemePtr rcc5);

}  // namespace scsp
