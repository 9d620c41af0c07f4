#pragma once

#include <functional>
#include <string>
#include <utility>

#include "compo/grammar.hpp"

namespace compo::detail {

/// Maps an entity ("basic", "rule", "meaning", ...) and its name to a
/// (line, column) position, or (0, 0) if unknown.
struct Locator {
  std::string file;
  std::function<std::pair<std::size_t, std::size_t>(const std::string& kind,
                                                    const std::string& name)>
      position;

  [[noreturn]] void fail(const std::string& kind, const std::string& name,
                         const std::string& message) const;
};

void check_semantics(const SemanticComponent& semantics, const Locator& where);
void check_grammar(const CompositionalGrammar& grammar, const Locator& where);

}  // namespace compo::detail
