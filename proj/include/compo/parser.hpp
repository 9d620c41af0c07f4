#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "compo/derivation.hpp"
#include "compo/grammar.hpp"

namespace compo {

/// Default bound on the number of derivation trees one utterance may have.
inline constexpr std::size_t kDefaultAmbiguityCap = 10'000;

struct ParseOptions {
  /// Keep only trees whose category equals this one.
  std::optional<Name> category;
  /// More parses than this raise ResourceLimitError.
  std::size_t max_trees = kDefaultAmbiguityCap;
};

/// Morphosyntactic analysis: every CFG-well-formed tree whose generated
/// utterance equals `e`, of any result category, in canonical order.
/// An unparseable utterance yields an empty set.
std::vector<SynTree> morsynan(const CompositionalGrammar& g, const Utterance& e,
                              const ParseOptions& options = {});

/// Morphosyntactic generation: the rule templates filled in bottom-up.
/// Throws PreconditionError when `t` is not CFG-well-formed.
Utterance morsyngen(const CompositionalGrammar& g, const SynTree& t);

}  // namespace compo
