#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "compo/completeness.hpp"
#include "compo/grammar.hpp"

namespace compo {

/// A loaded `.cgp` file:
///
///   semantics <path> [<semantics-name>]
///   source <path> [<grammar-name>]
///   target <path> [<grammar-name>]
///   correspond <SemCat> -> { <SynCat>... } <conjunctive|disjunctive>
///
/// Paths are relative to the pair file. The grammar name may be omitted when
/// the file declares exactly one grammar.
struct PairFile {
  GrammarPair pair;
  /// Present iff the file has `correspond` lines; then it covers every
  /// semantic category.
  std::optional<CategoryCorrespondence> correspondence;
};

/// Returns the contents of a path already joined with the pair file's directory.
using FileReader = std::function<std::string(const std::string& path)>;

PairFile load_pair_file(const std::string& path);
PairFile parse_pair_file(std::string_view text, const std::string& origin,
                         const FileReader& read);

}  // namespace compo
