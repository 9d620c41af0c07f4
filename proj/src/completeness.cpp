#include "compo/completeness.hpp"

#include <algorithm>

#include "compo/pipeline.hpp"

namespace compo {

const std::set<Name>& CategoryCorrespondence::image(const Name& c) const {
  auto it = images.find(c);
  if (it == images.end())
    throw InputError("category correspondence has no entry for semantic category '" + c + "'");
  return it->second;
}

Label CategoryCorrespondence::label(const Name& c) const {
  auto it = labels.find(c);
  if (it == labels.end())
    throw InputError("semantic category '" + c + "' is not labelled conjunctive or disjunctive");
  return it->second;
}

void validate_correspondence(const GrammarPair& pair, const CategoryCorrespondence& corr) {
  const auto& target = pair.target();
  for (const auto& c : pair.semantics().categories()) {
    const auto& img = corr.image(c);
    (void)corr.label(c);
    if (img.empty())
      throw InputError("empty correspondence set for semantic category '" + c + "'");
    for (const auto& s : img)
      if (!target.has_category(s))
        throw InputError("correspondence set of '" + c + "' names '" + s +
                         "', which target grammar '" + target.name() + "' does not declare");
  }
  for (const auto& [c, _] : corr.images)
    if (!pair.semantics().has_category(c))
      throw InputError("correspondence for undeclared semantic category '" + c + "'");
}

namespace {

std::string join(const std::vector<Name>& xs, const char* sep = ",") {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += sep;
    out += x;
  }
  return out;
}

std::string join(const std::set<Name>& xs, const char* sep = ",") {
  return join(std::vector<Name>(xs.begin(), xs.end()), sep);
}

// Basic meanings and semantic rules that the source grammar can put into a
// semantic derivation tree.
std::set<Name> source_meanings(const CompositionalGrammar& g) {
  std::set<Name> out;
  for (const auto& [_, b] : g.basics()) out.insert(b.meanings.begin(), b.meanings.end());
  return out;
}

std::set<Name> source_semantic_rules(const CompositionalGrammar& g) {
  std::set<Name> out;
  for (const auto& [_, r] : g.rules()) out.insert(r.meanings.begin(), r.meanings.end());
  return out;
}

void append(std::vector<Violation>& to, const std::vector<Violation>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

}  // namespace

// ---------------------------------------------------------------------------

CompletenessReport check_homomorphism(const GrammarPair& pair) {
  CompletenessReport report{Condition::Homomorphism, {}, {}, {}};
  const auto& target = pair.target();

  std::set<Name> target_meanings, target_rules;
  for (const auto& [_, b] : target.basics())
    target_meanings.insert(b.meanings.begin(), b.meanings.end());
  for (const auto& [_, r] : target.rules()) target_rules.insert(r.meanings.begin(), r.meanings.end());

  for (const auto& [name, b] : pair.source().basics())
    for (const auto& m : b.meanings)
      if (!target_meanings.count(m))
        report.violations.push_back(
            {ViolationKind::UncoveredBasicMeaning, name, m, {}, {}, {},
             "basic meaning " + m + " of " + name + " has no basic expression in '" +
                 target.name() + "'"});
  for (const auto& [name, r] : pair.source().rules())
    for (const auto& m : r.meanings)
      if (!target_rules.count(m))
        report.violations.push_back(
            {ViolationKind::UncoveredSemanticRule, name, m, {}, {}, {},
             "semantic rule " + m + " of " + name + " has no syntactic rule in '" +
                 target.name() + "'"});
  return report;
}

N1Inference infer_n1_map(const CompositionalGrammar& target) {
  const auto& sem = target.semantics();
  std::map<Name, std::pair<Name, Name>> pinned;  // sem category -> (image, pinned by)
  std::set<std::pair<Name, Name>> reported;
  N1Inference out;

  auto pin = [&](const Name& sem_cat, const Name& syn_cat, const Name& by) {
    auto [it, fresh] = pinned.emplace(sem_cat, std::make_pair(syn_cat, by));
    if (fresh || it->second.first == syn_cat) return;
    if (!reported.insert({sem_cat, syn_cat}).second) return;
    out.conflicts.push_back({ViolationKind::CategoryConflict, sem_cat, {}, {}, syn_cat, {},
                             sem_cat + " constrained to " + it->second.first + " by " +
                                 it->second.second + " and to " + syn_cat + " by " + by});
  };

  for (const auto& [name, r] : target.rules())
    for (const auto& m : r.meanings) {
      const auto& type = sem.rule(m).type;
      for (std::size_t i = 0; i < type.args.size(); ++i) pin(type.args[i], r.type.args[i], name);
      pin(type.result, r.type.result, name);
    }
  for (const auto& [name, b] : target.basics())
    for (const auto& m : b.meanings) pin(sem.meaning(m).category, b.category, name);

  CategoryCorrespondence f;
  for (const auto& c : sem.categories()) {
    auto it = pinned.find(c);
    if (it != pinned.end()) {
      f.images[c] = {it->second.first};
    } else if (!target.categories().empty()) {
      f.images[c] = {*target.categories().begin()};
    } else {
      out.conflicts.push_back({ViolationKind::UnmappableCategory, c, {}, {}, {}, {},
                               c + " has no target category to map to"});
      continue;
    }
    f.labels[c] = Label::Conjunctive;
  }
  if (out.conflicts.empty()) out.map = std::move(f);
  return out;
}

CompletenessReport check_theorem1(const GrammarPair& pair) {
  CompletenessReport report{Condition::N1, {}, {}, {}};
  append(report.violations, check_homomorphism(pair).violations);
  auto n1 = infer_n1_map(pair.target());
  append(report.violations, n1.conflicts);
  report.correspondence = std::move(n1.map);
  return report;
}

CompletenessReport check_theorem2(const GrammarPair& pair, const CategoryCorrespondence& corr,
                                  std::size_t tuple_cap) {
  validate_correspondence(pair, corr);
  CompletenessReport report{Condition::NN, {}, {}, corr};
  const auto& sem = pair.semantics();
  const auto& target = pair.target();
  auto& out = report.violations;

  append(out, check_homomorphism(pair).violations);

  // N-N typing of the target grammar.
  for (const auto& [name, b] : target.basics())
    for (const auto& m : b.meanings) {
      const auto& c = sem.meaning(m).category;
      if (!corr.image(c).count(b.category))
        out.push_back({ViolationKind::BasicTyping, name, m, {}, b.category, {},
                       name + " : " + b.category + " interprets to " + m + " : " + c + ", but " +
                           b.category + " is not in the correspondence set {" +
                           join(corr.image(c)) + "}"});
    }
  for (const auto& [name, r] : target.rules())
    for (const auto& m : r.meanings) {
      const auto& type = sem.rule(m).type;
      bool ok = corr.image(type.result).count(r.type.result) != 0;
      for (std::size_t i = 0; i < type.args.size(); ++i)
        ok = ok && corr.image(type.args[i]).count(r.type.args[i]) != 0;
      if (!ok)
        out.push_back({ViolationKind::RuleTyping, name, m, {}, {}, {},
                       name + " : " + format_rule_type(r.type) + " interprets to " + m + " : " +
                           format_rule_type(type) +
                           ", which the correspondence sets do not admit"});
    }

  // Basic coverage.
  const auto used_meanings = source_meanings(pair.source());
  for (const auto& m : used_meanings) {
    const auto& c = sem.meaning(m).category;
    std::set<Name> have;
    for (const auto& [_, b] : target.basics())
      if (b.meanings.count(m) && corr.image(c).count(b.category)) have.insert(b.category);
    if (corr.label(c) == Label::Disjunctive) {
      if (have.empty())
        out.push_back({ViolationKind::BasicCoverage, m, {}, {}, {}, {},
                       "disjunctive " + c + ": no basic expression for " + m + " in any of {" +
                           join(corr.image(c)) + "}"});
    } else {
      for (const auto& want : corr.image(c))
        if (!have.count(want))
          out.push_back({ViolationKind::BasicCoverage, m, {}, {}, want, {},
                         "conjunctive " + c + ": no basic expression for " + m + " of category " +
                             want});
    }
  }

  // Rule coverage over every disjunctive tuple.
  for (const auto& mname : source_semantic_rules(pair.source())) {
    const auto& type = sem.rule(mname).type;
    std::vector<std::size_t> disj;
    for (std::size_t i = 0; i < type.args.size(); ++i)
      if (corr.label(type.args[i]) == Label::Disjunctive) disj.push_back(i);

    std::vector<std::vector<Name>> axes;
    std::size_t tuples = 1;
    for (auto i : disj) {
      const auto& img = corr.image(type.args[i]);
      axes.emplace_back(img.begin(), img.end());
      if (tuples > tuple_cap / img.size())
        throw ResourceLimitError("semantic rule " + mname + " has more than " +
                                 std::to_string(tuple_cap) + " disjunctive tuples");
      tuples *= img.size();
    }

    std::vector<const SyntacticRule*> candidates;
    for (const auto& [_, r] : target.rules())
      if (r.meanings.count(mname) && r.arity() == type.arity()) candidates.push_back(&r);

    std::vector<std::size_t> idx(axes.size(), 0);
    for (std::size_t n = 0; n < tuples; ++n) {
      std::vector<Name> tuple;
      for (std::size_t k = 0; k < axes.size(); ++k) tuple.push_back(axes[k][idx[k]]);

      std::set<Name> results;
      for (const auto* r : candidates) {
        bool ok = true;
        std::size_t k = 0;
        for (std::size_t i = 0; ok && i < type.args.size(); ++i) {
          if (k < disj.size() && disj[k] == i)
            ok = r->type.args[i] == tuple[k++];
          else
            ok = corr.image(type.args[i]).count(r->type.args[i]) != 0;
        }
        if (ok && corr.image(type.result).count(r->type.result)) results.insert(r->type.result);
      }

      const auto& want = corr.image(type.result);
      const auto shown = "⟨" + join(tuple) + "⟩";
      if (corr.label(type.result) == Label::Disjunctive) {
        if (results.empty())
          out.push_back({ViolationKind::RuleCoverage, mname, {}, tuple, {}, {},
                         "no syntactic rule for " + mname + " with D=" + shown +
                             " and result in {" + join(want) + "}"});
      } else {
        for (const auto& res : want)
          if (!results.count(res))
            out.push_back({ViolationKind::RuleCoverage, mname, {}, tuple, res, {},
                           "no syntactic rule for " + mname + " with D=" + shown +
                               " and result " + res});
      }

      for (std::size_t k = axes.size(); k > 0; --k) {
        if (++idx[k - 1] < axes[k - 1].size()) break;
        idx[k - 1] = 0;
      }
    }
  }
  return report;
}

CompletenessReport validate_labels(const GrammarPair& pair, const CategoryCorrespondence& corr,
                                   std::size_t max_depth) {
  validate_correspondence(pair, corr);
  CompletenessReport report{Condition::Labels, {}, {}, corr};
  for (const auto& c : pair.semantics().categories()) {
    if (corr.label(c) != Label::Conjunctive) continue;
    const auto& img = corr.image(c);
    if (img.size() < 2) continue;
    for (const auto& d : enumerate_sem_trees(pair.semantics(), c, max_depth)) {
      const auto got = realizable_categories(pair.target(), d);
      for (const auto& want : img)
        if (!std::binary_search(got.begin(), got.end(), want))
          report.violations.push_back({ViolationKind::LabelViolation, c, {}, {}, want, d,
                                       "conjunctive " + c + ": " + to_text(d) +
                                           " has no well-formed realization of category " +
                                           want});
    }
  }
  return report;
}

std::optional<SemTree> find_incompleteness_witness(const GrammarPair& pair,
                                                   std::size_t max_depth) {
  // Bucket every well-typed tree by exact depth so the scan is depth-first
  // by size and canonical within a depth.
  std::vector<std::vector<SemTree>> by_depth(max_depth + 1);
  for (const auto& c : pair.semantics().categories())
    for (auto& d : enumerate_sem_trees(pair.semantics(), c, max_depth))
      by_depth[d.depth()].push_back(std::move(d));
  for (auto& bucket : by_depth) {
    canonicalize(bucket);
    for (const auto& d : bucket) {
      if (!is_source_well_formed(pair.source(), d)) continue;
      if (realizable_categories(pair.target(), d).empty()) return d;
    }
  }
  return std::nullopt;
}

CompletenessReport witness_report(const GrammarPair& pair, std::size_t max_depth) {
  CompletenessReport report{Condition::WitnessSearch, {}, {}, {}};
  report.witness = find_incompleteness_witness(pair, max_depth);
  return report;
}

std::string to_string(Condition c) {
  switch (c) {
    case Condition::Homomorphism: return "homomorphism";
    case Condition::N1: return "n1";
    case Condition::NN: return "nn";
    case Condition::Labels: return "labels";
    case Condition::WitnessSearch: return "witness-search";
  }
  return "?";
}

std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::UncoveredBasicMeaning: return "uncovered-basic-meaning";
    case ViolationKind::UncoveredSemanticRule: return "uncovered-semantic-rule";
    case ViolationKind::CategoryConflict: return "category-conflict";
    case ViolationKind::UnmappableCategory: return "unmappable-category";
    case ViolationKind::BasicTyping: return "basic-typing";
    case ViolationKind::RuleTyping: return "rule-typing";
    case ViolationKind::BasicCoverage: return "basic-coverage";
    case ViolationKind::RuleCoverage: return "rule-coverage";
    case ViolationKind::LabelViolation: return "label-violation";
  }
  return "?";
}

std::string to_string(Label l) { return l == Label::Conjunctive ? "conjunctive" : "disjunctive"; }

}  // namespace compo
