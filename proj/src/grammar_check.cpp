#include "grammar_check.hpp"

#include <map>
#include <vector>

namespace compo::detail {

void Locator::fail(const std::string& kind, const std::string& name,
                   const std::string& message) const {
  std::size_t line = 0, column = 0;
  if (position) std::tie(line, column) = position(kind, name);
  throw InputError(message, file, line, column);
}

void check_semantics(const SemanticComponent& sem, const Locator& where) {
  for (const auto& [name, m] : sem.meanings()) {
    if (!sem.has_category(m.category))
      where.fail("meaning", name,
                 "basic meaning '" + name + "' has undeclared semantic category '" +
                     m.category + "'");
  }
  for (const auto& [name, r] : sem.rules()) {
    if (r.type.args.empty())
      where.fail("mrule", name, "semantic rule '" + name + "' must have arity >= 1");
    for (const auto& c : r.type.args)
      if (!sem.has_category(c))
        where.fail("mrule", name,
                   "semantic rule '" + name + "' has undeclared semantic category '" + c + "'");
    if (!sem.has_category(r.type.result))
      where.fail("mrule", name,
                 "semantic rule '" + name + "' has undeclared semantic category '" +
                     r.type.result + "'");
  }
}

namespace {

// Unary terminal-free rules: pattern is exactly `$1`.
bool is_chain_rule(const SyntacticRule& r) {
  return r.pattern.size() == 1 && std::holds_alternative<Placeholder>(r.pattern[0]);
}

void check_chain_cycles(const CompositionalGrammar& g, const Locator& where) {
  // Edge result -> argument for every chain rule; any cycle lets a span be
  // rederived without bound.
  std::map<Name, std::vector<const SyntacticRule*>> edges;
  for (const auto& [_, r] : g.rules())
    if (is_chain_rule(r)) edges[r.type.result].push_back(&r);

  enum class Mark { White, Grey, Black };
  std::map<Name, Mark> mark;
  std::vector<const SyntacticRule*> path;

  std::function<void(const Name&)> visit = [&](const Name& cat) {
    mark[cat] = Mark::Grey;
    for (const auto* r : edges[cat]) {
      const auto& next = r->type.args[0];
      path.push_back(r);
      if (mark[next] == Mark::Grey) {
        std::string cycle;
        auto first = path.begin();
        while ((*first)->type.result != next) ++first;
        for (auto it = first; it != path.end(); ++it) {
          if (!cycle.empty()) cycle += ", ";
          cycle += (*it)->name;
        }
        where.fail("rule", r->name, "infinite-ambiguity cycle of unary terminal-free rules: " + cycle);
      }
      if (mark[next] == Mark::White) visit(next);
      path.pop_back();
    }
    mark[cat] = Mark::Black;
  };
  for (const auto& c : g.categories())
    if (mark[c] == Mark::White) visit(c);
}

}  // namespace

void check_grammar(const CompositionalGrammar& g, const Locator& where) {
  const auto& sem = g.semantics();

  for (const auto& [name, b] : g.basics()) {
    if (!g.has_category(b.category))
      where.fail("basic", name,
                 "basic expression '" + name + "' has undeclared category '" + b.category + "'");
    if (b.surface.empty())
      where.fail("basic", name, "basic expression '" + name + "' has an empty surface");
    if (b.meanings.empty())
      where.fail("basic", name, "basic expression '" + name + "' has no meanings");
    for (const auto& m : b.meanings)
      if (!sem.find_meaning(m))
        where.fail("basic", name,
                   "basic expression '" + name + "' refers to undeclared basic meaning '" + m +
                       "'");
  }

  for (const auto& [name, r] : g.rules()) {
    const auto arity = r.arity();
    if (arity == 0)
      where.fail("rule", name, "rule '" + name + "' must have at least one argument");
    for (const auto& c : r.type.args)
      if (!g.has_category(c))
        where.fail("rule", name, "rule '" + name + "' has undeclared category '" + c + "'");
    if (!g.has_category(r.type.result))
      where.fail("rule", name,
                 "rule '" + name + "' has undeclared category '" + r.type.result + "'");

    std::vector<int> seen(arity + 1, 0);
    for (const auto& item : r.pattern) {
      if (const auto* p = std::get_if<Placeholder>(&item)) {
        if (p->index < 1 || p->index > arity)
          where.fail("rule", name,
                     "rule '" + name + "' uses placeholder $" + std::to_string(p->index) +
                         " outside 1.." + std::to_string(arity));
        if (++seen[p->index] > 1)
          where.fail("rule", name,
                     "rule '" + name + "' has duplicate placeholder $" +
                         std::to_string(p->index));
      } else if (std::get<Token>(item).empty()) {
        where.fail("rule", name, "rule '" + name + "' has an empty terminal");
      }
    }
    for (std::size_t i = 1; i <= arity; ++i)
      if (seen[i] == 0)
        where.fail("rule", name,
                   "rule '" + name + "' is missing placeholder $" + std::to_string(i));

    if (r.meanings.empty())
      where.fail("rule", name, "rule '" + name + "' has no semantic rules");
    for (const auto& m : r.meanings) {
      const auto* mr = sem.find_rule(m);
      if (!mr)
        where.fail("rule", name,
                   "rule '" + name + "' refers to undeclared semantic rule '" + m + "'");
      if (mr->type.arity() != arity)
        where.fail("rule", name,
                   "arity mismatch: rule '" + name + "' has arity " + std::to_string(arity) +
                       " but semantic rule '" + m + "' has arity " +
                       std::to_string(mr->type.arity()));
    }
  }

  check_chain_cycles(g, where);
}

}  // namespace compo::detail
