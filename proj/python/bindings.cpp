#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "compo/cli.hpp"
#include "compo/completeness.hpp"
#include "compo/pair_file.hpp"
#include "compo/parser.hpp"
#include "compo/pipeline.hpp"

namespace py = pybind11;
using namespace compo;

namespace {

const CompositionalGrammar& pick(const GrammarFile& file, const std::optional<std::string>& name,
                                 const std::string& path) {
  if (name) {
    if (const auto* g = file.find_grammar(*name)) return *g;
    throw InputError("no grammar named '" + *name + "'", path);
  }
  if (file.grammars.size() != 1)
    throw InputError("file declares " + std::to_string(file.grammars.size()) +
                         " grammars; pass grammar=",
                     path);
  return file.grammars.front();
}

std::vector<std::string> utterances(const std::vector<Utterance>& us) {
  std::vector<std::string> out;
  for (const auto& u : us) out.push_back(format_utterance(u));
  return out;
}

py::dict report_dict(const CompletenessReport& r) {
  py::list violations;
  for (const auto& v : r.violations) {
    py::dict d;
    d["kind"] = to_string(v.kind);
    d["element"] = v.element;
    d["interpretation"] = v.interpretation;
    d["tuple"] = v.tuple;
    d["category"] = v.category;
    d["tree"] = v.tree ? py::object(py::str(to_text(*v.tree))) : py::object(py::none());
    d["message"] = v.message;
    violations.append(d);
  }
  py::dict out;
  out["condition"] = to_string(r.condition);
  out["passed"] = r.passed();
  out["violations"] = violations;
  out["witness"] = r.witness ? py::object(py::str(to_text(*r.witness))) : py::object(py::none());
  return out;
}

}  // namespace

PYBIND11_MODULE(_compo, m) {
  m.doc() = "Compositional translation over CFG-based compositional grammars";
  m.attr("__version__") = kToolVersion;

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", error.ptr());
  py::register_exception<UnknownNameError>(m, "UnknownNameError", error.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", error.ptr());

  m.def(
      "parse",
      [](const std::string& path, const std::string& utterance,
         const std::optional<std::string>& category, const std::optional<std::string>& grammar,
         std::size_t cap) {
        const auto file = load_grammar_file(read_file(path), path);
        ParseOptions opts;
        opts.category = category;
        opts.max_trees = cap;
        std::vector<std::string> out;
        for (const auto& t : morsynan(pick(file, grammar, path), tokenize(utterance), opts))
          out.push_back(to_text(t));
        return out;
      },
      py::arg("path"), py::arg("utterance"), py::arg("category") = py::none(),
      py::arg("grammar") = py::none(), py::arg("cap") = kDefaultAmbiguityCap,
      "Every derivation tree of an utterance, as tree text.");

  m.def(
      "generate",
      [](const std::string& path, const std::string& tree,
         const std::optional<std::string>& grammar) {
        const auto file = load_grammar_file(read_file(path), path);
        return format_utterance(morsyngen(pick(file, grammar, path), parse_syn_tree(tree)));
      },
      py::arg("path"), py::arg("tree"), py::arg("grammar") = py::none(),
      "The utterance of a well-formed derivation tree.");

  m.def(
      "translate",
      [](const std::string& pair_path, const std::string& utterance) {
        return utterances(translate(load_pair_file(pair_path).pair, tokenize(utterance))
                              .target_utterances);
      },
      py::arg("pair_path"), py::arg("utterance"), "Target utterances of a source utterance.");

  m.def(
      "translate_tree",
      [](const std::string& pair_path, const std::string& tree) {
        return utterances(translate_sem(load_pair_file(pair_path).pair, parse_sem_tree(tree)));
      },
      py::arg("pair_path"), py::arg("tree"), "Target utterances of a semantic tree.");

  m.def(
      "check",
      [](const std::string& pair_path, std::optional<std::string> condition, std::size_t depth) {
        const auto pf = load_pair_file(pair_path);
        if (!condition) condition = pf.correspondence ? "nn" : "n1";
        auto need = [&]() -> const CategoryCorrespondence& {
          if (!pf.correspondence)
            throw InputError("condition '" + *condition + "' needs 'correspond' lines", pair_path);
          return *pf.correspondence;
        };
        if (*condition == "homomorphism") return report_dict(check_homomorphism(pf.pair));
        if (*condition == "n1") return report_dict(check_theorem1(pf.pair));
        if (*condition == "nn") return report_dict(check_theorem2(pf.pair, need()));
        if (*condition == "labels") return report_dict(validate_labels(pf.pair, need(), depth));
        throw InputError("unknown condition '" + *condition + "'");
      },
      py::arg("pair_path"), py::arg("condition") = py::none(), py::arg("depth") = 6,
      "Runs one completeness check and returns its report.");

  m.def(
      "witness",
      [](const std::string& pair_path, std::size_t depth) -> std::optional<std::string> {
        if (auto w = find_incompleteness_witness(load_pair_file(pair_path).pair, depth))
          return to_text(*w);
        return std::nullopt;
      },
      py::arg("pair_path"), py::arg("depth"),
      "The first semantic tree without a translation, or None.");

  m.def(
      "enumerate",
      [](const std::string& path, const std::string& category, std::size_t depth,
         const std::optional<std::string>& grammar) {
        const auto file = load_grammar_file(read_file(path), path);
        std::vector<std::string> out;
        for (const auto& t : enumerate_syn_trees(pick(file, grammar, path), category, depth))
          out.push_back(to_text(t));
        return out;
      },
      py::arg("path"), py::arg("category"), py::arg("depth"), py::arg("grammar") = py::none(),
      "Well-formed derivation trees of a category up to a depth.");

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a command line; returns (exit code, stdout, stderr).");
}
