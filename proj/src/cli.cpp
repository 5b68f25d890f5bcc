// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cohmin/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>
#include <variant>

#include "cohmin/algebra.hpp"
#include "cohmin/coherence.hpp"
#include "cohmin/frontend.hpp"
#include "cohmin/protocol.hpp"
#include "cohmin/sfst.hpp"

namespace cohmin {
namespace {

// Unreadable files and wrong model kinds.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool HasExtension(const std::string &path, std::string_view ext) {
  return path.size() >= ext.size() &&
         path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
}

// Prefixes parse errors with the file they came from.
template <typename F>
auto InFile(const std::string &path, F parse) {
  const std::string text = ReadFile(path);
  try {
    return parse(text);
  } catch (const ParseError &e) {
    throw InputError(path + ": " + e.what());
  }
}

using Model = std::variant<Transducer, Sfst>;

Model LoadModel(const std::string &path) {
  if (HasExtension(path, ".sfst"))
    return InFile(path, [](const std::string &s) { return Model(parse_sfst(s)); });
  if (HasExtension(path, ".prot"))
    return InFile(path,
                  [](const std::string &s) { return Model(load_protocol(s)); });
  return InFile(path,
                [](const std::string &s) { return Model(parse_transducer(s)); });
}

Transducer LoadTransducer(const std::string &path) {
  Model m = LoadModel(path);
  if (auto *t = std::get_if<Transducer>(&m)) return std::move(*t);
  throw InputError(path + ": expected a finite-state transducer");
}

Sfst LoadSfst(const std::string &path) {
  Model m = LoadModel(path);
  if (auto *t = std::get_if<Sfst>(&m)) return std::move(*t);
  throw InputError(path + ": expected a symbolic transducer (.sfst)");
}

Transducer LoadProtocol(const std::string &path) {
  return InFile(path, [](const std::string &s) { return load_protocol(s); });
}

std::string LogComments(const std::vector<Merge> &log) {
  std::istringstream lines(merge_log_to_string(log));
  std::string out;
  for (std::string line; std::getline(lines, line);) out += "# " + line + "\n";
  return out;
}

std::string ClassComments(const std::vector<std::vector<StateName>> &classes) {
  std::string out;
  for (const auto &c : classes) {
    if (c.size() < 2) continue;
    out += "# class";
    for (const StateName &s : c) out += " " + format_state(s);
    out += "\n";
  }
  return out;
}

std::set<Label> SplitLabels(const std::string &list) {
  std::set<Label> out;
  std::istringstream in(list);
  for (std::string l; std::getline(in, l, ',');)
    if (!l.empty()) out.insert(l);
  return out;
}

struct Options {
  std::string output;
  std::vector<std::string> inputs;
  std::string protocol;
  std::string trace;
  std::string policy = "coherent";
  std::string mode = "structural";
  std::string keep;
  std::string pair;
  int depth = 8;
  std::int64_t lo = -4;
  std::int64_t hi = 4;
  bool keep_unreachable = false;
};

SymbolicOptions Symbolic(const Options &o) {
  SymbolicOptions s;
  s.mode = o.mode == "semantic" ? EquivMode::kBoundedSemantic
                                : EquivMode::kStructural;
  s.domain = Domain{o.lo, o.hi};
  s.keep_unreachable = o.keep_unreachable;
  return s;
}

// Returns the exit code; writes the result text to `result`.
int Run(const std::string &command, const Options &o, std::string &result) {
  const auto &in = o.inputs;
  if (command == "validate") {
    const Model m = LoadModel(in[0]);
    std::visit(
        [&](const auto &t) {
          result = "ok " + std::to_string(t.num_states()) + " states " +
                   std::to_string(t.arcs().size()) + " transitions\n";
        },
        m);
    return kExitOk;
  }
  if (command == "traces") {
    for (const Trace &t : traces_upto(LoadTransducer(in[0]), o.depth).traces)
      result += trace_to_string(t) + "\n";
    return kExitOk;
  }
  if (command == "intersect" || command == "interact" ||
      command == "compose") {
    const Transducer a = LoadTransducer(in[0]);
    const Transducer b = LoadTransducer(in[1]);
    const ProductOptions options{o.keep_unreachable};
    if (command == "compose") {
      result = serialise(compose(a, b, options));
      return kExitOk;
    }
    ProductStats stats;
    const Transducer r = command == "intersect"
                             ? intersect(a, b, options, &stats)
                             : interact(a, b, options, &stats);
    result = "# pruned " + std::to_string(stats.pruned) + "\n" + serialise(r);
    return kExitOk;
  }
  if (command == "project") {
    const Transducer t = LoadTransducer(in[0]);
    result = serialise(
        project(t, restrict_signature(t.signature(), SplitLabels(o.keep))));
    return kExitOk;
  }
  if (command == "minimize") {
    const Model m = LoadModel(in[0]);
    if (o.policy == "coherent" && o.protocol.empty())
      throw InputError("minimize --policy coherent requires --protocol");
    if (const auto *t = std::get_if<Transducer>(&m)) {
      if (o.policy == "bisim") {
        result = serialise(bisim_minimize(*t, {o.keep_unreachable})) +
                 ClassComments(bisim_classes(*t));
      } else {
        const Minimized r = coherent_minimize(*t, LoadProtocol(o.protocol),
                                              {o.keep_unreachable});
        result = serialise(r.result) + LogComments(r.log);
      }
    } else {
      const Sfst &s = std::get<Sfst>(m);
      if (o.policy == "bisim") {
        result = serialise(sfst_bisim_minimize(s, Symbolic(o))) +
                 ClassComments(sfst_bisim_classes(s, Symbolic(o)));
      } else {
        const SfstMinimized r =
            sfst_coherent_minimize(s, LoadProtocol(o.protocol), Symbolic(o));
        result = serialise(r.result) + LogComments(r.log);
      }
    }
    return kExitOk;
  }
  if (command == "relation") {
    const Model m = LoadModel(in[0]);
    const Transducer p = LoadProtocol(o.protocol);
    const CoherenceRelation r =
        std::holds_alternative<Transducer>(m)
            ? coherent_simulation(std::get<Transducer>(m), p)
            : sfst_coherent_simulation(std::get<Sfst>(m), p, Symbolic(o));
    for (const auto &[x, y] : r.pairs())
      result += "sim " + format_state(x) + " " + format_state(y) + "\n";
    for (const auto &[x, y] : r.equivalence_pairs())
      result += "equiv " + format_state(x) + " " + format_state(y) + "\n";
    return kExitOk;
  }
  if (command == "equiv") {
    const bool equal =
        coherent_equiv_bounded(LoadTransducer(in[0]), LoadTransducer(in[1]),
                               LoadProtocol(o.protocol), o.depth);
    result = equal ? "equivalent\n" : "not equivalent\n";
    return equal ? kExitOk : kExitRejected;
  }
  if (command == "quotient") {
    const std::size_t comma = o.pair.find(',');
    if (comma == std::string::npos)
      throw CLI::ValidationError("--pair", "expected s1,s2");
    const std::string s1 = o.pair.substr(0, comma), s2 = o.pair.substr(comma + 1);
    const Model m = LoadModel(in[0]);
    result = std::holds_alternative<Transducer>(m)
                 ? serialise(quotient(std::get<Transducer>(m), s1, s2))
                 : serialise(sfst_quotient(std::get<Sfst>(m), s1, s2));
    return kExitOk;
  }
  if (command == "expand") {
    result = serialise(expand(LoadSfst(in[0]), o.lo, o.hi));
    return kExitOk;
  }
  if (command == "monitor") {
    const Transducer p = LoadProtocol(o.protocol);
    const Trace t = InFile(o.trace, [](const std::string &s) { return parse_trace(s); });
    const Verdict v = monitor(p, t);
    result = to_string(v) + "\n";
    return v.status == VerdictStatus::kOk ? kExitOk : kExitRejected;
  }
  if (command == "dot") {
    const Model m = LoadModel(in[0]);
    result = std::visit([](const auto &t) { return to_dot(t); }, m);
    return kExitOk;
  }
  throw CLI::ValidationError(command, "unknown command");
}

}  // namespace

int cli_main(const std::vector<std::string> &args, std::ostream &out,
             std::ostream &err) {
  CLI::App app{"Coherent minimisation of transducers under protocols", "cohmin"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("-o,--output", o.output, "Write the result to this file");

  auto add = [&](const char *name, const char *help, int inputs) {
    CLI::App *sub = app.add_subcommand(name, help);
    sub->add_option("inputs", o.inputs, "Model files")
        ->required()
        ->expected(inputs);
    return sub;
  };
  auto protocol = [&](CLI::App *sub) {
    sub->add_option("--protocol", o.protocol, "Protocol file (.prot or .fst)");
  };
  auto domain = [&](CLI::App *sub) {
    sub->add_option("--lo", o.lo, "Least register value")->capture_default_str();
    sub->add_option("--hi", o.hi, "Greatest register value")->capture_default_str();
  };
  auto keep_unreachable = [&](CLI::App *sub) {
    sub->add_flag("--keep-unreachable", o.keep_unreachable,
                  "Keep states unreachable from the initial state");
  };
  auto mode = [&](CLI::App *sub) {
    sub->add_option("--mode", o.mode, "Guard equivalence mode")
        ->check(CLI::IsMember({"structural", "semantic"}))
        ->capture_default_str();
  };

  add("validate", "Parse and validate a model", 1);
  add("traces", "List traces up to a depth", 1)
      ->add_option("--depth", o.depth, "Maximum trace length")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  for (const char *name : {"intersect", "interact", "compose"})
    keep_unreachable(add(name, "Product of two transducers", 2));
  add("project", "Hide labels outside --keep", 1)
      ->add_option("--keep", o.keep, "Comma-separated labels to keep")
      ->required();
  {
    CLI::App *sub = add("minimize", "Minimise a transducer", 1);
    sub->add_option("--policy", o.policy, "coherent or bisim")
        ->check(CLI::IsMember({"coherent", "bisim"}))
        ->capture_default_str();
    protocol(sub);
    mode(sub);
    domain(sub);
    keep_unreachable(sub);
  }
  {
    CLI::App *sub = add("relation", "Print the coherent simulation", 1);
    protocol(sub);
    sub->get_option("--protocol")->required();
    mode(sub);
    domain(sub);
  }
  {
    CLI::App *sub = add("equiv", "Bounded coherent equivalence of two models", 2);
    protocol(sub);
    sub->get_option("--protocol")->required();
    sub->add_option("--depth", o.depth, "Trace depth")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
  }
  add("quotient", "Merge two states", 1)
      ->add_option("--pair", o.pair, "s1,s2")
      ->required();
  domain(add("expand", "Expand a symbolic transducer over a value domain", 1));
  {
    CLI::App *sub = app.add_subcommand("monitor", "Check a trace against a protocol");
    protocol(sub);
    sub->get_option("--protocol")->required();
    sub->add_option("--trace", o.trace, "Trace file")
        ->required();
  }
  add("dot", "Export a model to DOT", 1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    std::string result;
    const int code = Run(command, o, result);
    if (o.output.empty()) {
      out << result;
    } else {
      std::ofstream file(o.output, std::ios::binary);
      if (!(file << result)) throw InputError(o.output + ": cannot write file");
    }
    return code;
  } catch (const CLI::ValidationError &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError &e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::kResourceLimit ? kExitResource : kExitInput;
  }
}

}  // namespace cohmin
