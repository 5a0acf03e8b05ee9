#include "ltlsps/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ltlsps/interp.hpp"
#include "ltlsps/ltl.hpp"
#include "ltlsps/ltl_to_sps.hpp"
#include "ltlsps/mc.hpp"
#include "ltlsps/schema.hpp"
#include "ltlsps/solve.hpp"
#include "ltlsps/sps_to_ltl.hpp"

namespace ltlsps {

namespace {

struct InputSource {
  std::string file;
  std::string expr;

  std::string read() const {
    if (!expr.empty() && !file.empty())
      throw std::invalid_argument("give either a FILE or --expr, not both");
    if (!expr.empty()) return expr;
    if (file.empty())
      throw std::invalid_argument("no input: give a FILE or --expr");
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open '" + file + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool machine = false;

void emit(std::ostream& out, const std::string& key, const std::string& value,
          const std::string& plain) {
  if (machine)
    out << key << ": " << value << "\n";
  else
    out << plain << "\n";
}

int cmd_translate(std::ostream& out, const InputSource& in,
                  const std::string& to, const std::string& mode, bool nnf,
                  bool invert_time, bool fg, bool inline_prop) {
  std::string text = in.read();
  if (to == "ltl") {
    Sch s = parse_schema(text);
    SchemaToLtlOptions opts;
    opts.nnf_first = nnf;
    Ltl f = schema_to_ltl(s, opts);
    emit(out, "formula", render_ltl(f), render_ltl(f));
    return 0;
  }
  Ltl f = parse_ltl(text);
  if (mode == "finite" || mode == "direct") {
    SchemaWithVerdict r =
        mode == "finite" ? ltl_to_schema_finite(f) : ltl_to_schema_direct(f);
    emit(out, "schema", render_schema(r.schema), render_schema(r.schema));
    emit(out, "sequential", r.verdict.is_sps ? "true" : "false",
         r.verdict.is_sps ? "(sequential)" : "(not sequential)");
    return 0;
  }
  LtlToSpsOptions opts;
  opts.invert_time = invert_time;
  opts.specialize_fg = fg;
  opts.inline_propositional = inline_prop;
  Sch s = ltl_to_sps(f, opts);
  emit(out, "schema", render_schema(s), render_schema(s));
  return 0;
}

int cmd_sat(std::ostream& out, const InputSource& in, const std::string& side,
            std::size_t bound) {
  std::string text = in.read();
  if (side == "sps") {
    Sch s = parse_schema(text);
    BoundedVerdict v = schema_sat_bounded(s, bound);
    if (v.sat()) {
      emit(out, "status", "sat", "SAT at n=" + std::to_string(v.bound));
      std::string w = render_schema_interp(*v.schema_witness);
      emit(out, "bound", std::to_string(v.bound), "");
      emit(out, "witness", w, w);
      return 0;
    }
    emit(out, "status", "unsat-up-to-bound",
         "UNSAT up to n=" + std::to_string(bound));
    emit(out, "bound", std::to_string(bound), "");
    return 1;
  }
  Ltl f = parse_ltl(text);
  BoundedVerdict v = ltl_sat_bounded(f, bound);
  if (v.sat()) {
    emit(out, "status", "sat",
         "SAT with prefix+period=" + std::to_string(v.bound));
    std::string w = render_up_interp(*v.up_witness);
    emit(out, "bound", std::to_string(v.bound), "");
    emit(out, "witness", w, w);
    return 0;
  }
  emit(out, "status", "unsat-up-to-bound",
       "UNSAT up to prefix+period=" + std::to_string(bound));
  emit(out, "bound", std::to_string(bound), "");
  return 1;
}

int cmd_eval(std::ostream& out, const std::string& interp_path,
             std::size_t at, const std::string& formula) {
  std::string itext = read_file(interp_path);
  std::string_view trimmed(itext);
  while (!trimmed.empty() &&
         std::isspace(static_cast<unsigned char>(trimmed.front())))
    trimmed.remove_prefix(1);
  bool value;
  if (trimmed.rfind("prefix", 0) == 0) {
    UPInterpretation sigma = parse_up_interp(itext);
    Ltl f = parse_ltl(formula);
    value = eval_ltl(sigma, at, f);
  } else {
    SchemaInterpretation interp = parse_schema_interp(itext);
    Sch s = parse_schema(formula);
    value = eval_schema(interp, s);
  }
  emit(out, "value", value ? "true" : "false", value ? "true" : "false");
  return value ? 0 : 1;
}

int cmd_instantiate(std::ostream& out, const InputSource& in, std::size_t n) {
  Sch s = parse_schema(in.read());
  Prop inst = instantiate(s, n);
  emit(out, "instance", render_prop(inst), render_prop(inst));
  return 0;
}

int cmd_mc(std::ostream& out, std::ostream& err, const std::string& ts_path,
           const std::string& prop, std::size_t bound) {
  TransitionSystem ts = parse_ts(read_file(ts_path));
  Ltl f = parse_ltl(prop);
  if (std::size_t d = x_depth(f); d > 0)
    err << "warning: property nests X " << d
        << " deep; obligations beyond the bound are not checked\n";
  McVerdict v = check_safety(ts, f, bound);
  if (v.holds) {
    emit(out, "status", "holds", "holds up to n=" + std::to_string(v.bound));
    emit(out, "bound", std::to_string(v.bound), "");
    return 0;
  }
  std::string path;
  for (std::size_t i = 0; i < v.path.size(); ++i)
    path += (i ? " " : "") + v.path[i];
  emit(out, "status", "counterexample", "counterexample found");
  emit(out, "path", path, "path: " + path);
  emit(out, "time", std::to_string(v.time),
       "violated at t=" + std::to_string(v.time));
  return 1;
}

int cmd_size(std::ostream& out, const InputSource& in, std::string side) {
  std::string text = in.read();
  if (side.empty()) {
    try {
      (void)parse_schema(text);
      side = "sps";
    } catch (const ParseError&) {
      side = "ltl";
    }
  }
  if (side == "sps") {
    Sch s = parse_schema(text);
    SizeMetrics m = size_metrics(s);
    emit(out, "sym_size", std::to_string(m.sym_size),
         "sym_size: " + std::to_string(m.sym_size));
    emit(out, "max_int", std::to_string(m.max_int),
         "max_int: " + std::to_string(m.max_int));
    emit(out, "unary_size", std::to_string(m.unary_size),
         "unary_size: " + std::to_string(m.unary_size));
    emit(out, "binary_size", std::to_string(m.binary_size),
         "binary_size: " + std::to_string(m.binary_size));
    if (classify_sps(s).is_sps) {
      TranslationSizeReport r = schema_to_ltl_size_report(s);
      emit(out, "ltl_size", std::to_string(r.output_size),
           "translated LTL size: " + std::to_string(r.output_size));
      emit(out, "ratio", std::to_string(r.ratio),
           "ratio: " + std::to_string(r.ratio));
    }
    return 0;
  }
  Ltl f = parse_ltl(text);
  CeilSizeReport r = ltl_to_sps_size_report(f);
  emit(out, "ltl_size", std::to_string(r.input_size),
       "formula size: " + std::to_string(r.input_size));
  emit(out, "schema_size", std::to_string(r.output_size),
       "translated schema size: " + std::to_string(r.output_size));
  emit(out, "ratio", std::to_string(r.ratio),
       "ratio: " + std::to_string(r.ratio));
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"LTL <-> sequential propositional schema toolkit"};
  app.require_subcommand(1);
  machine = false;
  app.add_flag_callback("--machine", [] { machine = true; },
                        "line-keyed machine-readable output");

  InputSource input;
  std::string to, side, mode = "structure";
  bool nnf = false, invert_time = false, fg = false, inline_prop = false;
  std::size_t bound = kDefaultSchemaBound;
  std::size_t at = 0, n_value = 0;
  std::string interp_path, ts_path, formula;

  auto* translate = app.add_subcommand("translate", "translate between LTL and schemata");
  translate->add_option("--to", to, "target language")->required()
      ->check(CLI::IsMember({"ltl", "sps"}));
  translate->add_option("--mode", mode, "schema translation flavour")
      ->check(CLI::IsMember({"structure", "direct", "finite"}));
  translate->add_flag("--nnf", nnf, "normalize before translating (to ltl)");
  translate->add_flag("--invert-time", invert_time, "mirror indices (to sps)");
  translate->add_flag("--fg", fg, "dedicated F/G axioms (to sps)");
  translate->add_flag("--inline-prop", inline_prop,
                      "no axioms for propositional connectives (to sps)");
  translate->add_option("file", input.file, "input file");
  translate->add_option("--expr", input.expr, "inline input");

  auto* sat = app.add_subcommand("sat", "bounded satisfiability");
  sat->add_option("--side", side, "input language")->required()
      ->check(CLI::IsMember({"ltl", "sps"}));
  sat->add_option("--bound", bound, "search bound (n or prefix+period)");
  sat->add_option("file", input.file, "input file");
  sat->add_option("--expr", input.expr, "inline input");

  auto* eval = app.add_subcommand("eval", "evaluate under an interpretation");
  eval->add_option("--interp", interp_path, "interpretation file")->required();
  eval->add_option("--at", at, "time of evaluation (LTL side)");
  eval->add_option("formula", formula, "formula text")->required();

  auto* inst = app.add_subcommand("instantiate", "expand a schema instance");
  inst->add_option("--n", n_value, "parameter value")->required();
  inst->add_option("file", input.file, "input file");
  inst->add_option("--expr", input.expr, "inline input");

  auto* mc = app.add_subcommand("mc", "bounded safety model checking");
  mc->add_option("--ts", ts_path, "transition system file")->required();
  mc->add_option("--prop", formula, "property")->required();
  mc->add_option("--bound", bound, "path length bound");

  auto* size = app.add_subcommand("size", "size metrics and ratios");
  size->add_option("--side", side, "input language")
      ->check(CLI::IsMember({"ltl", "sps"}));
  size->add_option("file", input.file, "input file");
  size->add_option("--expr", input.expr, "inline input");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (translate->parsed())
      return cmd_translate(out, input, to, mode, nnf, invert_time, fg,
                           inline_prop);
    if (sat->parsed()) return cmd_sat(out, input, side, bound);
    if (eval->parsed()) return cmd_eval(out, interp_path, at, formula);
    if (inst->parsed()) return cmd_instantiate(out, input, n_value);
    if (mc->parsed()) return cmd_mc(out, err, ts_path, formula, bound);
    if (size->parsed()) return cmd_size(out, input, side);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace ltlsps
