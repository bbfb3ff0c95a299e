#include "app.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <istream>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "torelli/cubic.hpp"
#include "torelli/errors.hpp"
#include "torelli/verdict.hpp"

namespace torelli::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string poly;
  std::string vars;
  std::string field = "q";
  unsigned dmax = 4;
  std::string format = "text";
  std::uint64_t seed = 0;
  bool recursive = false;
  std::vector<std::string> against;
  std::size_t attempts = 32;
  bool timings = false;
};

struct Input {
  HomPoly f;
  std::vector<std::string> vars;
};

struct Report {
  Json body;
  std::string status = "ok";
  std::string message;  // diagnostic for stderr
};

class Stopwatch {
 public:
  void lap(const std::string& stage) {
    const auto now = std::chrono::steady_clock::now();
    laps_.emplace_back(stage, std::chrono::duration<double, std::milli>(now - last_).count());
    last_ = now;
  }
  Json json() const {
    Json j = Json::object();
    for (const auto& [stage, ms] : laps_) j[stage] = ms;
    return j;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, double>> laps_;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::vector<std::string> split_vars(const std::string& list) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    out.push_back(trim(list.substr(start, comma - start)));
    start = comma + 1;
  }
  for (const auto& v : out) {
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
      throw UsageError("invalid variable name '" + v + "' in --vars");
  }
  return out;
}

Input read_input(const Options& o, std::istream& in) {
  std::string text = o.poly;
  if (text == "-") text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  text = trim(text);
  Field field = Field::rationals();
  try {
    field = Field::parse(o.field);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--field: ") + e.what());
  }
  Input input{HomPoly(field, 1, 0), {}};
  if (!o.vars.empty()) {
    input.vars = split_vars(o.vars);
    input.f = parse_poly(text, input.vars, field);
  } else {
    ParsedPoly p = parse_poly_default(text, field);
    input.f = std::move(p.poly);
    input.vars = std::move(p.var_names);
  }
  const std::uint32_t p = field.characteristic();
  if (p != 0 && input.f.degree() >= p)
    throw UnsupportedInput("characteristic " + std::to_string(p) + " must exceed the degree " +
                           std::to_string(input.f.degree()));
  return input;
}

std::string poly_text(const HomPoly& f, const std::vector<std::string>& vars) {
  return format_poly(f, vars);
}

Json poly_list(const std::vector<HomPoly>& polys, const std::vector<std::string>& vars) {
  Json j = Json::array();
  for (const auto& p : polys) j.push_back(poly_text(p, vars));
  return j;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json input_json(const Input& input, const Options& o) {
  Json j;
  j["poly"] = poly_text(input.f, input.vars);
  j["vars"] = input.vars;
  j["field"] = input.f.field().name();
  j["degree"] = input.f.degree();
  j["num_vars"] = input.f.num_vars();
  (void)o;
  return j;
}

Json smoothness_json(const SmoothnessCertificate& c) {
  Json j;
  j["smooth"] = c.smooth;
  j["method"] = to_string(c.method);
  if (c.method == SmoothnessMethod::MultiplesFullness) {
    j["test_degree"] = c.test_degree;
    j["rank"] = c.rank;
    j["target_dim"] = c.target_dim;
  }
  return j;
}

Json deferred_json(const std::vector<UPoly>& deferred) {
  Json j = Json::array();
  for (const auto& d : deferred) j.push_back(d.to_string("t"));
  return j;
}

// Names for the new coordinates: upper-cased input names when that is
// unambiguous, otherwise X0..Xn.
std::vector<std::string> new_var_names(const std::vector<std::string>& vars, int depth) {
  std::vector<std::string> out;
  for (const auto& v : vars) {
    std::string u = v;
    if (depth == 0) {
      for (auto& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    } else {
      // replace the previous level's suffix rather than stacking them
      const auto us = u.find_last_of('_');
      if (us != std::string::npos && us + 1 < u.size() &&
          std::all_of(u.begin() + static_cast<long>(us) + 1, u.end(),
                      [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        u.erase(us);
      u += "_" + std::to_string(depth);
    }
    out.push_back(std::move(u));
  }
  const std::set<std::string> distinct(out.begin(), out.end());
  if (distinct.size() != out.size() || (depth == 0 && out == vars)) {
    out.clear();
    for (std::size_t i = 0; i < vars.size(); ++i) out.push_back("X" + std::to_string(i));
  }
  return out;
}

HomPoly restrict_block(const HomPoly& g, std::size_t first, std::size_t count) {
  HomPoly out(g.field(), count, g.degree());
  for (const auto& [m, c] : g.terms()) {
    std::vector<std::uint16_t> e(count);
    for (std::size_t i = 0; i < count; ++i) e[i] = static_cast<std::uint16_t>(m[first + i]);
    out.add_term(Monomial(std::move(e)), c);
  }
  return out;
}

Json decomposition_json(const STDecomposition& d, const std::vector<std::string>& vars, int depth,
                        const ExtractionOptions* recurse);

Json part_json(const HomPoly& part, const std::vector<std::string>& vars, int depth,
               const ExtractionOptions& eo) {
  Json j;
  j["poly"] = poly_text(part, vars);
  j["vars"] = vars;
  if (part.num_vars() < 2) {
    j["status"] = "SINGLE_VARIABLE";
  } else if (part.degree() < 2) {
    j["status"] = "LINEAR";
  } else {
    const ExtractionResult r = extract_decomposition(part, eo);
    j["status"] = to_string(r.status);
    j["st_dim"] = r.st_dim;
    if (r.decomposition) j["decomposition"] = decomposition_json(*r.decomposition, vars, depth, &eo);
    if (!r.deferred.empty()) j["deferred"] = deferred_json(r.deferred);
  }
  return j;
}

Json decomposition_json(const STDecomposition& d, const std::vector<std::string>& vars, int depth,
                        const ExtractionOptions* recurse) {
  const std::vector<std::string> nv = new_var_names(vars, depth);
  Json j;
  j["split"] = d.split;
  j["new_vars"] = nv;
  j["change"] = matrix_json(d.change.matrix());
  j["f1"] = poly_text(d.f1, nv);
  j["f2"] = poly_text(d.f2, nv);
  j["verified"] = true;  // every decomposition the library returns passed verify_decomposition
  if (recurse) {
    const std::size_t n1 = d.f1.num_vars();
    const std::size_t low = d.split + 1;
    const std::vector<std::string> a(nv.begin(), nv.begin() + static_cast<long>(low));
    const std::vector<std::string> b(nv.begin() + static_cast<long>(low), nv.end());
    Json parts = Json::array();
    parts.push_back(part_json(restrict_block(d.f1, 0, low), a, depth + 1, *recurse));
    parts.push_back(part_json(restrict_block(d.f2, low, n1 - low), b, depth + 1, *recurse));
    j["parts"] = std::move(parts);
  }
  return j;
}

ExtractionOptions extraction_options(const Options& o) {
  ExtractionOptions eo;
  eo.attempts = o.attempts;
  eo.seed = o.seed;
  return eo;
}

// --- commands ---------------------------------------------------------------

Report cmd_analyze(const Input& input, const Options& o) {
  Stopwatch clock;
  Report r;
  const ExtractionOptions eo = extraction_options(o);
  const TorelliVerdict v = torelli_verdict(input.f, eo);
  clock.lap("verdict");
  Json& j = r.body;
  j["smoothness"] = v.justification.smoothness ? smoothness_json(*v.justification.smoothness) : Json();
  Json st;
  if (v.status == TorelliStatus::Unsupported) {
    st["kind"] = nullptr;
  } else {
    st["kind"] = v.status == TorelliStatus::Torelli ? "NOT_ST" : "ST";
    st["st_dim"] = v.justification.st_dim;
  }
  j["st"] = std::move(st);
  Json t;
  t["status"] = to_string(v.status);
  t["needs_extension"] = v.needs_extension;
  if (!v.reason.empty()) t["reason"] = v.reason;
  if (!v.justification.note.empty()) t["note"] = v.justification.note;
  if (v.witness) {
    const auto nv = new_var_names(input.vars, 0);
    t["family"] = "mu*(" + poly_text(v.witness->f1, nv) + ") + nu*(" + poly_text(v.witness->f2, nv) +
                  "), mu*nu != 0";
  }
  j["torelli"] = std::move(t);
  j["decomposition"] = v.witness ? decomposition_json(*v.witness, input.vars, 0, o.recursive ? &eo : nullptr)
                                 : Json();
  if (!v.deferred.empty()) j["deferred"] = deferred_json(v.deferred);
  clock.lap("report");
  if (o.timings) j["timings_ms"] = clock.json();

  if (v.status == TorelliStatus::Unsupported) {
    r.status = "unsupported";
    r.message = v.reason;
  } else if (v.needs_extension) {
    r.status = "needs_extension";
    r.message = "the splitting pencil members are defined only over an extension of " +
                input.f.field().name();
  }
  return r;
}

Report cmd_st(const Input& input, const Options& o) {
  Stopwatch clock;
  Report r;
  Json& j = r.body;
  const STVerdict v = is_st(input.f);
  clock.lap("st_space");
  j["kind"] = v.kind == STKind::ST ? "ST" : "NOT_ST";
  j["st_dim"] = v.st_dim;
  j["justification"] = v.justification;
  j["basis"] = poly_list(st_space(input.f).basis(), input.vars);
  const ExtractionOptions eo = extraction_options(o);
  if (input.f.degree() == 1) {
    const TorelliVerdict t = torelli_verdict(input.f, eo);
    j["extraction"] = to_string(ExtractionStatus::Decomposed);
    j["decomposition"] = decomposition_json(*t.witness, input.vars, 0, o.recursive ? &eo : nullptr);
  } else if (v.kind == STKind::ST) {
    const ExtractionResult e = extract_decomposition(input.f, eo);
    j["extraction"] = to_string(e.status);
    j["candidates_tried"] = e.candidates_tried;
    j["decomposition"] =
        e.decomposition ? decomposition_json(*e.decomposition, input.vars, 0, o.recursive ? &eo : nullptr)
                        : Json();
    if (!e.deferred.empty()) j["deferred"] = deferred_json(e.deferred);
    if (e.status == ExtractionStatus::NeedsExtension) {
      r.status = "needs_extension";
      r.message = "the splitting pencil members are defined only over an extension of " +
                  input.f.field().name();
    }
  } else {
    j["extraction"] = to_string(ExtractionStatus::NotST);
    j["decomposition"] = nullptr;
  }
  clock.lap("extraction");
  if (o.timings) j["timings_ms"] = clock.json();
  return r;
}

Report cmd_jacobi(const Input& input, const Options& o) {
  Stopwatch clock;
  Report r;
  Json& j = r.body;
  j["partials"] = poly_list(gradient(input.f), input.vars);
  const JacobiPiece piece = jacobi_piece(input.f);
  const GradedPiece a(input.f.num_vars(), input.f.degree() - 1);
  std::vector<HomPoly> basis;
  for (const auto& v : piece.piece.basis_vectors()) basis.push_back(from_coeff_vector(input.f.field(), a, v));
  j["jacobi_dim"] = piece.dim();
  j["jacobi_basis"] = poly_list(basis, input.vars);
  j["partials_independent"] = piece.dim() == input.f.num_vars();
  clock.lap("jacobi_piece");
  j["smoothness"] = smoothness_json(smoothness_certificate(input.f));
  clock.lap("smoothness");
  if (o.timings) j["timings_ms"] = clock.json();
  return r;
}

Report cmd_hilbert(const Input& input, const Options& o) {
  Stopwatch clock;
  Report r;
  Json& j = r.body;
  j["dmax"] = o.dmax;
  j["dims"] = log_derivation_dims(input.f, o.dmax).dims;
  clock.lap("hilbert");
  if (o.timings) j["timings_ms"] = clock.json();
  return r;
}

Report cmd_jump(const Input& input, const Options& o) {
  Stopwatch clock;
  Report r;
  Json& j = r.body;
  if (input.f.degree() == 0) throw UnsupportedInput("constant polynomial defines no divisor");
  if (!is_smooth(input.f)) throw UnsupportedInput("singular divisor: Theorem applies to smooth divisors only");
  std::vector<HomPoly> candidates;
  if (o.against.empty()) {
    const GradedPiece a(input.f.num_vars(), input.f.degree() - 1);
    for (const auto& m : a.basis()) candidates.push_back(HomPoly::monomial(m, Scalar::one(input.f.field())));
    j["candidates"] = "monomial basis";
  } else {
    for (const auto& text : o.against) candidates.push_back(parse_poly(trim(text), input.vars, input.f.field()));
    j["candidates"] = "given";
  }
  const std::vector<JumpReport> reports = jump_locus_filter(input.f, candidates);
  clock.lap("jump");
  Json list = Json::array();
  Json jumped = Json::array();
  for (const auto& rep : reports) {
    Json e;
    e["g"] = poly_text(rep.g, input.vars);
    e["indicator_dim"] = rep.indicator_dim;
    e["jumped"] = rep.jumped;
    if (rep.error) e["error"] = *rep.error;
    if (rep.jumped) jumped.push_back(e["g"]);
    list.push_back(std::move(e));
  }
  j["jacobi_dim"] = jacobi_piece(input.f).dim();
  j["reports"] = std::move(list);
  j["jumped"] = std::move(jumped);
  if (o.timings) j["timings_ms"] = clock.json();
  return r;
}

Report cmd_reconstruct(const Input& input, const Options& o) {
  Stopwatch clock;
  Report r;
  Json& j = r.body;
  if (input.f.degree() == 0) throw UnsupportedInput("constant polynomial defines no divisor");
  const JacobiPiece piece = jacobi_piece(input.f);
  const ReconstructionFamily fam =
      divisors_with_jacobi_piece(piece.piece, input.f.num_vars(), input.f.degree());
  clock.lap("reconstruct");
  j["jacobi_dim"] = piece.dim();
  j["family_dim"] = fam.dim();
  j["basis"] = poly_list(fam.basis(), input.vars);
  j["basis_realizes"] = fam.basis_realizes();
  const bool contains = fam.contains(input.f);
  j["contains_input"] = contains;
  j["input_realizes"] = fam.realizes(input.f);
  j["line_through_input"] = contains && fam.dim() == 1;
  clock.lap("checks");
  if (o.timings) j["timings_ms"] = clock.json();
  return r;
}

Report cmd_cubic(const Input& input, const Options& o) {
  Stopwatch clock;
  Report r;
  Json& j = r.body;
  const CorollaryRecord rec = corollary_check(input.f);
  clock.lap("corollary");
  j["st"] = rec.st == STKind::ST ? "ST" : "NOT_ST";
  j["st_dim"] = rec.st_dim;
  j["invariant_value"] = invariant_value(input.f).to_string();
  j["j_zero"] = rec.j_zero;
  j["agree"] = rec.agree;
  if (o.timings) j["timings_ms"] = clock.json();
  if (!rec.agree) {
    r.status = "internal_error";
    r.message = "ST verdict and j-invariant vanishing disagree";
  }
  return r;
}

// --- output -----------------------------------------------------------------

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_null()) return "-";
  return v.dump();
}

bool all_scalars(const Json& a) {
  return std::all_of(a.begin(), a.end(), [](const Json& e) { return !e.is_structured(); });
}

void render_text(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, value] : j.items()) {
    out << pad << key << ":";
    if (value.is_object()) {
      out << "\n";
      render_text(value, out, indent + 2);
    } else if (value.is_array()) {
      if (value.empty()) {
        out << " (none)\n";
      } else if (all_scalars(value)) {
        out << " ";
        for (std::size_t i = 0; i < value.size(); ++i) out << (i ? ", " : "") << scalar_text(value[i]);
        out << "\n";
      } else {
        out << "\n";
        for (const auto& e : value) {
          if (e.is_array()) {
            out << pad << "  [";
            for (std::size_t i = 0; i < e.size(); ++i) out << (i ? ", " : "") << scalar_text(e[i]);
            out << "]\n";
          } else if (e.is_object()) {
            out << pad << "  -\n";
            render_text(e, out, indent + 4);
          } else {
            out << pad << "  " << scalar_text(e) << "\n";
          }
        }
      }
    } else {
      out << " " << scalar_text(value) << "\n";
    }
  }
}

void emit(const Json& report, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    out << report.dump(2) << "\n";
  } else {
    render_text(report, out, 0);
  }
}

using Command = Report (*)(const Input&, const Options&);

const std::vector<std::pair<std::string, std::pair<Command, std::string>>>& commands() {
  static const std::vector<std::pair<std::string, std::pair<Command, std::string>>> table{
      {"analyze", {cmd_analyze, "smoothness, ST type, Torelli verdict and decomposition"}},
      {"st", {cmd_st, "ST space S(f) and decomposition extraction"}},
      {"jacobi", {cmd_jacobi, "degree k-1 Jacobi piece and smoothness certificate"}},
      {"hilbert", {cmd_hilbert, "dimensions of D0(-log f) in degrees 0..dmax"}},
      {"jump", {cmd_jump, "jump indicator for candidate divisors of degree k-1"}},
      {"reconstruct", {cmd_reconstruct, "forms whose partials lie in the Jacobi piece of f"}},
      {"cubic", {cmd_cubic, "plane cubic: ST type against vanishing of j"}},
  };
  return table;
}

void add_options(CLI::App* sub, Options& o) {
  sub->add_option("--poly", o.poly, "homogeneous polynomial, or - to read stdin")->required();
  sub->add_option("--vars", o.vars, "comma-separated variable names (default x,y,z,w or x0..x9)");
  sub->add_option("--field", o.field, "q or fp:<prime>")->capture_default_str();
  sub->add_option("--dmax", o.dmax, "largest degree for hilbert")->capture_default_str();
  sub->add_option("--format", o.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  sub->add_option("--seed", o.seed, "seed for the randomized candidate search")->capture_default_str();
  sub->add_flag("--recursive", o.recursive, "split the parts of a decomposition further");
  sub->add_option("--against", o.against, "candidate divisor for jump (repeatable)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->allow_extra_args(false);
  sub->add_option("--attempts", o.attempts, "randomized extraction candidates")->capture_default_str();
  sub->add_flag("--timings", o.timings, "include per-stage timings in the report");
}

}  // namespace

int exit_code_for(const std::string& status) {
  static const std::map<std::string, int> table{
      {"ok", kOk},
      {"usage_error", kUsage},
      {"unsupported", kUnsupported},
      {"needs_extension", kNeedsExtension},
      {"internal_error", kInternal},
  };
  const auto it = table.find(status);
  return it == table.end() ? kInternal : it->second;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sebastiani-Thom type and Torelli verdicts for smooth hypersurfaces", "torelli"};
  app.require_subcommand(1);
  Options o;
  for (const auto& [name, entry] : commands()) add_options(app.add_subcommand(name, entry.second), o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::string name;
  Command command = nullptr;
  for (const auto& [n, entry] : commands())
    if (app.got_subcommand(n)) {
      name = n;
      command = entry.first;
    }

  Json report;
  report["command"] = name;
  std::string status = "ok";
  std::string message;
  try {
    const Input input = read_input(o, in);
    report["input"] = input_json(input, o);
    Report r = command(input, o);
    for (auto& [key, value] : r.body.items()) report[key] = std::move(value);
    status = r.status;
    message = r.message;
  } catch (const ParseError& e) {
    status = "usage_error";
    message = std::string("parse error: ") + e.what();
  } catch (const UsageError& e) {
    status = "usage_error";
    message = e.what();
  } catch (const UnsupportedInput& e) {
    status = "unsupported";
    message = e.what();
  } catch (const ConsistencyFailure& e) {
    status = "internal_error";
    message = std::string("internal consistency failure: ") + e.what();
  } catch (const std::invalid_argument& e) {
    status = "usage_error";
    message = e.what();
  } catch (const std::exception& e) {
    status = "internal_error";
    message = std::string("internal error: ") + e.what();
  }

  Json full;
  full["command"] = report["command"];
  full["status"] = status;
  for (auto& [key, value] : report.items())
    if (key != "command") full[key] = std::move(value);
  if (status != "ok" && !message.empty()) full["error"] = message;
  // Failed parses leave nothing useful to report in text mode.
  if (o.format == "json" || full.contains("input")) emit(full, o, out);
  if (!message.empty()) err << message << "\n";
  return exit_code_for(status);
}

}  // namespace torelli::cli
