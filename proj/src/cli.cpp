#include "opcalc/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "opcalc/automorphy.hpp"
#include "opcalc/errors.hpp"
#include "opcalc/expression.hpp"
#include "opcalc/phase_symbol.hpp"
#include "opcalc/spec_io.hpp"
#include "opcalc/suites.hpp"
#include "opcalc/weyl.hpp"

namespace opcalc {

namespace {

using json = nlohmann::json;

/// Result of a command: text for humans, a JSON value for --json.
struct Outcome {
  std::string text;
  json value;
  int code = kExitOk;
  bool is_report = false;
};

class Session {
 public:
  Session(std::istream& in) : in_(in) {}

  std::string operand(const std::string& raw) {
    if (raw != "-") return raw;
    if (stdin_used_) throw DomainError("stdin can supply only one operand");
    stdin_used_ = true;
    std::string text((std::istreambuf_iterator<char>(in_)), std::istreambuf_iterator<char>());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return text;
  }

 private:
  std::istream& in_;
  bool stdin_used_ = false;
};

std::string read_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw DomainError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

Outcome text_result(std::string text) {
  Outcome o;
  o.value = text;
  o.text = std::move(text);
  return o;
}

json report_json(const SuiteReport& r) {
  json j{{"suite", r.name},         {"seed", r.seed},         {"pass", r.pass()},
         {"cases", r.cases},        {"failures", r.failures}, {"wall_seconds", r.wall_seconds}};
  if (!r.parts.empty()) {
    j["parts"] = json::array();
    for (const auto& p : r.parts) j["parts"].push_back(report_json(p));
  }
  return j;
}

std::string report_text(const SuiteReport& r) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << "suite " << r.name << " seed " << r.seed << ": " << (r.pass() ? "PASS" : "FAIL") << " (" << r.cases
      << " cases, " << r.wall_seconds << " s)\n";
  for (const auto& p : r.parts)
    out << "  " << p.name << ": " << (p.pass() ? "PASS" : "FAIL") << " (" << p.cases << " cases, " << p.wall_seconds
        << " s)\n";
  for (const auto& f : r.failures) out << "  failure: " << f << '\n';
  std::string text = out.str();
  text.pop_back();
  return text;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact calculus of polynomial differential operators and their symbols", "opcalc"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Print a single JSON record");

  Session session(in);
  std::size_t n = 1;
  json inputs = json::object();
  std::optional<std::uint64_t> used_seed;
  std::function<Outcome()> action;

  auto with_dim = [&](CLI::App* sub) {
    sub->add_option("-n,--dim", n, "Ambient dimension")->check(CLI::Range(std::size_t{1}, kMaxDim));
  };

  // Two-operator commands.
  std::string lhs, rhs;
  auto binary = [&](const std::string& name, const std::string& help, auto fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    with_dim(sub);
    sub->add_option("lhs", lhs, "Left operand")->required();
    sub->add_option("rhs", rhs, "Right operand")->required();
    sub->callback([&, fn] {
      action = [&, fn] {
        inputs = {{"n", n}, {"lhs", lhs}, {"rhs", rhs}};
        return fn(session.operand(lhs), session.operand(rhs));
      };
    });
  };
  binary("bracket", "Commutator [A, B]", [&](const std::string& a, const std::string& b) {
    return text_result(commutator(parse_operator(a, n), parse_operator(b, n)).to_string());
  });
  binary("compose", "Normal-ordered composition A*B", [&](const std::string& a, const std::string& b) {
    return text_result(compose_ops(parse_operator(a, n), parse_operator(b, n)).to_string());
  });
  binary("poisson", "Poisson bracket {P, Q} of symbols", [&](const std::string& a, const std::string& b) {
    return text_result(poisson_bracket(parse_symbol(a, n), parse_symbol(b, n)).to_string());
  });

  std::string operand_text;
  auto unary = [&](const std::string& name, const std::string& help, auto fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    with_dim(sub);
    sub->add_option("operand", operand_text, "Operand (or - for stdin)")->required();
    sub->callback([&, fn] {
      action = [&, fn] {
        inputs = {{"n", n}, {"operand", operand_text}};
        return fn(session.operand(operand_text));
      };
    });
    return sub;
  };
  unary("order", "Order of an operator", [&](const std::string& a) {
    return text_result(to_string(op_order(parse_operator(a, n))));
  });
  unary("symbol", "Total (normal-ordering) symbol", [&](const std::string& a) {
    return text_result(total_symbol(parse_operator(a, n)).to_string());
  });
  std::optional<unsigned> symbol_order;
  CLI::App* psymbol = unary("psymbol", "Principal symbol, or sigma_i with --order", [&](const std::string& a) {
    if (symbol_order) inputs["order"] = *symbol_order;
    return text_result(principal_symbol(parse_operator(a, n), symbol_order).to_string());
  });
  psymbol->add_option("--order", symbol_order, "Symbol order i");
  unary("adjoint", "Formal adjoint D*", [&](const std::string& a) {
    return text_result(formal_adjoint(parse_operator(a, n)).to_string());
  });
  unary("conjugate", "Conjugation C(D) = -D*", [&](const std::string& a) {
    return text_result(conjugation_C(parse_operator(a, n)).to_string());
  });
  unary("divergence", "Divergence of a vector field", [&](const std::string& a) {
    return text_result(divergence(parse_operator(a, n)).to_string());
  });

  std::string op_text, fn_text;
  int bound = kDefaultNilpotencyBound;
  {
    CLI::App* sub = app.add_subcommand("nilpotency", "Least k with (ad_D)^k(f) = 0");
    with_dim(sub);
    sub->add_option("--op", op_text, "Operator D")->required();
    sub->add_option("--fn", fn_text, "Function f")->required();
    sub->add_option("--max", bound, "Largest k tried")->check(CLI::PositiveNumber);
    sub->callback([&] {
      action = [&] {
        inputs = {{"n", n}, {"op", op_text}, {"fn", fn_text}, {"max", bound}};
        const auto w = ad_nilpotency_witness(parse_operator(session.operand(op_text), n),
                                             parse_polynomial(session.operand(fn_text), n), bound);
        Outcome o = text_result(w ? std::to_string(*w) : "none");
        if (w) o.value = *w;
        else o.value = nullptr;
        return o;
      };
    });
  }

  std::vector<std::string> components;
  {
    CLI::App* sub = app.add_subcommand("potential", "Poincare potential of a closed 1-form");
    with_dim(sub);
    sub->add_option("components", components, "omega_1 ... omega_n")->required();
    sub->callback([&] {
      action = [&] {
        inputs = {{"n", n}, {"components", components}};
        if (components.size() != n) throw DimensionMismatch(n, components.size());
        std::vector<Polynomial> parts;
        for (const auto& c : components) parts.push_back(parse_polynomial(session.operand(c), n));
        return text_result(poincare_potential(OneForm(std::move(parts))).to_string());
      };
    });
  }

  std::string spec_path;
  std::optional<std::size_t> spec_dim;
  {
    CLI::App* sub = app.add_subcommand("apply-auto", "Apply an automorphism described by a spec file");
    sub->add_option("-n,--dim", spec_dim, "Ambient dimension (else read from the spec)");
    sub->add_option("--spec", spec_path, "Spec file (key = value lines)")->required();
    sub->add_option("operand", operand_text, "Operator or symbol (or - for stdin)")->required();
    sub->callback([&] {
      action = [&] {
        const AutoSpec spec = parse_auto_spec(read_file(spec_path), spec_dim);
        inputs = {{"spec", format_auto_spec(spec)}, {"operand", operand_text}};
        const std::string text = session.operand(operand_text);
        return std::visit(
            [&](const auto& s) {
              using S = std::decay_t<decltype(s)>;
              if constexpr (std::is_same_v<S, D1AutoSpec>) return text_result(d1_apply(s, parse_operator(text, s.dim())).to_string());
              else if constexpr (std::is_same_v<S, DAutoSpec>) return text_result(d_apply(s, parse_operator(text, s.dim())).to_string());
              else return text_result(s_apply(s, parse_symbol(text, s.dim())).to_string());
            },
            spec);
      };
    });
  }
  {
    CLI::App* sub = app.add_subcommand("extract-d1", "Recover (kappa, lambda, omega, phi) from a first-order automorphism");
    sub->add_option("-n,--dim", spec_dim, "Ambient dimension (else read from the spec)");
    sub->add_option("--spec", spec_path, "Spec file of a d1 automorphism used as the black box")->required();
    sub->callback([&] {
      action = [&] {
        const AutoSpec parsed = parse_auto_spec(read_file(spec_path), spec_dim);
        const auto* spec = std::get_if<D1AutoSpec>(&parsed);
        if (!spec) throw DomainError("extract-d1 needs a spec with family = d1");
        inputs = {{"spec", format_auto_spec(parsed)}};
        const D1AutoSpec black_box = *spec;
        Outcome o;
        try {
          const D1AutoSpec recovered =
              extract_d1_params([black_box](const DiffOp& d) { return d1_apply(black_box, d); }, black_box.dim());
          o.text = format_auto_spec(recovered);
          o.text.pop_back();
          o.value = o.text;
          if (!(recovered == black_box)) o.code = kExitVerificationFailed;
        } catch (const DomainError& e) {
          o.text = std::string("extraction failed: ") + e.what();
          o.value = o.text;
          o.code = kExitVerificationFailed;
        }
        return o;
      };
    });
  }

  std::string suite_name;
  SuiteConfig config;
  {
    CLI::App* sub = app.add_subcommand("verify", "Run a property suite");
    sub->add_option("suite", suite_name, "Suite name or 'all'")->required();
    sub->add_option("--seed", config.seed, "Random seed");
    sub->add_option("--n-max", config.bounds.max_dim, "Largest dimension sampled")->check(CLI::Range(std::size_t{1}, kMaxDim));
    sub->add_option("--max-order", config.bounds.max_order, "Largest operator order sampled");
    sub->add_option("--max-degree", config.bounds.max_degree, "Largest coefficient degree sampled");
    sub->add_option("--coeff", config.bounds.coeff_bound, "Coefficients drawn from [-coeff, coeff]")->check(CLI::PositiveNumber);
    sub->add_option("--pairs", config.pairs, "Pairs for filtration and symbol-compat");
    sub->add_option("--samples", config.samples, "Samples for the other property loops");
    sub->add_option("--auto-pairs", config.auto_pairs, "Pairs per automorphism spec");
    sub->callback([&] {
      action = [&] {
        used_seed = config.seed;
        inputs = {{"suite", suite_name},
                  {"n_max", config.bounds.max_dim},
                  {"max_order", config.bounds.max_order},
                  {"max_degree", config.bounds.max_degree},
                  {"coeff", config.bounds.coeff_bound}};
        const SuiteReport report = run_verification_suite(suite_name, config);
        Outcome o;
        o.is_report = true;
        o.text = report_text(report);
        o.value = report_json(report);
        o.code = report.pass() ? kExitOk : kExitVerificationFailed;
        return o;
      };
    });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const Outcome o = action();
    if (as_json) {
      json record{{"command", command}, {"inputs", inputs}, {"seed", used_seed ? json(*used_seed) : json(nullptr)}};
      record[o.is_report ? "report" : "result"] = o.value;
      out << record.dump() << '\n';
    } else {
      out << o.text << '\n';
    }
    return o.code;
  } catch (const Error& e) {
    if (as_json) {
      out << json{{"command", command}, {"inputs", inputs}, {"error", e.what()}}.dump() << '\n';
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace opcalc
