// Command-line front end for the intdiff engine.

#include "intdiff/intdiff.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace intdiff;
using nlohmann::json;

namespace {

struct Options {
  std::string alphabet = "x,y";
  int order_n = 2;
  std::string lambda = "sym";
  std::string format = "text";
  std::size_t max_size = 2;
  std::uint64_t seed = 0;
  std::size_t samples = 200;
  int n_max = 2;
  bool trace = false;
  std::vector<std::string> inputs;
  std::string check;
};

std::vector<std::string> split_symbols(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

std::optional<Rational> lambda_value(const std::string& s) {
  if (s == "sym" || s == "λ" || s == "lambda") return std::nullopt;
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--lambda", "expected a rational number or 'sym', got '" + s + "'");
  }
}

Poly finish(const Poly& p, const std::optional<Rational>& lam) { return lam ? p.specialize(*lam) : p; }

void emit_poly(const Poly& p, const Alphabet& a, const Options& o, const std::optional<ReductionTrace>& tr = {},
               const std::optional<Rational>& lam = {}) {
  if (o.format == "json") {
    json out{{"poly", to_json(p, a)}};
    if (tr) out["trace"] = trace_to_json(*tr, a);
    std::cout << out.dump(2) << "\n";
    return;
  }
  std::cout << render(p, a) << "\n";
  if (tr) {
    if (lam) {
      ReductionTrace shown = *tr;
      for (auto& s : shown.steps) {
        s.coefficient = LambdaPoly(s.coefficient.eval(*lam));
        s.replacement = s.replacement.specialize(*lam);
      }
      std::cout << render_trace(shown, a);
    } else {
      std::cout << render_trace(*tr, a);
    }
  }
}

VerificationReport run_check(const std::string& name, const CheckConfig& cfg) {
  if (name == "axioms") return check_axioms(cfg);
  if (name == "confluence") return check_confluence(cfg);
  if (name == "order") return check_order(cfg);
  if (name == "leading") return check_leading(cfg);
  if (name == "cd") return check_cd(cfg);
  if (name == "basis") return check_basis(cfg);
  throw std::invalid_argument("unknown check " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"intdiff: integro-differential term rewriting"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--alphabet", o.alphabet, "comma-separated letters, in increasing order")->capture_default_str();
  app.add_option("--order-n", o.order_n, "derivative truncation order n")->capture_default_str();
  app.add_option("--lambda", o.lambda, "weight: 'sym' or a rational such as 0, -1, 1/2")->capture_default_str();
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  auto* reduce_cmd = app.add_subcommand("reduce", "Rota-Baxter normal form of an expression");
  reduce_cmd->add_option("expr", o.inputs, "expression")->required()->expected(1);

  auto* nf_cmd = app.add_subcommand("nf", "normal form modulo the integration-by-parts relations");
  nf_cmd->add_option("expr", o.inputs, "expression")->required()->expected(1);
  nf_cmd->add_flag("--trace", o.trace, "print each reduction step");

  auto* mul_cmd = app.add_subcommand("mul", "product of two expressions");
  mul_cmd->add_option("exprs", o.inputs, "two expressions")->required()->expected(2);

  auto* diff_cmd = app.add_subcommand("diff", "derivative of an expression");
  diff_cmd->add_option("expr", o.inputs, "expression")->required()->expected(1);

  auto* basis_cmd = app.add_subcommand("basis", "irreducible words up to a size");
  basis_cmd->add_option("--max-size", o.max_size, "largest word size")->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "run an enumerative check");
  verify_cmd->add_option("check", o.check, "check name")
      ->required()
      ->check(CLI::IsMember({"axioms", "order", "cd", "basis", "confluence", "leading", "all"}));
  verify_cmd->add_option("--max-size", o.max_size, "enumeration bound")->capture_default_str();
  verify_cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  verify_cmd->add_option("--samples", o.samples, "random samples per property")->capture_default_str();
  verify_cmd->add_option("--n-max", o.n_max, "largest order for the basis check")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    auto lam = lambda_value(o.lambda);
    Alphabet a(split_symbols(o.alphabet), o.order_n);

    if (reduce_cmd->parsed()) {
      emit_poly(finish(parse(o.inputs[0], a), lam), a, o);
    } else if (nf_cmd->parsed()) {
      Poly p = parse(o.inputs[0], a);
      if (o.trace) {
        auto tr = normal_form_trace(p, a);
        Poly out = finish(tr.result, lam);
        emit_poly(out, a, o, tr, lam);
      } else {
        emit_poly(finish(normal_form(p, a), lam), a, o);
      }
    } else if (mul_cmd->parsed()) {
      emit_poly(finish(diamond(parse(o.inputs[0], a), parse(o.inputs[1], a)), lam), a, o);
    } else if (diff_cmd->parsed()) {
      emit_poly(finish(derive(parse(o.inputs[0], a), a), lam), a, o);
    } else if (basis_cmd->parsed()) {
      auto words = enumerate_irr(a, o.max_size);
      if (o.format == "json") {
        json arr = json::array();
        for (const auto& w : words) arr.push_back(render(w, a));
        std::cout << json{{"basis", arr}, {"count", words.size()}}.dump(2) << "\n";
      } else {
        for (std::size_t i = 0; i < words.size(); ++i) std::cout << (i ? ", " : "") << render(words[i], a);
        std::cout << "\n";
      }
    } else if (verify_cmd->parsed()) {
      if (lam) std::cerr << "note: --lambda is ignored by verify; checks run with symbolic λ\n";
      CheckConfig cfg;
      cfg.alphabet = a;
      cfg.max_size = o.max_size;
      cfg.seed = o.seed;
      cfg.samples = o.samples;
      cfg.n_max = o.n_max;
      std::vector<std::string> names = {o.check};
      if (o.check == "all") names = {"axioms", "confluence", "order", "leading", "cd", "basis"};
      bool ok = true;
      json reports = json::array();
      for (const auto& name : names) {
        auto rep = run_check(name, cfg);
        ok = ok && rep.passed();
        if (o.format == "json")
          reports.push_back(rep.to_json());
        else
          std::cout << rep.to_text();
      }
      if (o.format == "json") std::cout << (names.size() == 1 ? reports[0] : reports).dump(2) << "\n";
      return ok ? 0 : 2;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
