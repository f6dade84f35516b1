// dmod: command-line front end for Drinfeld modular forms of level Gamma_0(T).

#include <cstdlib>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include "dmod/dmod.hpp"

namespace {

using namespace dmod;

constexpr int kExitMath = 1;
constexpr int kExitUsage = 2;
constexpr int kDefaultPrecCap = 10000;

struct Options {
  long long q = 0, p = 0, r = 0;
  std::string modulus, pi, format = "json";
  std::optional<int> prec;
};

struct Context {
  FieldPtr field;
  PolyRingPtr A;
  FracFieldPtr K;
  std::shared_ptr<const Generators> gen;
  ResidueFieldPtr residue;  // set when --pi is given
  int prec = 0;
  bool text = false;
};

int precision_cap() {
  if (const char* env = std::getenv("DMOD_PREC_CAP")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
    }
    fail(Errc::InvalidArgument, "DMOD_PREC_CAP must be a positive integer");
  }
  return kDefaultPrecCap;
}

APoly read_apoly(const PolyRing& A, const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '[') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      fail(Errc::ParseError, e.what());
    }
    return apoly_from_json(A, j);
  }
  return parse_apoly(A, text);
}

Context make_context(const Options& o, int default_prec) {
  long long p = o.p, r = o.r;
  if (o.q != 0) {
    if (o.q < 3) fail(Errc::InvalidArgument, "--q must be an odd prime power");
    const auto factors = detail::prime_factors(static_cast<std::uint64_t>(o.q));
    if (factors.size() != 1) fail(Errc::NotPrime, "--q must be a prime power");
    long long qq = o.q, rr = 0;
    while (qq > 1) {
      qq /= static_cast<long long>(factors[0]);
      ++rr;
    }
    if ((p != 0 && p != static_cast<long long>(factors[0])) || (r != 0 && r != rr))
      fail(Errc::InvalidArgument, "--q disagrees with --p/--r");
    p = static_cast<long long>(factors[0]);
    r = rr;
  }
  if (p == 0) fail(Errc::InvalidArgument, "specify the field with --q or --p/--r");
  if (r == 0) r = 1;
  std::optional<std::vector<std::uint32_t>> modulus;
  if (!o.modulus.empty()) {
    const auto first = o.modulus.find_first_not_of(" \t");
    if (first != std::string::npos && o.modulus[first] == '[') {
      try {
        modulus = Json::parse(o.modulus).get<std::vector<std::uint32_t>>();
      } catch (const Json::exception& e) {
        fail(Errc::ParseError, e.what());
      }
    } else {
      modulus = parse_fp_poly(p, o.modulus);
    }
  }
  Context ctx;
  ctx.field = make_field_ctx(p, r, modulus);
  ctx.A = make_poly_ring(ctx.field);
  ctx.K = make_frac_field(ctx.A);
  ctx.gen = std::make_shared<const Generators>(ctx.A);
  if (!o.pi.empty()) ctx.residue = make_residue_field(ctx.A, validate_prime(read_apoly(*ctx.A, o.pi), *ctx.A));
  ctx.prec = o.prec.value_or(default_prec);
  const int cap = precision_cap();
  if (ctx.prec < 1 || ctx.prec > cap)
    fail(Errc::InvalidArgument, "--prec must be in [1, " + std::to_string(cap) + "]");
  if (o.format != "json" && o.format != "text") fail(Errc::InvalidArgument, "--format must be json or text");
  ctx.text = o.format == "text";
  return ctx;
}

const ResidueFieldPtr& need_prime(const Context& ctx) {
  if (!ctx.residue) fail(Errc::InvalidArgument, "this command needs --pi");
  return ctx.residue;
}

Json read_json(std::istream& in) {
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    fail(Errc::ParseError, std::string("reading JSON from stdin: ") + e.what());
  }
  return j;
}

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

int exit_code_for(Errc e) {
  switch (e) {
    case Errc::EvenCharacteristic:
    case Errc::NotPrime:
    case Errc::BadModulus:
    case Errc::NotMonic:
    case Errc::Reducible:
    case Errc::ParseError:
    case Errc::InvalidArgument:
    case Errc::Overflow:
    case Errc::TypeMismatch:
    case Errc::EmptySpace:
      return kExitUsage;
    default:
      return kExitMath;
  }
}

// Either kind of form, decided by whether any coefficient is a fraction.
template <class F>
auto with_form(const Context& ctx, const Json& j, F&& fn) {
  if (form_needs_fractions(j)) return fn(form_from_json(ctx.K, j));
  return fn(form_from_json(ctx.A, j));
}

template <class F>
auto with_series(const Context& ctx, const Json& j, F&& fn) {
  const std::string tag = series_ring_tag(j);
  if (tag == PolyRing::kTag) return fn(series_from_json(ctx.A, j));
  if (tag == FracField::kTag) return fn(series_from_json(ctx.K, j));
  if (tag == ResidueField::kTag) return fn(series_from_json(need_prime(ctx), j));
  fail(Errc::ParseError, "unknown ring tag \"" + tag + "\"");
}

int cmd_gen(const Context& ctx, const std::string& name) {
  ASeries s(ctx.A, 1);
  if (name.rfind("gd:", 0) == 0) {
    int d = 0;
    try {
      d = std::stoi(name.substr(3));
    } catch (...) {
      fail(Errc::InvalidArgument, "expected gd:<d>");
    }
    s = ctx.gen->gd(d, ctx.prec);
  } else if (auto g = parse_gen_name(name)) {
    s = ctx.gen->get(*g, ctx.prec);
  } else {
    fail(Errc::InvalidArgument, "unknown generator \"" + name + "\"");
  }
  if (ctx.text) std::cout << series_to_text(s) << "\n";
  else emit(series_to_json(s));
  return 0;
}

int cmd_decompose(const Context& ctx, int k, int l) {
  const Json j = read_json(std::cin);
  with_series(ctx, j, [&](const auto& s) {
    const auto f = from_series(k, l, s, *ctx.gen);
    if (ctx.text) std::cout << form_to_text(f) << "\n";
    else emit(form_to_json(f));
  });
  return 0;
}

int cmd_series(const Context& ctx) {
  const Json j = read_json(std::cin);
  with_form(ctx, j, [&](const auto& f) {
    const auto s = to_series(f, *ctx.gen, ctx.prec);
    if (ctx.text) std::cout << series_to_text(s) << "\n";
    else emit(series_to_json(s));
  });
  return 0;
}

int cmd_vm(const Context& ctx, int k, int l) {
  const auto basis = victor_miller(*ctx.gen, k, l);
  Json out = Json::array();
  for (const auto& f : basis) {
    if (ctx.text) std::cout << form_to_text(f) << "\n";
    out.push_back(form_to_json(f));
  }
  if (!ctx.text) emit(out);
  return 0;
}

int cmd_phi(const Context& ctx, int d) {
  const auto phi = phi_d(ctx.A, d);
  if (ctx.text) std::cout << iso_to_text(phi) << "\n";
  else emit(iso_to_json(phi));
  return 0;
}

int cmd_filtration(const Context& ctx) {
  const auto& F = need_prime(ctx);
  const Json j = read_json(std::cin);
  const auto res = with_form(ctx, j, [&](const auto& f) { return filtration(f, ctx.A, F); });
  if (ctx.text) {
    std::cout << "w = " << (res.w ? std::to_string(*res.w) : "-inf") << ", steps = " << res.steps
              << ", witness = " << iso_to_text(res.witness) << "\n";
  } else {
    emit(filtration_to_json(res));
  }
  return 0;
}

int cmd_congruent(const Context& ctx) {
  const auto& F = need_prime(ctx);
  const Json j1 = read_json(std::cin), j2 = read_json(std::cin);
  // Mixed A/K input is lifted to K.
  const bool frac = form_needs_fractions(j1) || form_needs_fractions(j2);
  const CongruenceResult res = frac ? congruence_check(form_from_json(ctx.K, j1), form_from_json(ctx.K, j2), ctx.A, F)
                                    : congruence_check(form_from_json(ctx.A, j1), form_from_json(ctx.A, j2), ctx.A, F);
  if (ctx.text) {
    std::cout << (res.congruent ? "true" : "false") << " (" << res.reason << ")\n";
  } else {
    emit(Json{{"congruent", res.congruent},
              {"m", res.steps},
              {"reason", res.reason},
              {"phi_d", iso_to_json(phi_bar(ctx.A, F))}});
  }
  return 0;
}

int cmd_verify(const Context& ctx, const std::string& suite) {
  Report report{suite, {}};
  auto append = [&](std::vector<Check> cs) {
    for (auto& c : cs) report.checks.push_back(std::move(c));
  };
  if (suite == "identities" || suite == "all") {
    append(run_identities_suite(*ctx.gen, ctx.prec).checks);
  }
  if (suite == "all") {
    for (int d = 1; d <= 2; ++d) report.checks.push_back(phi_consistency_check(*ctx.gen, d));
  }
  if (suite == "modp" || (suite == "all" && ctx.residue)) append(modp_checks(*ctx.gen, need_prime(ctx), ctx.prec));
  if (ctx.text) {
    for (const auto& c : report.checks)
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.id << ": " << c.anchor << " (" << c.details << ")\n";
    std::cout << (report.pass() ? "PASS" : "FAIL") << "\n";
  } else {
    emit(report_to_json(report));
  }
  return report.pass() ? 0 : kExitMath;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Drinfeld modular forms for Gamma_0(T)", "dmod"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--q", o.q, "field size (odd prime power)");
  app.add_option("--p", o.p, "characteristic");
  app.add_option("--r", o.r, "degree of F_q over F_p");
  app.add_option("--modulus", o.modulus, "defining polynomial of F_q over F_p, e.g. x^2+1");
  app.add_option("--pi", o.pi, "monic irreducible pi != T, e.g. T^2+1");
  app.add_option("--prec", o.prec, "series precision N (terms below u^N)");
  app.add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  std::string gen_name_arg;
  auto* gen = app.add_subcommand("gen", "u-expansion of a named generator (E ET g1 g1T deltaT deltaW h delta uT gd:<d>)");
  gen->add_option("name", gen_name_arg)->required();

  int weight = 0, type = 0;
  auto* decompose = app.add_subcommand("decompose", "decompose a series read from stdin");
  decompose->add_option("--weight", weight)->required();
  decompose->add_option("--type", type);

  auto* series = app.add_subcommand("series", "u-expansion of a form read from stdin");

  auto* vm = app.add_subcommand("vm", "Victor-Miller basis of M_{k,l}");
  vm->add_option("--weight", weight)->required();
  vm->add_option("--type", type);

  int d = 0;
  auto* phi = app.add_subcommand("phi", "isobaric polynomial phi_d of g_d");
  phi->add_option("--d", d)->required()->check(CLI::NonNegativeNumber);

  auto* filt = app.add_subcommand("filtration", "weight filtration of a form read from stdin");
  auto* cong = app.add_subcommand("congruent", "decide congruence of two forms read from stdin");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run the self-check suites");
  verify->add_option("--suite", suite)->check(CLI::IsMember({"identities", "modp", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(make_context(o, 20), gen_name_arg);
    if (*decompose) return cmd_decompose(make_context(o, 100), weight, type);
    if (*series) return cmd_series(make_context(o, 20));
    if (*vm) return cmd_vm(make_context(o, 100), weight, type);
    if (*phi) return cmd_phi(make_context(o, 100), d);
    if (*filt) return cmd_filtration(make_context(o, 100));
    if (*cong) return cmd_congruent(make_context(o, 100));
    if (*verify) return cmd_verify(make_context(o, 100), suite);
  } catch (const Error& e) {
    std::cerr << "dmod: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kExitUsage;
}
