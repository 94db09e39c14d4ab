// toricmirror: command-line front end.
// Exit codes: 0 pass, 1 fail, 2 input error.

#include "toricmirror/skeleton.hpp"
#include "toricmirror/workbench.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace toricmirror;

namespace {

constexpr int kPass = 0, kFail = 1, kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A JSON file, or a named fan such as "projective:2".
FanData fan_arg(const std::string& arg) {
  if (std::filesystem::exists(arg)) return load_fan(arg);
  try {
    return standard_fan(arg);
  } catch (const Error&) {
    throw InputError("no such file or named fan: " + arg);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw InputError("not a rational number: " + s);
  q.canonicalize();
  return q;
}

RatVector parse_gamma(const std::string& s, std::size_t n) {
  if (s.empty()) return RatVector(n);
  RatVector g;
  for (const auto& x : split(s, ',')) g.push_back(parse_rational(x));
  if (g.size() != n) throw InputError("γ needs " + std::to_string(n) + " entries");
  return g;
}

IntVector parse_lift(const std::string& s, std::size_t n) {
  IntVector v;
  for (const auto& x : split(s, ',')) {
    Integer z;
    if (z.set_str(x, 10) != 0) throw InputError("not an integer: " + x);
    v.push_back(z);
  }
  if (v.size() != n) throw InputError("divisor lift needs " + std::to_string(n) + " entries");
  return v;
}

int emit(const VerificationReport& r, const std::string& out) {
  const std::string text = r.to_json().dump(2);
  if (out.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream f(out);
    if (!f) throw InputError("cannot write " + out);
    f << text << '\n';
    std::cout << r.test << ": " << r.verdict() << '\n';
  }
  return r.pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent-constructible correspondence for toric stacks: fans, skeleta, and mirror checks"};
  app.require_subcommand(1);
  std::size_t jobs = 1;
  std::uint64_t seed = 1;
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for generated corpora");

  std::string fan_path, gamma_text, svg_path, from_text, to_text, classes_text, out_path, gammas_text;
  std::size_t count = 50, gamma_count = 5;
  bool flip = false;

  auto* validate_cmd = app.add_subcommand("validate", "Check fan data");
  validate_cmd->add_option("fan", fan_path)->required();

  auto* export_cmd = app.add_subcommand("export", "Print fan data as JSON");
  export_cmd->add_option("fan", fan_path)->required();

  auto* cox_cmd = app.add_subcommand("cox", "Irrelevant locus and class group");
  cox_cmd->add_option("fan", fan_path)->required();

  auto* skeleton_cmd = app.add_subcommand("skeleton", "Reduced skeleton as JSON");
  skeleton_cmd->add_option("fan", fan_path)->required();
  skeleton_cmd->add_option("--gamma", gamma_text, "Comma-separated rationals, one per ray");
  skeleton_cmd->add_option("--svg", svg_path, "Also write a drawing");

  auto* equiv_cmd = app.add_subcommand("equiv-check", "Simplicial / noncharacteristic / submersive");
  equiv_cmd->add_option("fan", fan_path)->required();

  auto* bside_cmd = app.add_subcommand("bside", "Ext dims between two line bundles");
  bside_cmd->add_option("fan", fan_path)->required();
  bside_cmd->add_option("--from", from_text, "Divisor lift, comma-separated")->required();
  bside_cmd->add_option("--to", to_text, "Divisor lift, comma-separated")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Mirror verifications");
  verify_cmd->require_subcommand(1);
  auto* dim1_cmd = verify_cmd->add_subcommand("dim1", "One-variable dictionary on a random corpus");
  dim1_cmd->add_option("--count", count, "Number of module pairs");
  dim1_cmd->add_flag("--flip-orientation", flip, "Use the reversed arrow convention (negative control)");
  dim1_cmd->add_option("--out", out_path, "Write the report here");
  auto* quotient_cmd = verify_cmd->add_subcommand("quotient", "Generator Hom matrix against line bundles");
  quotient_cmd->add_option("fan", fan_path)->required();
  quotient_cmd->add_option("--classes", classes_text, "Lifts separated by ';', entries by ','")->required();
  quotient_cmd->add_option("--gamma", gamma_text, "Comma-separated rationals, one per ray");
  quotient_cmd->add_option("--out", out_path, "Write the report here");
  auto* gamma_cmd = verify_cmd->add_subcommand("gamma", "Independence of γ");
  gamma_cmd->add_option("fan", fan_path)->required();
  gamma_cmd->add_option("--gammas", gammas_text, "γ values separated by ';' (default: seeded random)");
  gamma_cmd->add_option("--count", gamma_count, "Number of random γ");
  gamma_cmd->add_option("--out", out_path, "Write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (*validate_cmd) {
      FanData fd = fan_arg(fan_path);
      auto report = validate(fd);
      if (report.valid()) {
        std::cout << fd.name << ": valid (n = " << fd.n << ", d = " << fd.d << ", " << fd.strata.size()
                  << " strata)\n";
        return kPass;
      }
      std::cout << fd.name << ": invalid\n" << report.to_string();
      return kInputError;
    }
    if (*export_cmd) {
      std::cout << fan_to_json_text(fan_arg(fan_path)) << '\n';
      return kPass;
    }
    if (*cox_cmd) {
      FanData fd = fan_arg(fan_path);
      require_structural(fd);
      auto cs = character_sequence(fd.f);
      std::cout << "Z = " << irrelevant_locus(fd).to_string() << "; Cl = " << cs.quotient().to_string() << '\n';
      std::cout << "quotient torus rank = " << cs.quotient().rank << '\n';
      return kPass;
    }
    if (*skeleton_cmd) {
      FanData fd = fan_arg(fan_path);
      RatVector gamma = parse_gamma(gamma_text, fd.n);
      std::cout << skeleton_to_json(reduce(fd, gamma)) << '\n';
      if (!svg_path.empty()) {
        std::ofstream f(svg_path);
        if (!f) throw InputError("cannot write " + svg_path);
        f << emit_svg(fd, gamma);
      }
      return kPass;
    }
    if (*equiv_cmd) {
      FanData fd = fan_arg(fan_path);
      auto r = check_equivalence(fd);
      std::cout << r.to_string() << '\n';
      return r.agree() ? kPass : kFail;
    }
    if (*bside_cmd) {
      FanData fd = fan_arg(fan_path);
      auto t = hom_dims(fd, parse_lift(from_text, fd.n), parse_lift(to_text, fd.n));
      std::cout << "Ext dims " << t.to_string() << '\n';
      return kPass;
    }
    if (*dim1_cmd) {
      Dim1Options opts;
      opts.seed = seed;
      opts.count = count;
      opts.jobs = jobs;
      opts.orientation = flip ? Orientation::Flipped : Orientation::Standard;
      return emit(verify_dim1(opts), out_path);
    }
    if (*quotient_cmd) {
      FanData fd = fan_arg(fan_path);
      std::vector<IntVector> classes;
      for (const auto& c : split(classes_text, ';')) classes.push_back(parse_lift(c, fd.n));
      QuotientOptions opts;
      if (!gamma_text.empty()) opts.gamma = parse_gamma(gamma_text, fd.n);
      return emit(verify_quotient(fd, classes, opts), out_path);
    }
    if (*gamma_cmd) {
      FanData fd = fan_arg(fan_path);
      std::vector<RatVector> gammas;
      if (!gammas_text.empty()) {
        for (const auto& g : split(gammas_text, ';')) gammas.push_back(parse_gamma(g, fd.n));
      } else {
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < gamma_count; ++i) gammas.push_back(random_gamma(rng, fd.n));
      }
      GammaOptions opts;
      opts.jobs = jobs;
      return emit(verify_gamma(fd, gammas, opts), out_path);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
