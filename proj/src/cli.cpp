#include "bfto/cli.hpp"

#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "bfto/diag_part.hpp"
#include "bfto/diag_perm.hpp"
#include "bfto/error.hpp"
#include "bfto/fraenkel.hpp"
#include "bfto/injection.hpp"
#include "bfto/oracles.hpp"

namespace bfto {

namespace {

struct Options {
  std::size_t n = 2;
  std::size_t m = 4;
  std::uint64_t k = 1;
  std::size_t steps = 10;
  std::string mode = "strict";
  std::size_t seeds = 64;
  std::string oracle;
  std::string json_path;
  std::size_t atoms = 6;
  std::string support = "{0}";
  std::string perm;
  std::size_t upto = 10;
};

void write_json(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::BadParameters, "cannot open " + path + " for writing");
  file << text;
  if (!file) throw Error(ErrorCode::BadParameters, "failed writing " + path);
}

void print_certificate_summary(const Certificate& cert, std::ostream& out) {
  out << "kind: " << to_string(cert.kind) << "\n";
  out << "outputs: " << cert.outputs.size() << " (constructed " << cert.steps << ")\n";
  out << "all_distinct: " << (cert.all_distinct ? "true" : "false") << "\n";
  if (cert.violation) {
    out << "violation: output " << cert.violation->output << " has " << cert.violation->witnesses.size()
        << " preimages:";
    for (const auto& w : cert.violation->witnesses) out << " " << w;
    out << "\n";
  }
  if (!cert.note.empty()) out << "note: " << cert.note << "\n";
}

int cmd_inject(const Options& o, std::ostream& out) {
  const Tableau tableau(o.n, o.m);
  const FinPerm s = parse_cycles(o.perm);
  const Encoded enc = encode(s, tableau);
  out << to_cycles(enc.image) << "\n";
  out << "level: " << enc.trace.level << "\n";
  out << "swap: " << to_cycles(enc.trace.swap) << "\n";
  out << "relocated: " << to_cycles(enc.trace.relocated) << "\n";
  out << "marker: " << to_cycles(enc.trace.marker) << "\n";
  Json j;
  j["n"] = o.n;
  j["m"] = o.m;
  j["input"] = to_cycles(s);
  j["image"] = to_cycles(enc.image);
  j["level"] = enc.trace.level;
  j["swap"] = to_cycles(enc.trace.swap);
  j["relocated"] = to_cycles(enc.trace.relocated);
  j["marker"] = to_cycles(enc.trace.marker);
  write_json(o.json_path, j.dump(2) + "\n");
  return 0;
}

int cmd_decode(const Options& o, std::ostream& out) {
  const Tableau tableau(o.n, o.m);
  const FinPerm t = parse_cycles(o.perm);
  const FinPerm s = decode(t, tableau);
  out << to_cycles(s) << "\n";
  Json j;
  j["n"] = o.n;
  j["m"] = o.m;
  j["input"] = to_cycles(t);
  j["decoded"] = to_cycles(s);
  write_json(o.json_path, j.dump(2) + "\n");
  return 0;
}

int cmd_diag_perm(const Options& o, std::ostream& out) {
  const PermMode mode = o.mode == "strict" ? PermMode::Strict : PermMode::Opportunistic;
  auto oracle = make_perm_oracle(o.oracle.empty() ? "truncate" : o.oracle, o.n);
  const Certificate cert = run_perm(o.n, o.k, std::move(oracle.fn), o.steps, mode, o.seeds);
  if (cert.l0) out << "l0: " << *cert.l0 << ", m0: " << *cert.m0 << "\n";
  print_certificate_summary(cert, out);
  write_json(o.json_path, dump_certificate(cert));
  return cert.kind == CertificateKind::Stuck ? 1 : 0;
}

int cmd_diag_part(const Options& o, std::ostream& out) {
  auto oracle = make_part_oracle(o.oracle.empty() ? "min-block" : o.oracle, o.k, o.n);
  if (oracle.k != o.k) out << "declared bound after support adapter: " << oracle.k << "\n";
  const Certificate cert = run_part(oracle.k, std::move(oracle.fn), o.steps);
  print_certificate_summary(cert, out);
  write_json(o.json_path, dump_certificate(cert));
  return cert.kind == CertificateKind::Stuck ? 1 : 0;
}

int cmd_fraenkel(const Options& o, std::ostream& out) {
  const SupportConfig cfg{parse_atom_set(o.support), o.n, o.atoms};
  const ScanReport report = scan(cfg);
  out << "pairs: " << report.pairs << "\n";
  out << "missing_moved: " << report.missing_moved << "\n";
  out << "extra_outside: " << report.extra_outside << "\n";
  out << "forced_fixed_point: " << report.forced_fixed_point << "\n";
  out << "escapes: " << report.escapes << "\n";
  write_json(o.json_path, report.to_json().dump(2) + "\n");
  return report.escapes == 0 && report.unverified == 0 ? 0 : 1;
}

int cmd_bell(const Options& o, std::ostream& out) {
  Json values = Json::array();
  for (std::size_t l = 0; l <= o.upto; ++l) values.push_back(bell(l));
  for (std::size_t l = 0; l <= o.upto; ++l) out << (l ? " " : "") << values[l].get<std::uint64_t>();
  out << "\n";
  write_json(o.json_path, Json{{"upto", o.upto}, {"bell", values}}.dump(2) + "\n");
  return 0;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  const BoundParams p = compute_bounds(o.n, o.k);
  out << "l0: " << p.l0 << ", m0: " << p.m0 << " (window " << p.window << ")\n";
  write_json(o.json_path,
             Json{{"n", p.n}, {"k", p.k}, {"l0", p.l0}, {"m0", p.m0}, {"window", p.window}}.dump(2) + "\n");
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diagonalization engines, the S_n -> S_m injection and the support scan", "bfto"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_json = [&](CLI::App* sub) {
    sub->add_option("--json", o.json_path, "Write the machine-readable record to PATH");
  };

  auto* inject = app.add_subcommand("inject", "Encode a permutation of S_n into S_m");
  inject->add_option("--n", o.n, "Support size of the input")->required();
  inject->add_option("--m", o.m, "Support size of the image (m >= n + 2)")->required();
  inject->add_option("--perm", o.perm, "Input in cycle notation, e.g. \"(20;21)\"")->required();
  add_json(inject);

  auto* dec = app.add_subcommand("decode", "Recover s from an encoded permutation");
  dec->add_option("--n", o.n, "Support size of the preimage")->required();
  dec->add_option("--m", o.m, "Support size of the image")->required();
  dec->add_option("--perm", o.perm, "Encoded permutation in cycle notation")->required();
  add_json(dec);

  auto* dperm = app.add_subcommand("diag-perm", "Run the permutation engine against an oracle into S_{<=n}");
  dperm->add_option("--n", o.n, "Codomain bound n")->capture_default_str();
  dperm->add_option("--k", o.k, "Claimed fiber bound")->capture_default_str()->check(CLI::PositiveNumber);
  dperm->add_option("--steps", o.steps, "Constructed steps to run")->capture_default_str()->check(CLI::PositiveNumber);
  dperm->add_option("--mode", o.mode, "strict | opportunistic")
      ->capture_default_str()
      ->check(CLI::IsMember({"strict", "opportunistic"}));
  dperm->add_option("--seeds", o.seeds, "Seed count in opportunistic mode")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  dperm->add_option("--oracle", o.oracle, "truncate | pool:P (default truncate)");
  add_json(dperm);

  auto* dpart = app.add_subcommand("diag-part", "Run the partition engine against an oracle into fin(A)");
  dpart->add_option("--k", o.k, "Claimed fiber bound")->capture_default_str()->check(CLI::PositiveNumber);
  dpart->add_option("--steps", o.steps, "Constructed steps to run")->capture_default_str()->check(CLI::PositiveNumber);
  dpart->add_option("--oracle", o.oracle, "min-block | pool:P | mov-block-cycle (default min-block)");
  dpart->add_option("--n", o.n, "Codomain bound for mov-block-cycle")->capture_default_str();
  add_json(dpart);

  auto* fr = app.add_subcommand("fraenkel", "Classify every (s, t) pair over a small carrier");
  fr->add_option("--atoms", o.atoms, "Carrier size (at most 8)")->capture_default_str();
  fr->add_option("--support", o.support, "Support E, e.g. \"{0}\"")->capture_default_str();
  fr->add_option("--n", o.n, "s in S_n, t in S_{n+1}")->capture_default_str();
  add_json(fr);

  auto* bl = app.add_subcommand("bell", "Print Bell numbers B_0..B_upto");
  bl->add_option("--upto", o.upto, "Largest index (at most 25)")->capture_default_str();
  add_json(bl);

  auto* bd = app.add_subcommand("bounds", "Compute l0 and m0 for the permutation engine");
  bd->add_option("--n", o.n, "Codomain bound n")->capture_default_str();
  bd->add_option("--k", o.k, "Claimed fiber bound")->capture_default_str()->check(CLI::PositiveNumber);
  add_json(bd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    // --help on the app or a subcommand; CLI11 picks the right help text.
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*inject) return cmd_inject(o, out);
    if (*dec) return cmd_decode(o, out);
    if (*dperm) return cmd_diag_perm(o, out);
    if (*dpart) return cmd_diag_part(o, out);
    if (*fr) return cmd_fraenkel(o, out);
    if (*bl) return cmd_bell(o, out);
    if (*bd) return cmd_bounds(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace bfto
