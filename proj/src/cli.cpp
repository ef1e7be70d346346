#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "mgs/construction.hpp"
#include "mgs/formats.hpp"
#include "mgs/quiver_io.hpp"
#include "mgs/search.hpp"
#include "mgs/seeds.hpp"
#include "mgs/surface_io.hpp"

namespace mgs::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A sequence argument is a file when one exists at that path, otherwise literal text.
std::vector<Vertex> sequence_arg(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return parse_sequence(read_file(arg));
  return parse_sequence(arg);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot write '" + path + "'");
  f << text;
}

struct Args {
  std::string input, seq, output, seed_name;
  int max_len = 0;
  int jobs = 1;
  bool trace = false;
};

int cmd_mutate(const Args& a, std::ostream& out) {
  IceQuiver q = parse_quiver(read_file(a.input));
  auto seq = sequence_arg(a.seq);
  emit(serialize_quiver(mutate(q, seq)), a.output, out);
  return Ok;
}

int cmd_check(const Args& a, std::ostream& out) {
  IceQuiver q = parse_quiver(read_file(a.input));
  if (q.n_frozen() == 0) q = framed(q);
  auto t = apply_green_sequence(q, sequence_arg(a.seq));
  if (a.trace)
    for (std::size_t i = 0; i < t.steps.size(); ++i)
      out << "step " << i + 1 << " vertex " << t.steps[i].vertex << " " << to_string(t.steps[i].before) << "\n";
  out << t.verdict.str() << "\n";
  return t.verdict.kind == Verdict::ValidMaximalGreen ? Ok : VerifiedFalse;
}

int cmd_search(const Args& a, std::ostream& out) {
  IceQuiver q = a.seed_name.empty() ? parse_quiver(read_file(a.input)) : seed(a.seed_name);
  SearchOptions opt;
  opt.max_len = a.max_len > 0 ? a.max_len : default_max_len(a.seed_name, q.n_mutable());
  auto r = search_mgs(q, opt);
  if (!r.mgs) {
    out << "NotFoundWithin(" << r.searched_to << ")\n";
    return VerifiedFalse;
  }
  out << sequence_to_string(*r.mgs) << "\n";
  return Ok;
}

int cmd_surface_quiver(const Args& a, std::ostream& out) {
  emit(serialize_quiver(quiver_of(parse_triangulation(read_file(a.input)))), a.output, out);
  return Ok;
}

int cmd_surface_flip(const Args& a, std::ostream& out) {
  auto t = parse_triangulation(read_file(a.input));
  emit(serialize_triangulation(flip(t, sequence_arg(a.seq))), a.output, out);
  return Ok;
}

int cmd_surface_construct(const Args& a, std::ostream& out) {
  auto t = parse_triangulation(read_file(a.input));
  auto tr = t.closed() ? construct_closed(t) : construct_with_boundary(t);
  if (a.trace)
    emit(trace_to_json(tr).dump() + "\n", a.output, out);
  else
    emit(sequence_to_string(tr.full) + "\n" + tr.verdict.str() + "\n", a.output, out);
  return tr.verdict.kind == Verdict::ValidMaximalGreen ? Ok : InternalFailure;
}

int cmd_class_enumerate(const Args& a, std::ostream& out) {
  auto reps = enumerate_class(seed(a.seed_name), 100000, a.jobs);
  if (!a.output.empty()) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& q : reps) j.push_back(quiver_to_json(q));
    emit(j.dump() + "\n", a.output, out);
  }
  out << reps.size() << "\n";
  return Ok;
}

int cmd_class_catalog(const Args& a, std::ostream& out, std::ostream& err) {
  CatalogOptions opt;
  opt.max_len = a.max_len;
  opt.jobs = a.jobs;
  auto cat = build_catalog(a.seed_name, opt);
  emit(catalog_to_json(cat).dump() + "\n", a.output, out);
  err << cat.seed << ": " << cat.members.size() << " members, " << cat.certified() << " certified\n";
  return Ok;
}

int cmd_class_verify(const Args& a, std::ostream& out) {
  auto cat = catalog_from_json(detail::parse_json(read_file(a.input)));
  std::size_t certified = 0;
  for (const auto& m : cat.members) {
    if (!m.mgs) continue;
    if (apply_green_sequence(framed(m.quiver), *m.mgs).verdict.kind != Verdict::ValidMaximalGreen) {
      out << "invalid certificate\n";
      return VerifiedFalse;
    }
    ++certified;
  }
  out << cat.seed << " " << cat.members.size() << " members, " << certified << " verified\n";
  return Ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximal green sequences for quivers and triangulated surfaces", "mgs"};
  app.require_subcommand(1);
  Args a;

  auto* mut = app.add_subcommand("mutate", "Mutate an iceq-v1 quiver along a sequence");
  mut->add_option("-i,--input,input", a.input, "iceq-v1 file")->required();
  mut->add_option("seq", a.seq, "vertex ids, comma separated, or a file")->required();
  mut->add_option("-o,--output", a.output);

  auto* chk = app.add_subcommand("check", "Check a mutation sequence for maximal greenness");
  chk->add_option("-i,--input,input", a.input, "iceq-v1 file (framed automatically when unframed)")->required();
  chk->add_option("seq", a.seq, "vertex ids or a sequence/trace-v1 file")->required();
  chk->add_flag("--trace", a.trace, "print the color of each mutated vertex");

  auto* srch = app.add_subcommand("search", "Breadth-first search for a shortest maximal green sequence");
  srch->add_option("-i,--input,input", a.input, "iceq-v1 file");
  srch->add_option("--seed", a.seed_name, "registered seed instead of a file");
  srch->add_option("--max-len", a.max_len);

  auto* surf = app.add_subcommand("surface", "Tagged triangulations (tagtri-v1)");
  surf->require_subcommand(1);
  auto* sq = surf->add_subcommand("quiver", "Signed adjacency quiver");
  sq->add_option("-i,--input,input", a.input)->required();
  sq->add_option("-o,--output", a.output);
  auto* sf = surf->add_subcommand("flip", "Flip arcs in order");
  sf->add_option("-i,--input,input", a.input)->required();
  sf->add_option("seq", a.seq, "arc ids")->required();
  sf->add_option("-o,--output", a.output);
  auto* sc = surf->add_subcommand("construct", "Maximal green sequence by the staged construction");
  sc->add_option("-i,--input,input", a.input)->required();
  sc->add_flag("--trace", a.trace, "emit trace-v1");
  sc->add_option("-o,--output", a.output);

  auto* cls = app.add_subcommand("class", "Mutation classes of registered seeds");
  cls->require_subcommand(1);
  auto* ce = cls->add_subcommand("enumerate", "Count (and optionally list) the class up to isomorphism");
  ce->add_option("--seed", a.seed_name)->required();
  ce->add_option("-o,--output", a.output);
  ce->add_option("--jobs", a.jobs)->check(CLI::PositiveNumber);
  auto* cc = cls->add_subcommand("catalog", "Certify every class member (catalog-v1)");
  cc->add_option("--seed", a.seed_name)->required();
  cc->add_option("--max-len", a.max_len);
  cc->add_option("--jobs", a.jobs)->check(CLI::PositiveNumber);
  cc->add_option("-o,--output", a.output);
  auto* cv = cls->add_subcommand("verify", "Re-verify every certificate of a catalog-v1 file");
  cv->add_option("-i,--input,input", a.input)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return InputFailure;
  }

  try {
    if (*mut) return cmd_mutate(a, out);
    if (*chk) return cmd_check(a, out);
    if (*srch) {
      if (a.input.empty() == a.seed_name.empty()) throw FormatError("search needs exactly one of input or --seed");
      return cmd_search(a, out);
    }
    if (*sq) return cmd_surface_quiver(a, out);
    if (*sf) return cmd_surface_flip(a, out);
    if (*sc) return cmd_surface_construct(a, out);
    if (*ce) return cmd_class_enumerate(a, out);
    if (*cc) return cmd_class_catalog(a, out, err);
    if (*cv) return cmd_class_verify(a, out);
  } catch (const UnsupportedSurface& e) {
    err << "unsupported surface: " << e.what() << "\n";
    return InputFailure;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return InputFailure;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return InternalFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return InternalFailure;
  }
  return InputFailure;
}

}  // namespace mgs::cli
