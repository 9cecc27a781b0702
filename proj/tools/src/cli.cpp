#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <optional>

#include "rectsurf/disks.hpp"
#include "rectsurf/error.hpp"
#include "rectsurf/io.hpp"
#include "rectsurf/lattice.hpp"
#include "rectsurf/morphism.hpp"
#include "rectsurf/surface.hpp"
#include "rectsurf/transform.hpp"

namespace rectsurf::cli {

namespace {

using nlohmann::json;

Surface load(const std::string& path) { return surface_from_json(read_file(path)); }

Surface load_valid(const std::string& path) {
  Surface s = load(path);
  require_valid(s);
  return s;
}

std::vector<Surface> load_all(const std::vector<std::string>& paths) {
  std::vector<Surface> out;
  for (const auto& p : paths) out.push_back(load_valid(p));
  return out;
}

// "x,y" in the surface's coordinates; the rectangle defaults to the first one
// containing the point.
SurfacePoint point_of(const Surface& s, const std::string& text, std::optional<int> rect) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::kMalformedInput, "point must be \"x,y\"");
  const RatPoint p{parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
  if (rect) {
    if (*rect < 0 || *rect >= s.rect_count()) throw Error(ErrorCode::kMalformedInput, "no rectangle " + std::to_string(*rect));
    return {*rect, p};
  }
  for (int r = 0; r < s.rect_count(); ++r) {
    if (s.rects()[static_cast<std::size_t>(r)].contains(p)) return {r, p};
  }
  throw Error(ErrorCode::kInvalidPoint, format_point(p) + " lies in no rectangle");
}

std::string key_text(const CellKey& k) {
  static const char* names[] = {"V", "H", "E", "F"};
  return std::string(names[static_cast<int>(k.kind)]) + "(" + std::to_string(k.i) + "," + std::to_string(k.j) + ")";
}

json surface_json(const Surface& s) { return json::parse(surface_to_json(s, -1)); }

json certificate_json(const CertificateReport& r) {
  json doc;
  doc["passed"] = r.passed;
  doc["sequence_length"] = r.sequence_length;
  doc["tail_start"] = r.tail_start;
  doc["caveat"] = r.caveat;
  json disks = json::array();
  for (const auto& d : r.disk_checks) {
    json c = {{"probe", d.probe}, {"applicable", d.applicable}, {"passed", d.passed}};
    c["from_index"] = d.from_index ? json(*d.from_index) : json(nullptr);
    disks.push_back(c);
  }
  json limits = json::array();
  for (const auto& l : r.limit_checks) {
    limits.push_back({{"probe", l.probe},
                      {"applicable", l.applicable},
                      {"immerses_in_limit", l.immerses_in_limit},
                      {"passed", l.passed}});
  }
  doc["disk_checks"] = disks;
  doc["limit_checks"] = limits;
  return doc;
}

// Probe pool: surface files, or "subbasis:N,D" for an enumerated pool.
std::vector<Surface> probe_pool(const std::vector<std::string>& specs) {
  std::vector<Surface> out;
  for (const auto& spec : specs) {
    if (spec.rfind("subbasis:", 0) == 0) {
      const std::string args = spec.substr(9);
      const auto comma = args.find(',');
      if (comma == std::string::npos) throw Error(ErrorCode::kMalformedInput, "pool spec is subbasis:N,D");
      int n = 0, d = 0;
      try {
        n = std::stoi(args.substr(0, comma));
        d = std::stoi(args.substr(comma + 1));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kMalformedInput, "pool spec is subbasis:N,D");
      }
      for (Surface& s : enumerate_subbasis(n, d)) out.push_back(std::move(s));
    } else {
      out.push_back(load_valid(spec));
    }
  }
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact calculus of pointed translation surfaces presented as rectangular unions"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string file, file_b, point, spec, out_path;
  std::vector<std::string> files, probes;
  std::optional<int> rect;
  bool direct = false, inverse = false, open = false;
  int max_rects = 1, denom = 1, window = 1;

  auto* validate_cmd = app.add_subcommand("validate", "Check the surface invariants");
  validate_cmd->add_option("file", file, "Surface document")->required();
  validate_cmd->callback([&] {
    action = [&] {
      const ValidationReport r = validate(load(file));
      out << r.summary() << "\n";
      return r.ok() ? kOk : kDomainError;
    };
  });

  auto* dev_cmd = app.add_subcommand("dev", "Developed image of a point");
  dev_cmd->add_option("file", file)->required();
  dev_cmd->add_option("point", point, "x,y")->required();
  dev_cmd->add_option("--rect", rect, "Rectangle holding the point");
  dev_cmd->callback([&] {
    action = [&] {
      const Surface s = load_valid(file);
      const SurfacePoint p = point_of(s, point, rect);
      if (anchor_class(s.complex(), p) < 0) throw Error(ErrorCode::kInvalidPoint, "point outside its rectangle");
      const RatPoint d = dev(s, p) - base_dev(s);
      out << format_rational(d.x) << " " << format_rational(d.y) << "\n";
      return kOk;
    };
  });

  auto* chi_cmd = app.add_subcommand("chi", "Euler characteristic");
  chi_cmd->add_option("file", file)->required();
  chi_cmd->callback([&] {
    action = [&] {
      out << euler_characteristic(load_valid(file)) << "\n";
      return kOk;
    };
  });

  auto* classify_cmd = app.add_subcommand("classify", "Disk, punctured disk or neither");
  classify_cmd->add_option("file", file)->required();
  classify_cmd->callback([&] {
    action = [&] {
      out << to_string(classify(load_valid(file))) << "\n";
      return kOk;
    };
  });

  auto* imm_cmd = app.add_subcommand("immersion", "The immersion A -> B, if any");
  imm_cmd->add_option("a", file)->required();
  imm_cmd->add_option("b", file_b)->required();
  imm_cmd->callback([&] {
    action = [&] {
      const ImmersionResult r = find_immersion(load_valid(file), load_valid(file_b));
      if (!r) {
        out << "none\n";
        out << "stopped: " << key_text(r.failure.from) << " -> " << key_text(r.failure.toward) << ": "
            << r.failure.reason << "\n";
        return kOk;
      }
      const ImmersionMap& m = *r.map;
      for (int c = 0; c < m.source_complex().class_count(); ++c) {
        if (m.image(c) < 0) continue;
        out << c << " " << key_text(m.source_complex().key(c)) << " -> " << m.image(c) << "\n";
      }
      out << "embedding: " << (m.injective() ? "true" : "false") << "\n";
      return kOk;
    };
  });

  auto* fuse_cmd = app.add_subcommand("fuse", "Least upper bound");
  fuse_cmd->add_option("files", files)->required();
  fuse_cmd->callback([&] {
    action = [&] {
      out << surface_to_json(fuse(load_all(files)).surface) << "\n";
      return kOk;
    };
  });

  auto* core_cmd = app.add_subcommand("core", "Greatest lower bound");
  core_cmd->add_option("files", files)->required();
  core_cmd->callback([&] {
    action = [&] {
      const auto c = core(load_all(files));
      out << (c ? surface_to_json(*c) : std::string("empty")) << "\n";
      return kOk;
    };
  });

  auto* er_cmd = app.add_subcommand("er", "Embedding radius at a point");
  er_cmd->add_option("file", file)->required();
  er_cmd->add_option("point", point, "x,y")->required();
  er_cmd->add_option("--rect", rect);
  er_cmd->callback([&] {
    action = [&] {
      const Surface s = load_valid(file);
      out << embedding_radius(s, point_of(s, point, rect)).to_string() << "\n";
      return kOk;
    };
  });

  auto* rebase_cmd = app.add_subcommand("rebase", "Move the basepoint");
  rebase_cmd->add_option("file", file)->required();
  rebase_cmd->add_option("point", point, "x,y")->required();
  rebase_cmd->add_option("--rect", rect);
  rebase_cmd->callback([&] {
    action = [&] {
      const Surface s = load_valid(file);
      out << surface_to_json(rebase(s, point_of(s, point, rect)).first) << "\n";
      return kOk;
    };
  });

  auto* act_cmd = app.add_subcommand("act", "Apply an axis-preserving linear map");
  act_cmd->add_option("file", file)->required();
  act_cmd->add_option("matrix", spec, "a,b,c,d or perm:dx,dy")->required();
  act_cmd->callback([&] {
    action = [&] {
      const AxisAffine h = parse_axis_affine(spec);
      out << surface_to_json(act(h, load_valid(file))) << "\n";
      return kOk;
    };
  });

  auto* disks_cmd = app.add_subcommand("disks", "Disks bounded by a rectilinear loop");
  disks_cmd->add_option("loop", file, "Loop document")->required();
  disks_cmd->callback([&] {
    action = [&] {
      json list = json::array();
      for (const Surface& d : disks_bounded_by(loop_from_json(read_file(file)))) list.push_back(surface_json(d));
      out << list.dump(2) << "\n";
      return kOk;
    };
  });

  auto* sd_cmd = app.add_subcommand("smallest-disk", "Fill the holes of a sub-union");
  sd_cmd->add_option("file", file)->required();
  sd_cmd->add_option("sub", file_b, "Sub-union in the same coordinates")->required();
  sd_cmd->add_flag("--open", open, "Treat the sub-union as open");
  sd_cmd->callback([&] {
    action = [&] {
      const Surface s = load_valid(file);
      const Surface k = load(file_b);
      out << surface_to_json(open || k.is_open() ? smallest_open_disk(s, k) : smallest_closed_disk(s, k)) << "\n";
      return kOk;
    };
  });

  auto* images_cmd = app.add_subcommand("images", "Immersed images up to isomorphism");
  images_cmd->add_option("file", file)->required();
  images_cmd->callback([&] {
    action = [&] {
      json list = json::array();
      for (const Surface& s : immersed_images(load_valid(file))) list.push_back(surface_json(s));
      out << list.dump(2) << "\n";
      return kOk;
    };
  });

  auto* limit_cmd = app.add_subcommand("limit", "Direct or inverse limit of a chain with a certificate");
  auto* dir_flag = limit_cmd->add_flag("--direct", direct);
  auto* inv_flag = limit_cmd->add_flag("--inverse", inverse);
  dir_flag->excludes(inv_flag);
  limit_cmd->add_option("files", files)->required();
  limit_cmd->add_option("--probes", probes, "Surface files or subbasis:N,D");
  limit_cmd->callback([&] {
    action = [&] {
      if (!direct && !inverse) throw Error(ErrorCode::kMalformedInput, "pass --direct or --inverse");
      const std::vector<Surface> chain = load_all(files);
      const std::vector<Surface> pool = probe_pool(probes);
      const LimitResult r = direct ? direct_limit(chain, pool) : inverse_limit(chain, pool);
      json doc;
      doc["limit"] = r.limit ? surface_json(*r.limit) : json("empty");
      doc["certificate"] = certificate_json(r.certificate);
      out << doc.dump(2) << "\n";
      return r.certificate.passed ? kOk : kDomainError;
    };
  });

  auto* enum_cmd = app.add_subcommand("enumerate", "Stream the subbasis, one document per line");
  enum_cmd->add_option("--max-rects", max_rects)->required()->check(CLI::PositiveNumber);
  enum_cmd->add_option("--denom", denom)->required()->check(CLI::PositiveNumber);
  enum_cmd->add_option("--window", window, "Half-width of the coordinate window")->check(CLI::PositiveNumber);
  enum_cmd->callback([&] {
    action = [&] {
      SubbasisStream stream(max_rects, denom, window);
      while (auto s = stream.next()) out << surface_to_json(*s, -1) << "\n" << std::flush;
      return kOk;
    };
  });

  auto* render_cmd = app.add_subcommand("render", "SVG of the developed image");
  render_cmd->add_option("file", file)->required();
  render_cmd->add_option("out", out_path, "Output .svg")->required();
  render_cmd->callback([&] {
    action = [&] {
      const std::string svg = render_svg(load_valid(file));
      std::ofstream f(out_path);
      if (!f) throw Error(ErrorCode::kMalformedInput, "cannot write " + out_path);
      f << svg;
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kMalformed;
  }
  try {
    return action ? action() : kMalformed;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.code() == ErrorCode::kMalformedInput ? kMalformed : kDomainError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"rectsurf"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace rectsurf::cli
