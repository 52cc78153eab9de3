// Command-line surface: validate group files, compute invariants, build
// torus-action certificates, check the binomial/sum bounds, and emit
// batch reports over the built-in catalog.
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "spaceform/catalog.hpp"
#include "spaceform/errors.hpp"
#include "spaceform/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

struct InputOptions {
  std::string file;
  std::string catalog_name;
  std::string format = "text";
};

void add_input_options(CLI::App* sub, InputOptions& in) {
  sub->add_option("input", in.file, "path to a group file");
  sub->add_option("--catalog", in.catalog_name, "name of a built-in catalog entry");
  sub->add_option("--format", in.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

spaceform::catalog::CatalogEntry load_input(const InputOptions& in) {
  if (!in.catalog_name.empty() && !in.file.empty()) {
    throw spaceform::UnknownEntryError("give either a file or --catalog, not both");
  }
  if (!in.catalog_name.empty()) {
    return spaceform::catalog::resolve(in.catalog_name);
  }
  if (in.file.empty()) {
    throw spaceform::UnknownEntryError("no input: give a group file or --catalog <name>");
  }
  std::ifstream f(in.file);
  if (!f) {
    throw spaceform::UnknownEntryError("cannot open '" + in.file + "'");
  }
  std::ostringstream buf;
  buf << f.rdbuf();
  spaceform::catalog::CatalogEntry entry;
  entry.name = std::filesystem::path(in.file).stem().string();
  entry.group = spaceform::parse_group(buf.str());
  return entry;
}

int run_section(const InputOptions& in, spaceform::ReportSection section) {
  spaceform::catalog::CatalogEntry entry = load_input(in);
  spaceform::FullReport rep = spaceform::full_report(entry.group, entry.name);
  if (in.format == "json") {
    std::cout << spaceform::report_json(rep, section);
  } else {
    std::cout << spaceform::report_text(rep, section);
  }
  return spaceform::section_pass(rep, section) ? kExitPass : kExitCheckFailed;
}

int run_report_all(const std::string& format) {
  bool all_ok = true;
  std::vector<std::string> names = spaceform::catalog::list();
  std::vector<spaceform::FullReport> reports;
  for (const std::string& name : names) {
    spaceform::catalog::CatalogEntry entry = spaceform::catalog::get(name);
    reports.push_back(spaceform::full_report(entry.group, name));
    all_ok = all_ok && reports.back().all_pass();
  }
  if (format == "json") {
    std::cout << spaceform::reports_json(reports);
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) std::cout << "\n";
      std::cout << spaceform::report_text(reports[i]);
    }
  }
  return all_ok ? kExitPass : kExitCheckFailed;
}

spaceform::IntMatrix read_bott_file(const std::string& path, std::size_t n) {
  std::ifstream f(path);
  if (!f) throw spaceform::BadMatrixError("cannot open '" + path + "'");
  spaceform::IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      long v;
      if (!(f >> v)) throw spaceform::BadMatrixError("Bott matrix file is truncated");
      a(i, j) = v;
    }
  }
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact invariants, torus-action certificates and "
               "Halperin-Carlsson checks for compact flat manifolds"};
  app.require_subcommand(1);

  InputOptions validate_in, invariants_in, calabi_in, hcc_in, report_in;
  bool report_all = false;

  CLI::App* cmd_validate = app.add_subcommand("validate", "run the Bieberbach validator");
  add_input_options(cmd_validate, validate_in);

  CLI::App* cmd_invariants =
      app.add_subcommand("invariants", "first homology, Betti numbers, center rank");
  add_input_options(cmd_invariants, invariants_in);

  CLI::App* cmd_calabi =
      app.add_subcommand("calabi", "build the torus-action certificate");
  add_input_options(cmd_calabi, calabi_in);

  CLI::App* cmd_hcc =
      app.add_subcommand("hcc", "check the binomial and 2^k homology bounds");
  add_input_options(cmd_hcc, hcc_in);

  CLI::App* cmd_report = app.add_subcommand("report", "full per-group report");
  add_input_options(cmd_report, report_in);
  cmd_report->add_flag("--all", report_all, "report on every catalog entry");

  CLI::App* cmd_catalog = app.add_subcommand("catalog", "built-in example groups");
  CLI::App* cmd_catalog_list = cmd_catalog->add_subcommand("list", "list entry names");
  CLI::App* cmd_catalog_get = cmd_catalog->add_subcommand("get", "print an entry as a group file");
  std::string catalog_get_name;
  cmd_catalog_get->add_option("name", catalog_get_name)->required();
  cmd_catalog->require_subcommand(1);

  CLI::App* cmd_bott =
      app.add_subcommand("bott", "real Bott manifold group from an upper-triangular bit matrix");
  std::string bott_n, bott_bits;
  cmd_bott->add_option("n", bott_n, "dimension")->required();
  cmd_bott->add_option("bits", bott_bits,
                       "row-major upper-triangle bits, or a file with the 0/1 matrix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (cmd_validate->parsed()) {
      return run_section(validate_in, spaceform::ReportSection::validation);
    }
    if (cmd_invariants->parsed()) {
      return run_section(invariants_in, spaceform::ReportSection::invariants);
    }
    if (cmd_calabi->parsed()) {
      return run_section(calabi_in, spaceform::ReportSection::certificate);
    }
    if (cmd_hcc->parsed()) {
      return run_section(hcc_in, spaceform::ReportSection::hcc);
    }
    if (cmd_report->parsed()) {
      if (report_all) return run_report_all(report_in.format);
      return run_section(report_in, spaceform::ReportSection::full);
    }
    if (cmd_catalog->parsed()) {
      if (cmd_catalog_list->parsed()) {
        for (const std::string& name : spaceform::catalog::list()) std::cout << name << "\n";
        return kExitPass;
      }
      if (cmd_catalog_get->parsed()) {
        spaceform::catalog::CatalogEntry entry = spaceform::catalog::resolve(catalog_get_name);
        std::cout << spaceform::format_group(entry.group);
        return kExitPass;
      }
    }
    if (cmd_bott->parsed()) {
      std::size_t n = 0;
      try {
        n = std::stoul(bott_n);
      } catch (const std::logic_error&) {
        throw spaceform::BadMatrixError("bott: dimension '" + bott_n + "' is not a number");
      }
      spaceform::catalog::CatalogEntry entry;
      if (!bott_bits.empty() && std::filesystem::exists(bott_bits)) {
        entry = spaceform::catalog::bott(read_bott_file(bott_bits, n));
      } else {
        entry = spaceform::catalog::bott(n, bott_bits);
      }
      std::cout << "# " << entry.name << "\n" << spaceform::format_group(entry.group);
      return kExitPass;
    }
  } catch (const spaceform::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const spaceform::UnknownEntryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const spaceform::BadMatrixError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const spaceform::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitInputError;
}
