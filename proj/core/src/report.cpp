#include "spaceform/report.hpp"

#include <sstream>

#include "json.hpp"

namespace spaceform {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json json_int(const Int& x) { return x.get_str(); }

ordered_json json_rat_vec(const RatVec& v) {
  ordered_json a = ordered_json::array();
  for (const Rat& q : v) a.push_back(rat_to_string(q));
  return a;
}

ordered_json json_int_vec(const IntVec& v) {
  ordered_json a = ordered_json::array();
  for (const Int& x : v) a.push_back(x.get_str());
  return a;
}

ordered_json json_basis(const LatticeBasis& b) {
  ordered_json a = ordered_json::array();
  for (const IntVec& v : b.vectors) a.push_back(json_int_vec(v));
  return a;
}

ordered_json json_validation(const ValidationReport& v) {
  ordered_json j;
  j["all_pass"] = v.all_pass();
  ordered_json checks = ordered_json::array();
  for (const CheckResult& c : v.checks) {
    ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    if (!c.witness.empty()) e["witness"] = c.witness;
    checks.push_back(e);
  }
  j["checks"] = checks;
  return j;
}

ordered_json json_h1(const HomologyH1& h) {
  ordered_json j;
  j["free_rank"] = h.free_rank;
  j["torsion"] = json_int_vec(h.torsion_divisors);
  return j;
}

ordered_json json_certificate(const TorusActionCertificate& cert) {
  ordered_json j;
  j["k"] = cert.k;
  j["kernel_basis"] = json_basis(cert.splitting.kernel);
  j["complement_basis"] = json_basis(cert.splitting.complement);
  j["image_index"] = json_int(cert.splitting.image_index);
  ordered_json lambda;
  for (std::size_t i = 0; i < cert.k; ++i) {
    lambda["b" + std::to_string(i + 1)] = json_rat_vec(cert.lambda.on_complement.col(i));
  }
  for (std::size_t i = 0; i < cert.lambda.on_holonomy.size(); ++i) {
    lambda["g" + std::to_string(i + 1)] = json_rat_vec(cert.lambda.on_holonomy[i]);
  }
  j["lambda"] = lambda;
  j["ell"] = json_int(cert.ell);
  ordered_json tb = ordered_json::array();
  for (const AffineElement& g : cert.tilde_B) tb.push_back(json_rat_vec(g.translation));
  j["tilde_B"] = tb;
  ordered_json checks;
  checks["rho_homomorphism"] = cert.checks.rho_homomorphism;
  checks["rho_faithful_sample"] = cert.checks.rho_faithful_sample;
  checks["tilde_B_translations"] = cert.checks.tilde_B_translations;
  checks["centralizer"] = cert.checks.centralizer;
  checks["cocompact"] = cert.checks.cocompact;
  checks["homological_injectivity"] = cert.checks.homological_injectivity;
  j["checks"] = checks;
  if (!cert.first_failure.empty()) j["first_failure"] = cert.first_failure;
  return j;
}

ordered_json json_hcc(const HccVerdict& v) {
  ordered_json j;
  ordered_json per = ordered_json::array();
  for (const DegreeCheck& c : v.per_degree) {
    ordered_json e;
    e["j"] = c.j;
    e["binom"] = json_int(c.binom);
    e["betti"] = json_int(c.betti_j);
    e["pass"] = c.pass;
    per.push_back(e);
  }
  j["per_degree"] = per;
  ordered_json sum;
  sum["bound"] = json_int(v.sum_bound.bound);
  sum["total"] = json_int(v.sum_bound.total);
  sum["pass"] = v.sum_bound.pass;
  j["sum_bound"] = sum;
  j["homologically_injective"] = to_string(v.homologically_injective);
  j["maximal"] = v.maximal;
  return j;
}

ordered_json json_splitting(const SplittingSubgroup& s) {
  ordered_json j;
  j["index"] = json_int(s.index);
  j["generator_count"] = s.generators.size();
  ordered_json words = ordered_json::array();
  for (const std::string& w : s.generator_words) words.push_back(w);
  j["generators"] = words;
  j["direct_product_verified"] = s.verified_direct_product;
  return j;
}

ordered_json build_json(const FullReport& rep, ReportSection section) {
  ordered_json j;
  j["group_name"] = rep.group_name;
  j["dim"] = rep.dim;

  const bool want_validation = section == ReportSection::validation || section == ReportSection::full;
  const bool want_invariants = section == ReportSection::invariants || section == ReportSection::full;
  const bool want_cert = section == ReportSection::certificate || section == ReportSection::full;
  const bool want_hcc = section == ReportSection::hcc || section == ReportSection::full;

  if (want_validation || !rep.validation.all_pass()) {
    j["validation"] = json_validation(rep.validation);
  }
  if (want_invariants && rep.homology) {
    j["h1"] = json_h1(*rep.homology);
    j["betti"] = json_int_vec(rep.betti_vector->values);
    j["center_rank"] = *rep.center_rank_value;
    j["k"] = *rep.k;
  }
  if ((want_cert || want_hcc) && rep.k && !(want_invariants && rep.homology)) {
    j["k"] = *rep.k;
  }
  if (want_cert && rep.action) {
    if (rep.action->status == TorusActionResult::Status::rank_zero) {
      j["certificate"] = "rank-zero";
    } else {
      j["certificate"] = json_certificate(*rep.action->certificate);
    }
  }
  if (want_hcc && rep.hcc) {
    j["hcc"] = json_hcc(*rep.hcc);
  }
  if (section == ReportSection::full && rep.splitting) {
    j["splitting_subgroup"] = json_splitting(*rep.splitting);
  }
  if (section == ReportSection::full && !rep.consistency.empty()) {
    ordered_json cons = ordered_json::array();
    for (const CheckResult& c : rep.consistency) {
      ordered_json e;
      e["name"] = c.name;
      e["pass"] = c.pass;
      if (!c.witness.empty()) e["witness"] = c.witness;
      cons.push_back(e);
    }
    j["consistency"] = cons;
  }
  j["overall"] = section_pass(rep, section);
  return j;
}

void text_validation(std::ostream& os, const ValidationReport& v) {
  os << "validation: " << (v.all_pass() ? "pass" : "FAIL") << "\n";
  for (const CheckResult& c : v.checks) {
    os << "  " << c.name << ": " << (c.pass ? "pass" : "FAIL");
    if (!c.witness.empty()) os << "  [" << c.witness << "]";
    os << "\n";
  }
}

void text_certificate(std::ostream& os, const TorusActionCertificate& cert) {
  os << "certificate (k = " << cert.k << "):\n";
  os << "  kernel basis:";
  for (const IntVec& v : cert.splitting.kernel.vectors) os << " " << to_string(v);
  os << "\n  complement basis:";
  for (const IntVec& v : cert.splitting.complement.vectors) os << " " << to_string(v);
  os << "\n  image index: " << cert.splitting.image_index.get_str();
  os << "\n  lambda:";
  for (std::size_t i = 0; i < cert.k; ++i) {
    os << " b" << i + 1 << "=" << to_string(cert.lambda.on_complement.col(i));
  }
  for (std::size_t i = 0; i < cert.lambda.on_holonomy.size(); ++i) {
    os << " g" << i + 1 << "=" << to_string(cert.lambda.on_holonomy[i]);
  }
  os << "\n  ell: " << cert.ell.get_str();
  os << "\n  tilde B:";
  for (const AffineElement& t : cert.tilde_B) os << " " << to_string(t.translation);
  os << "\n  checks:";
  auto flag = [&](const char* name, bool ok) { os << " " << name << "=" << (ok ? "pass" : "FAIL"); };
  flag("rho_homomorphism", cert.checks.rho_homomorphism);
  flag("rho_faithful_sample", cert.checks.rho_faithful_sample);
  flag("tilde_B_translations", cert.checks.tilde_B_translations);
  flag("centralizer", cert.checks.centralizer);
  flag("cocompact", cert.checks.cocompact);
  flag("homological_injectivity", cert.checks.homological_injectivity);
  os << "\n";
}

void text_hcc(std::ostream& os, const HccVerdict& v) {
  os << "hcc (k = " << v.k << "): " << (v.overall() ? "pass" : "FAIL") << "\n";
  for (const DegreeCheck& c : v.per_degree) {
    os << "  j=" << c.j << ": C(" << v.k << "," << c.j << ")=" << c.binom.get_str()
       << " <= b_" << c.j << "=" << c.betti_j.get_str() << " " << (c.pass ? "pass" : "FAIL")
       << "\n";
  }
  os << "  sum: 2^" << v.k << "=" << v.sum_bound.bound.get_str()
     << " <= " << v.sum_bound.total.get_str() << " " << (v.sum_bound.pass ? "pass" : "FAIL")
     << "\n";
  os << "  homologically injective: " << to_string(v.homologically_injective) << "\n";
  os << "  maximal: " << (v.maximal ? "yes" : "NO") << "\n";
}

}  // namespace

std::string report_text(const FullReport& rep, ReportSection section) {
  std::ostringstream os;
  os << "group: " << rep.group_name << " (dim " << rep.dim << ")\n";

  const bool full = section == ReportSection::full;
  if (section == ReportSection::validation || full || !rep.validation.all_pass()) {
    text_validation(os, rep.validation);
  }
  if (!rep.validation.all_pass()) {
    os << "overall: FAIL\n";
    return os.str();
  }
  if ((section == ReportSection::invariants || full) && rep.homology) {
    os << "h1: " << rep.homology->to_string() << "\n";
    os << "betti: " << rep.betti_vector->to_string() << "\n";
    os << "center_rank: " << *rep.center_rank_value << "\n";
    os << "k: " << *rep.k << "\n";
  }
  if ((section == ReportSection::certificate || full) && rep.action) {
    if (rep.action->status == TorusActionResult::Status::rank_zero) {
      os << "certificate: rank-zero (no torus factor; trivial bound applies)\n";
    } else {
      text_certificate(os, *rep.action->certificate);
    }
  }
  if ((section == ReportSection::hcc || full) && rep.hcc) {
    text_hcc(os, *rep.hcc);
  }
  if (full && rep.splitting) {
    os << "splitting subgroup: index " << rep.splitting->index.get_str() << ", "
       << rep.splitting->generators.size() << " generators, direct product "
       << (rep.splitting->verified_direct_product ? "verified" : "NOT VERIFIED") << "\n";
  }
  if (full && !rep.consistency.empty()) {
    for (const CheckResult& c : rep.consistency) {
      os << "consistency " << c.name << ": " << (c.pass ? "pass" : "FAIL");
      if (!c.witness.empty()) os << "  [" << c.witness << "]";
      os << "\n";
    }
  }
  os << "overall: " << (section_pass(rep, section) ? "pass" : "FAIL") << "\n";
  return os.str();
}

std::string report_json(const FullReport& rep, ReportSection section) {
  return build_json(rep, section).dump(2) + "\n";
}

std::string reports_json(const std::vector<FullReport>& reps) {
  ordered_json arr = ordered_json::array();
  for (const FullReport& rep : reps) arr.push_back(build_json(rep, ReportSection::full));
  return arr.dump(2) + "\n";
}

bool section_pass(const FullReport& rep, ReportSection section) {
  if (!rep.validation.all_pass()) return false;
  switch (section) {
    case ReportSection::validation:
      return true;
    case ReportSection::invariants:
      return true;
    case ReportSection::certificate:
      return !rep.action || rep.action->all_checks_pass();
    case ReportSection::hcc:
      return rep.hcc && rep.hcc->overall();
    case ReportSection::full:
      return rep.all_pass();
  }
  return false;
}

}  // namespace spaceform
