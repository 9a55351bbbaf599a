#include "torcal/serialize.hpp"

#include "json.hpp"

namespace torcal::serialize {

using json = nlohmann::ordered_json;
using gralg::NormalForm;
using gralg::Summand;
using gralg::SummandKind;

namespace {

const char* kind_name(SummandKind k) {
  switch (k) {
    case SummandKind::Free: return "free";
    case SummandKind::Torsion: return "torsion";
    case SummandKind::Divisible: return "divisible";
    case SummandKind::Laurent: return "laurent";
  }
  return "?";
}

SummandKind kind_from(const std::string& s) {
  if (s == "free") return SummandKind::Free;
  if (s == "torsion") return SummandKind::Torsion;
  if (s == "divisible") return SummandKind::Divisible;
  if (s == "laurent") return SummandKind::Laurent;
  throw std::invalid_argument("unknown summand kind: " + s);
}

json nf_to_json(const NormalForm& nf) {
  json out;
  out["ring"] = nf.ring.name();
  json sums = json::array();
  for (auto& s : nf.summands) {
    json j;
    j["kind"] = kind_name(s.kind);
    j["shift"] = s.shift;
    if (s.kind == SummandKind::Torsion) j["exp"] = s.torsion_exp;
    if (nf.has_weyl) j["sign"] = s.sign;
    sums.push_back(j);
  }
  out["summands"] = sums;
  return out;
}

std::vector<Summand> summands_from_json(const json& arr) {
  std::vector<Summand> out;
  for (auto& j : arr) {
    Summand s;
    s.kind = kind_from(j.at("kind").get<std::string>());
    s.shift = j.at("shift").get<int>();
    if (j.contains("exp")) s.torsion_exp = j["exp"].get<int>();
    if (j.contains("sign")) s.sign = j["sign"].get<int>();
    out.push_back(s);
  }
  return out;
}

gralg::RingTag tag_from_name(const std::string& s) {
  if (s == "Q") return gralg::RingTag::rationals();
  if (s == "Q[c]") return gralg::RingTag::poly(-2);
  if (s == "Q[d]") return gralg::RingTag::poly(-4);
  if (s == "Q[c,c^-1]") return gralg::RingTag::laurent_ring(-2);
  if (s == "Q[d,d^-1]") return gralg::RingTag::laurent_ring(-4);
  throw std::invalid_argument("unknown ring: " + s);
}

}  // namespace

std::string poset_to_json(const lattice::SubgroupPoset& poset) {
  json out;
  out["group"] = lattice::group_name_str(poset.spec->name);
  out["rank"] = poset.spec->rank;
  if (poset.spec->rank == 1) out["truncation"] = {{"N", poset.truncation.N}};
  json subs = json::array();
  for (auto& s : poset.subgroups) subs.push_back(s.label());
  out["subgroups"] = subs;
  json pairs = json::array();
  for (auto& [k, l] : poset.cotoral_pairs)
    pairs.push_back({poset.subgroups[k].label(), poset.subgroups[l].label()});
  out["cotoral_pairs"] = pairs;
  json weyl;
  weyl["order"] = poset.spec->weyl_order();
  json gens = json::array();
  for (auto& w : poset.spec->weyl_elements) gens.push_back(w);
  weyl["elements"] = gens;
  json perms = json::array();
  for (auto& p : poset.weyl.on_subgroups) perms.push_back(p);
  weyl["on_subgroups"] = perms;
  out["weyl"] = weyl;
  return out.dump(2);
}

std::string module_to_json(const diagram::DiagramModule& m) {
  const auto& diag = *m.diag;
  const auto& poset = *diag.poset;
  json out;
  out["group"] = lattice::group_name_str(poset.spec->name);
  out["N"] = poset.truncation.N;
  out["level"] = m.level == diagram::Level::G ? "G" : "N";
  out["window"] = {m.win.lo, m.win.hi};
  json stalks;
  for (std::size_t i = 0; i < diag.flags.size(); ++i) {
    if (diag.flags[i].length() != 0) continue;
    auto nf = gralg::classify(m.values[i]);
    if (!nf) throw std::domain_error("module_to_json: stalk not classifiable");
    stalks[poset.subgroups[diag.flags[i].top()].label()] = nf_to_json(*nf);
  }
  out["stalks"] = stalks;
  return out.dump(2);
}

diagram::ModuleSpec module_spec_from_json(const diagram::RingDiagram& diag,
                                          const std::string& text) {
  const auto& poset = *diag.poset;
  json in = json::parse(text);
  diagram::ModuleSpec spec;
  int torus = poset.torus_index();
  if (in.contains("stalks"))
    for (auto& [label, body] : in["stalks"].items()) {
      int k = -1;
      for (std::size_t i = 0; i < poset.subgroups.size(); ++i)
        if (poset.subgroups[i].label() == label) k = int(i);
      if (k < 0) throw std::invalid_argument("unknown subgroup label: " + label);
      NormalForm nf;
      nf.ring = tag_from_name(body.at("ring").get<std::string>());
      nf.summands = summands_from_json(body.at("summands"));
      if (k == torus)
        spec.t_stalk = nf;
      else
        spec.stalks[k] = nf;
    }
  if (in.contains("flag_overrides"))
    for (auto& [label, body] : in["flag_overrides"].items()) {
      int fi = -1;
      for (std::size_t i = 0; i < diag.flags.size(); ++i)
        if (diag.flag_name(int(i)) == label) fi = int(i);
      if (fi < 0) throw std::invalid_argument("unknown flag label: " + label);
      NormalForm nf;
      nf.ring = tag_from_name(body.at("ring").get<std::string>());
      nf.summands = summands_from_json(body.at("summands"));
      spec.flag_overrides[fi] = nf;
    }
  return spec;
}

std::string qce_report_to_json(const diagram::DiagramModule& m, const diagram::QceReport& rep) {
  json out;
  out["quasi_coherent"] = rep.quasi_coherent;
  out["extended"] = rep.extended;
  out["f_continuous"] = rep.f_continuous;
  json fails = json::array();
  for (auto& f : rep.failures) {
    json j;
    j["flag"] = m.diag->flag_name(f.flag);
    j["kind"] = f.kind;
    if (f.degree) j["degree"] = *f.degree;
    fails.push_back(j);
  }
  out["failures"] = fails;
  return out.dump(2);
}

std::string ext_table_to_tsv(const homalg::ExtTable& table) {
  std::string out = "s\tt\tdim\n";
  for (auto& [st, dim] : table.entries)
    out += std::to_string(st.first) + "\t" + std::to_string(st.second) + "\t" +
           std::to_string(dim) + "\n";
  return out;
}

std::string ext_table_to_json(const homalg::ExtTable& table) {
  json arr = json::array();
  for (auto& [st, dim] : table.entries)
    arr.push_back({{"s", st.first}, {"t", st.second}, {"dim", dim}});
  return json({{"entries", arr}}).dump(2);
}

std::string e2_page_to_json(const adams::E2Page& page, const adams::DegeneracyReport& rep) {
  json out;
  json arr = json::array();
  for (auto& [st, dim] : page.table.entries)
    arr.push_back({{"s", st.first}, {"t", st.second}, {"dim", dim}});
  out["entries"] = arr;
  out["rank"] = page.rank;
  out["collapse_at"] = page.collapse_at;
  json totals;
  for (auto& [line, d] : page.totals) totals[std::to_string(line)] = d;
  out["totals"] = totals;
  json conv;
  for (auto& [line, d] : rep.converged) conv[std::to_string(line)] = d;
  out["converged"] = conv;
  out["ambiguous"] = rep.ambiguous;
  return out.dump(2);
}

std::string ring_tables_to_json(const diagram::RingDiagram& ra, const diagram::RingDiagram& rinv,
                                const diagram::RingDiagram& rtw) {
  json out;
  auto row = [&](const diagram::RingDiagram& d, bool with_group) {
    json r;
    for (std::size_t i = 0; i < d.flags.size(); ++i) {
      std::string v = d.value[i].name();
      if (with_group && d.residual_order[i] > 1) v += "[W]";
      r[d.flag_name(int(i))] = v;
    }
    return r;
  };
  out["Ra"] = row(ra, false);
  out["Rinv"] = row(rinv, false);
  out["Rtw"] = row(rtw, true);
  return out.dump(2);
}

}  // namespace torcal::serialize
