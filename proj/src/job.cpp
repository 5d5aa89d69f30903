#include "torinv/job.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "torinv/flasque.hpp"
#include "torinv/verify.hpp"

namespace torinv {

namespace {

const std::vector<std::string> targets{"torus_report", "group_report", "cohomology",
                                       "flasque_resolution", "certify", "verify"};

// Keys whose values are invariant-factor arrays, rendered as groups in text.
const std::set<std::string> group_keys{"picard_invariant", "brauer_classes", "wa_defect", "sha_T",
                                       "sha_T_cross_check", "sha_S", "invariant_factors", "witness"};

std::string child(const std::string& ptr, const std::string& key)
{
  return ptr + "/" + key;
}

std::string child(const std::string& ptr, std::size_t i)
{
  return ptr + "/" + std::to_string(i);
}

const Json& require(const Json& obj, const std::string& ptr, const std::string& key)
{
  if (!obj.is_object()) throw ValidationError(ptr, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(child(ptr, key), "missing");
  return *it;
}

const Json* optional_field(const Json& obj, const std::string& key)
{
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::string as_string(const Json& v, const std::string& ptr)
{
  if (!v.is_string()) throw ValidationError(ptr, "expected a string");
  return v.get<std::string>();
}

bool as_bool(const Json& v, const std::string& ptr)
{
  if (!v.is_boolean()) throw ValidationError(ptr, "expected true or false");
  return v.get<bool>();
}

long long as_integer(const Json& v, const std::string& ptr)
{
  if (!v.is_number_integer()) throw ValidationError(ptr, "expected an integer");
  return v.get<long long>();
}

const Json& as_array(const Json& v, const std::string& ptr)
{
  if (!v.is_array()) throw ValidationError(ptr, "expected an array");
  return v;
}

std::vector<std::string> string_list(const Json& v, const std::string& ptr)
{
  std::vector<std::string> out;
  as_array(v, ptr);
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_string(v[i], child(ptr, i)));
  return out;
}

bool same_permutation(const Permutation& a, const Permutation& b)
{
  const std::size_t d = std::max(a.degree(), b.degree());
  for (std::size_t i = 0; i < d; ++i)
    if (a(static_cast<int>(i)) != b(static_cast<int>(i))) return false;
  return true;
}

GroupPtr parse_group(const Json& spec, const std::string& ptr)
{
  if (!spec.is_object()) throw ValidationError(ptr, "expected an object");
  if (const Json* perms = optional_field(spec, "permutations")) {
    const std::string p = child(ptr, "permutations");
    auto gens = string_list(*perms, p);
    if (gens.empty()) throw ValidationError(p, "at least one generator is needed");
    std::vector<Permutation> ps;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      try {
        ps.push_back(Permutation::parse(gens[i]));
      } catch (const std::invalid_argument& e) {
        throw ValidationError(child(p, i), e.what());
      }
    }
    return FiniteGroup::from_permutations(std::move(ps));
  }
  if (const Json* table = optional_field(spec, "cayley_table")) {
    const std::string p = child(ptr, "cayley_table");
    as_array(*table, p);
    std::vector<std::vector<int>> t;
    for (std::size_t i = 0; i < table->size(); ++i) {
      const std::string pi = child(p, i);
      as_array((*table)[i], pi);
      std::vector<int> row;
      for (std::size_t j = 0; j < (*table)[i].size(); ++j) {
        row.push_back(static_cast<int>(as_integer((*table)[i][j], child(pi, j))));
      }
      t.push_back(std::move(row));
    }
    try {
      return FiniteGroup::from_cayley_table(std::move(t));
    } catch (const std::invalid_argument& e) {
      throw ValidationError(p, e.what());
    }
  }
  throw ValidationError(ptr, "expected \"permutations\" or \"cayley_table\"");
}

// An element given as an index or, for permutation groups, as a permutation.
int parse_element(const GroupPtr& g, const Json& v, const std::string& ptr)
{
  if (v.is_number_integer()) {
    long long x = v.get<long long>();
    if (x < 0 || x >= static_cast<long long>(g->order())) throw ValidationError(ptr, "element index out of range");
    return static_cast<int>(x);
  }
  if (v.is_string()) {
    if (g->labels().empty()) throw ValidationError(ptr, "permutation given for a table-defined group");
    Permutation p;
    try {
      p = Permutation::parse(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ValidationError(ptr, e.what());
    }
    for (std::size_t x = 0; x < g->order(); ++x)
      if (same_permutation(g->labels()[x], p)) return static_cast<int>(x);
    throw ValidationError(ptr, "permutation is not in the group");
  }
  throw ValidationError(ptr, "expected an element index or a permutation");
}

IntMatrix parse_matrix(const Json& v, std::size_t n, const std::string& ptr)
{
  as_array(v, ptr);
  if (v.size() != n) throw ValidationError(ptr, "expected " + std::to_string(n) + " rows");
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string pi = child(ptr, i);
    as_array(v[i], pi);
    if (v[i].size() != n) throw ValidationError(pi, "expected " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Int(static_cast<long long>(as_integer(v[i][j], child(pi, j))));
  }
  return m;
}

std::size_t parse_count(const std::string& s, const std::string& ptr)
{
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }) || s.size() > 6) {
    throw ValidationError(ptr, "expected a nonnegative integer after ':'");
  }
  return static_cast<std::size_t>(std::stoul(s));
}

LatticePtr parse_lattice(const GroupPtr& g, const Json& spec, const std::string& ptr)
{
  if (!spec.is_object()) throw ValidationError(ptr, "expected an object");
  if (const Json* b = optional_field(spec, "builtin")) {
    const std::string p = child(ptr, "builtin");
    const std::string name = as_string(*b, p);
    if (name == "regular") return std::make_shared<GaloisLattice>(permutation_lattice(Subgroup::trivial(g)));
    if (name == "norm_one") return std::make_shared<GaloisLattice>(norm_one_torus_lattice(g).lattice);
    if (name.rfind("trivial:", 0) == 0) {
      return std::make_shared<GaloisLattice>(trivial_lattice(g, parse_count(name.substr(8), p)));
    }
    if (name.rfind("perm:", 0) == 0) {
      auto classes = subgroup_classes(g);
      std::size_t id = parse_count(name.substr(5), p);
      if (id >= classes.size()) {
        throw ValidationError(p, "subgroup id " + std::to_string(id) + " out of range (there are " +
                                     std::to_string(classes.size()) + " classes)");
      }
      return std::make_shared<GaloisLattice>(permutation_lattice(classes[id]));
    }
    throw ValidationError(p, "unknown builtin lattice '" + name + "'");
  }
  const long long rank = as_integer(require(spec, ptr, "rank"), child(ptr, "rank"));
  if (rank < 0 || rank > 1000) throw ValidationError(child(ptr, "rank"), "rank out of range");
  const std::string gp = child(ptr, "generators");
  const Json& gens = as_array(require(spec, ptr, "generators"), gp);
  const auto& elems = g->input_generators();
  if (gens.size() != elems.size()) {
    throw ValidationError(gp, "expected one matrix per group generator (" + std::to_string(elems.size()) + ")");
  }
  std::vector<IntMatrix> ms;
  for (std::size_t i = 0; i < gens.size(); ++i) ms.push_back(parse_matrix(gens[i], static_cast<std::size_t>(rank), child(gp, i)));
  try {
    auto l = GaloisLattice::from_generators(g, static_cast<std::size_t>(rank), elems, ms);
    l.validate();
    return std::make_shared<GaloisLattice>(std::move(l));
  } catch (const std::invalid_argument& e) {
    throw ValidationError(gp, e.what());
  }
}

std::vector<Place> parse_places(const GroupPtr& g, const Json& v, const std::string& ptr)
{
  as_array(v, ptr);
  std::vector<Place> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string pi = child(ptr, i);
    const std::string label = as_string(require(v[i], pi, "label"), child(pi, "label"));
    if (!seen.insert(label).second) throw ValidationError(child(pi, "label"), "duplicate place label '" + label + "'");
    std::vector<int> elems;
    const Json* e = optional_field(v[i], "elements");
    const Json* gen = optional_field(v[i], "generators");
    if ((e == nullptr) == (gen == nullptr)) {
      throw ValidationError(pi, "place '" + label + "': give exactly one of \"elements\" and \"generators\"");
    }
    const std::string pe = child(pi, e ? "elements" : "generators");
    as_array(e ? *e : *gen, pe);
    for (std::size_t j = 0; j < (e ? *e : *gen).size(); ++j) elems.push_back(parse_element(g, (e ? *e : *gen)[j], child(pe, j)));
    if (gen) {
      out.push_back(Place{label, Subgroup::generated(g, elems)});
      continue;
    }
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    try {
      out.push_back(Place{label, Subgroup(g, elems)});
    } catch (const std::invalid_argument& ex) {
      throw ValidationError(pe, "place '" + label + "': " + ex.what());
    }
  }
  return out;
}

ReductiveDescriptor parse_reductive(const Json& v, const std::string& ptr, const Job& job, std::vector<std::string>& query)
{
  if (!v.is_object()) throw ValidationError(ptr, "expected an object");
  ReductiveDescriptor d;
  d.torus_quotient = job.lattice;
  if (const Json* x = optional_field(v, "has_anisotropic_trialitarian_D4_or_E6")) {
    d.has_anisotropic_trialitarian_D4_or_E6 = as_bool(*x, child(ptr, "has_anisotropic_trialitarian_D4_or_E6"));
  }
  if (const Json* x = optional_field(v, "base_totally_imaginary")) {
    d.base_totally_imaginary = as_bool(*x, child(ptr, "base_totally_imaginary"));
  }
  auto labels = [&](const std::string& key) {
    std::vector<std::string> out;
    if (const Json* x = optional_field(v, key)) {
      const std::string p = child(ptr, key);
      out = string_list(*x, p);
      for (std::size_t i = 0; i < out.size(); ++i) {
        bool known = std::any_of(job.places.bad_places.begin(), job.places.bad_places.end(),
                                 [&](const Place& pl) { return pl.label == out[i]; });
        if (!known) throw ValidationError(child(p, i), "unknown place label '" + out[i] + "'");
      }
    }
    return out;
  };
  d.inner_type_places = labels("inner_type_places");
  d.metacyclic_split_places = labels("metacyclic_split_places");
  if (optional_field(v, "query_places")) {
    query = labels("query_places");
  } else {
    for (const auto& p : job.places.bad_places) query.push_back(p.label);
  }
  return d;
}

Json factors_json(std::span<const Int> f)
{
  Json a = Json::array();
  for (const auto& x : f) a.push_back(x.fits_int64() ? Json(x.to_int64()) : Json(x.str()));
  return a;
}

Json int_json(const Int& x)
{
  return x.fits_int64() ? Json(x.to_int64()) : Json(x.str());
}

Json group_json(const FiniteAbelianGroup& a)
{
  return factors_json(a.invariant_factors());
}

Json witnesses_json(const FiniteAbelianGroup& a)
{
  Json out = Json::array();
  for (const auto& w : a.witnesses()) out.push_back(factors_json(w));
  return out;
}

Json matrix_json(const IntMatrix& m)
{
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(factors_json(m.row(i)));
  return out;
}

Json lattice_json(const GaloisLattice& l)
{
  Json gens = Json::array();
  for (int s : l.group()->input_generators()) gens.push_back(matrix_json(l.action(s)));
  Json out;
  out["rank"] = l.rank();
  out["generators"] = std::move(gens);
  return out;
}

Json subgroup_json(const Subgroup& h)
{
  Json out;
  out["order"] = h.order();
  out["kind"] = to_string(h.kind());
  out["elements"] = h.elements();
  return out;
}

Json torus_json(const TorusReport& r, bool witnesses, Json& warnings)
{
  Json t;
  t["ranks"] = Json{{"T", r.t_rank}, {"N", r.n_rank}, {"S", r.s_rank}};
  t["picard_invariant"] = group_json(r.picard_invariant);
  Json local = Json::object();
  for (const auto& [label, grp] : r.local_brauer) local[label] = group_json(grp);
  t["local_brauer"] = std::move(local);
  t["brauer_classes"] = group_json(r.brauer_classes);
  t["brauer_classes_alt_order"] = int_json(r.brauer_classes_alt_order);
  t["wa_defect"] = group_json(r.wa_defect);
  t["sha_T"] = group_json(r.sha_T);
  if (r.sha_T_cross_check) t["sha_T_cross_check"] = group_json(*r.sha_T_cross_check);
  t["sha_S"] = group_json(r.sha_S);
  t["n_T"] = int_json(r.n_T);
  t["r_classes_order"] = int_json(r.r_classes_order);
  t["wa_verdict"] = to_string(r.wa_verdict);
  t["picard_trivial"] = r.picard_trivial;
  Json diags = Json::array();
  for (const auto& d : r.diagnostics) {
    diags.push_back(Json{{"name", d.name}, {"passed", d.passed}, {"detail", d.detail}});
    if (!d.passed) warnings.push_back(Json{{"name", d.name}, {"detail", d.detail}});
  }
  t["diagnostics"] = std::move(diags);
  Json prov = Json::object();
  for (const auto& [field, how] : r.provenance) prov[field] = how;
  t["provenance"] = std::move(prov);
  if (witnesses) {
    Json w;
    w["picard_invariant"] = witnesses_json(r.picard_invariant);
    w["wa_defect"] = witnesses_json(r.wa_defect);
    w["sha_T"] = witnesses_json(r.sha_T);
    w["sha_S"] = witnesses_json(r.sha_S);
    t["witnesses"] = std::move(w);
  }
  return t;
}

Json certificate_json(const FlasqueCertificate& c)
{
  Json entries = Json::array();
  for (const auto& e : c.entries) {
    entries.push_back(Json{{"class_index", e.class_index},
                           {"subgroup_order", e.subgroup.order()},
                           {"vanishes", e.vanishes},
                           {"invariant_factors", factors_json(e.invariant_factors)}});
  }
  return Json{{"flasque", c.flasque}, {"entries", std::move(entries)}};
}

void render(std::ostringstream& os, const Json& v, const std::string& key, int depth, bool as_group)
{
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string head = key.empty() ? pad : pad + key + ": ";
  if (as_group && v.is_array()) {
    std::vector<Int> f;
    for (const auto& x : v) f.push_back(x.is_string() ? Int::parse(x.get<std::string>()) : Int(x.get<long long>()));
    os << head << render_factors(f) << "\n";
    return;
  }
  if (v.is_object() && v.empty()) {
    os << head << "{}\n";
    return;
  }
  if (v.is_object()) {
    if (!key.empty()) os << pad << key << ":\n";
    const bool groups = key == "local_brauer";
    for (const auto& [k, x] : v.items()) render(os, x, k, depth + (key.empty() ? 0 : 1), groups || group_keys.count(k));
    return;
  }
  if (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array())) {
    os << pad << key << ":\n";
    for (const auto& x : v) {
      if (x.is_object()) {
        os << pad << "  -\n";
        for (const auto& [k, y] : x.items()) render(os, y, k, depth + 2, group_keys.count(k) > 0);
      } else {
        render(os, x, "", depth + 1, false);
      }
    }
    return;
  }
  os << head << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

} // namespace

std::string render_factors(const std::vector<Int>& factors)
{
  if (factors.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? " x Z/" : "Z/") + factors[i].str();
  return s;
}

Job parse_job(std::string_view text, std::size_t max_order)
{
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) throw ValidationError("", "the job must be a JSON object");
  Job job;
  job.target = as_string(require(doc, "", "target"), "/target");
  if (std::find(targets.begin(), targets.end(), job.target) == targets.end()) {
    throw ValidationError("/target", "unknown target '" + job.target + "'");
  }
  if (const Json* o = optional_field(doc, "options")) {
    if (!o->is_object()) throw ValidationError("/options", "expected an object");
    for (const auto& [k, v] : o->items()) {
      const std::string p = "/options/" + k;
      if (k == "cross_check_sha") {
        job.options.cross_check_sha = as_bool(v, p);
      } else if (k == "emit_witnesses") {
        job.options.emit_witnesses = as_bool(v, p);
      } else if (k == "seed") {
        long long s = as_integer(v, p);
        if (s < 0) throw ValidationError(p, "seed must be nonnegative");
        job.options.seed = static_cast<std::uint64_t>(s);
      } else {
        throw ValidationError(p, "unknown option");
      }
    }
  }
  if (job.target == "verify") {
    if (const Json* v = optional_field(doc, "cases")) {
      long long c = as_integer(*v, "/cases");
      if (c < 1 || c > 100000) throw ValidationError("/cases", "cases must be between 1 and 100000");
      job.verify_cases = static_cast<std::size_t>(c);
    }
    return job;
  }

  job.group = parse_group(require(doc, "", "group"), "/group");
  if (max_order && job.group->order() > max_order) {
    throw ValidationError("/group", "group of order " + std::to_string(job.group->order()) +
                                        " exceeds --max-order " + std::to_string(max_order));
  }
  job.lattice = parse_lattice(job.group, require(doc, "", "lattice"), "/lattice");
  if (const Json* p = optional_field(doc, "places")) job.places.bad_places = parse_places(job.group, *p, "/places");
  if (const Json* c = optional_field(doc, "places_complete")) job.places.complete = as_bool(*c, "/places_complete");
  if (const Json* d = optional_field(doc, "degrees")) {
    as_array(*d, "/degrees");
    job.degrees.clear();
    for (std::size_t i = 0; i < d->size(); ++i) {
      long long x = as_integer((*d)[i], child("/degrees", i));
      if (x < -1 || x > 2) throw ValidationError(child("/degrees", i), "degree must be -1, 0, 1 or 2");
      job.degrees.push_back(static_cast<int>(x));
    }
  }
  if (job.target == "group_report") {
    const Json* r = optional_field(doc, "reductive");
    job.reductive = parse_reductive(r ? *r : Json::object(), "/reductive", job, job.query_places);
  }
  return job;
}

JobOutput run_job(const Job& job)
{
  JobOutput out;
  Json& rep = out.report;
  Json warnings = Json::array();
  rep["target"] = job.target;

  if (job.target == "verify") {
    auto results = run_property_suites(job.options.seed, job.verify_cases);
    Json suites = Json::array();
    bool all = true;
    for (const auto& s : results) {
      all = all && s.failures == 0;
      suites.push_back(Json{{"name", s.name}, {"cases", s.cases}, {"failures", s.failures}, {"details", s.failure_details}});
    }
    rep["seed"] = job.options.seed;
    rep["cases"] = job.verify_cases;
    rep["suites"] = std::move(suites);
    rep["all_passed"] = all;
  } else {
    rep["group"] = Json{{"order", job.group->order()}, {"subgroup_classes", subgroup_classes(job.group).size()}};
    rep["lattice_rank"] = job.lattice->rank();
    Json places = Json::array();
    for (const auto& p : job.places.bad_places) {
      Json x = subgroup_json(p.subgroup);
      places.push_back(Json{{"label", p.label}, {"subgroup", std::move(x)}});
    }
    rep["places"] = std::move(places);
    rep["places_complete"] = job.places.complete;
    TorusOptions topt;
    topt.cross_check_sha = job.options.cross_check_sha;

    if (job.target == "torus_report") {
      rep["torus_report"] = torus_json(torus_report(*job.lattice, job.places, topt), job.options.emit_witnesses, warnings);
    } else if (job.target == "group_report") {
      auto g = group_report(*job.reductive, job.places, topt);
      auto crit = wa_criteria(*job.reductive, job.places, job.query_places, &g.torus);
      Json r;
      r["brauer_classes"] = group_json(g.brauer_classes);
      r["wa_defect"] = group_json(g.wa_defect);
      r["r_status"] = g.r_status;
      r["r_classes_order"] = g.r_classes_order ? int_json(*g.r_classes_order) : Json(nullptr);
      r["r_image_order"] = int_json(g.r_image_order);
      r["r_note"] = g.r_note;
      Json pv = Json::array();
      for (const auto& v : crit.places) {
        pv.push_back(Json{{"label", v.label}, {"local_br_trivial", v.local_br_trivial}, {"reason", v.reason}});
      }
      Json c;
      c["places"] = std::move(pv);
      c["overall"] = crit.overall;
      c["picard_trivial"] = crit.picard_trivial;
      if (crit.witness) c["witness"] = group_json(*crit.witness);
      r["wa_criteria"] = std::move(c);
      r["torus_quotient_invariants"] = torus_json(g.torus, job.options.emit_witnesses, warnings);
      rep["group_report"] = std::move(r);
    } else if (job.target == "cohomology") {
      CohomologyEngine engine(job.lattice);
      Json rows = Json::array();
      auto classes = subgroup_classes(job.group);
      for (std::size_t i = 0; i < classes.size(); ++i) {
        for (int d : job.degrees) {
          auto a = engine.tate(d, classes[i]);
          Json row{{"class_index", i}, {"subgroup_order", classes[i].order()}, {"degree", d},
                   {"invariant_factors", group_json(a)}};
          if (job.options.emit_witnesses) row["witnesses"] = witnesses_json(a);
          rows.push_back(std::move(row));
        }
      }
      rep["cohomology"] = std::move(rows);
    } else if (job.target == "flasque_resolution") {
      auto res = flasque_resolution(*job.lattice);
      Json r;
      r["t_hat"] = lattice_json(*res.t_hat);
      r["n_hat"] = lattice_json(*res.n_hat);
      r["s_hat"] = lattice_json(*res.s_hat);
      r["inject"] = matrix_json(res.inject.matrix);
      r["project"] = matrix_json(res.project.matrix);
      Json blocks = Json::array();
      for (const auto& b : res.n_blocks) {
        blocks.push_back(Json{{"class_index", b.class_index}, {"subgroup_order", b.subgroup.order()}, {"copies", b.copies}});
      }
      r["n_blocks"] = std::move(blocks);
      r["certificate"] = certificate_json(res.certificate);
      rep["flasque_resolution"] = std::move(r);
    } else if (job.target == "certify") {
      rep["certify"] = certificate_json(certify_flasque(*job.lattice, true));
    }
  }
  out.warnings = !warnings.empty();
  rep["diagnostic_warnings"] = std::move(warnings);

  std::ostringstream os;
  render(os, rep, "", 0, false);
  out.text = os.str();
  return out;
}

} // namespace torinv
