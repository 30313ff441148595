#include "prem/pipeline.hpp"

#include "prem/double_point.hpp"
#include "prem/errors.hpp"
#include "prem/generators.hpp"
#include "prem/gf2.hpp"
#include "prem/obstruction.hpp"
#include "prem/plify.hpp"
#include "prem/stability.hpp"
#include "prem/z2.hpp"

#include <sstream>

namespace prem {

namespace {

using nlohmann::ordered_json;

ordered_json rational_json(const Rational& x) { return format_rational(x); }

ordered_json simplex_json(const SimplicialComplex& c, const Simplex& s)
{
    ordered_json a = ordered_json::array();
    for (int v : s) a.push_back(c.name(v));
    return a;
}

std::string simplex_text(const SimplicialComplex& c, const Simplex& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + c.name(s[i]);
    return out + "}";
}

ordered_json counts_json(const SimplicialComplex& c)
{
    ordered_json a = ordered_json::array();
    for (int d = 0; d <= c.dim(); ++d) a.push_back(c.count(d));
    return a;
}

template <class T>
std::string list_text(const std::vector<T>& xs)
{
    std::ostringstream ss;
    for (std::size_t i = 0; i < xs.size(); ++i) ss << (i ? " " : "") << xs[i];
    return ss.str();
}

std::vector<std::size_t> counts(const SimplicialComplex& c)
{
    std::vector<std::size_t> out;
    for (int d = 0; d <= c.dim(); ++d) out.push_back(c.count(d));
    return out;
}

Report base_report(const std::string& command)
{
    Report r;
    r.json["schema"] = 1;
    r.json["command"] = command;
    return r;
}

int verdict_exit(Verdict v)
{
    switch (v) {
    case Verdict::Exists: return 0;
    case Verdict::NotExists: return 1;
    default: return 2;
    }
}

int meta_n(const MapBundle& b)
{
    auto it = b.meta.find("n");
    if (it == b.meta.end()) return b.map->source().dim();
    try {
        return std::stoi(it->second);
    } catch (const std::exception&) {
        throw ParseError("meta n is not an integer");
    }
}

ordered_json certificate_json(const EmbeddingCertificate& c, const SimplicialComplex& kstar)
{
    ordered_json j;
    j["verdict"] = c.verdict;
    j["simplices_checked"] = c.simplices_checked;
    j["pairs_total"] = c.pairs_total;
    j["pairs_pruned"] = c.pairs_pruned;
    j["pairs_solved"] = c.pairs_solved;
    if (c.degenerate_simplex) j["degenerate_simplex"] = simplex_json(kstar, *c.degenerate_simplex);
    if (c.counterexample)
        j["counterexample"] = {simplex_json(kstar, c.counterexample->first), simplex_json(kstar, c.counterexample->second)};
    return j;
}

std::string certificate_text(const EmbeddingCertificate& c, const SimplicialComplex& kstar)
{
    std::ostringstream ss;
    ss << "embedding: " << (c.verdict ? "certified" : "refuted") << "\n"
       << "simplices checked: " << c.simplices_checked << "\n"
       << "simplex pairs: " << c.pairs_total << " total, " << c.pairs_pruned << " pruned, " << c.pairs_solved
       << " solved\n";
    if (c.degenerate_simplex) ss << "degenerate simplex: " << simplex_text(kstar, *c.degenerate_simplex) << "\n";
    if (c.counterexample)
        ss << "colliding simplices: " << simplex_text(kstar, c.counterexample->first) << " "
           << simplex_text(kstar, c.counterexample->second) << "\n";
    return ss.str();
}

}  // namespace

Report run_delta(const MapBundle& b)
{
    Report r = base_report("delta");
    DoublePointComplex d = double_point_model(*b.map);
    const auto comps = invariant_components(d);
    const long invariant = std::count_if(comps.begin(), comps.end(), [](const DeltaComponent& c) { return c.invariant; });
    r.json["model_subdivisions"] = d.subdivisions;
    r.json["cells"] = counts_json(d.complex);
    r.json["components"] = d.num_components;
    r.json["invariant_components"] = invariant;
    r.json["complex"] = write_complex(d.complex);
    r.json["involution"] = write_involution(d.complex, d.involution);
    std::ostringstream ss;
    ss << "# model subdivisions " << d.subdivisions << "\n"
       << "# cells " << list_text(counts(d.complex)) << "\n"
       << "# components " << d.num_components << " invariant " << invariant << "\n"
       << write_complex(d.complex) << write_involution(d.complex, d.involution);
    r.text = ss.str();
    return r;
}

Report run_yang(const MapBundle& b)
{
    Report r = base_report("yang");
    DoublePointComplex d = double_point_model(*b.map);
    std::ostringstream ss;
    if (d.pairs.empty()) {
        r.json["yang_index"] = 0;
        r.json["quotient_cells"] = ordered_json::array();
        r.json["betti"] = ordered_json::array();
        r.text = "double-point locus is empty\nyang index: 0\n";
        return r;
    }
    QuotientData q = quotient_by_involution(d);
    YangReport y = yang_report(q);
    r.json["yang_index"] = y.index;
    r.json["model_subdivisions"] = d.subdivisions;
    r.json["quotient_subdivisions"] = q.subdivisions;
    r.json["quotient_cells"] = y.cell_counts;
    r.json["betti"] = y.betti;
    ss << "yang index: " << y.index << "\n"
       << "quotient cells: " << list_text(y.cell_counts) << "\n"
       << "mod-2 betti: " << list_text(y.betti) << "\n";
    r.text = ss.str();
    return r;
}

Report run_obstruct(const MapBundle& b, int k)
{
    Report r = base_report("obstruct");
    DoublePointComplex d = double_point_model(*b.map);
    ObstructionVerdict v = equivariant_map_exists(d, k);
    const int n = meta_n(b), m = b.map->target().dim();
    const bool hypothesis = 2 * (m + k) >= 3 * (n + 1);
    r.json["k"] = k;
    r.json["verdict"] = to_string(v.verdict);
    r.json["justification"] = to_string(v.justification);
    r.json["yang_index"] = v.yang_index;
    r.json["quotient_dim"] = v.quotient_dim;
    r.json["dimension_hypothesis"] = hypothesis;
    std::ostringstream ss;
    ss << "verdict: " << to_string(v.verdict) << "\n"
       << "justification: " << to_string(v.justification) << "\n"
       << "yang index: " << v.yang_index << ", quotient dimension: " << v.quotient_dim << "\n"
       << "dimension hypothesis 2(m+k) >= 3(n+1) with m=" << m << " k=" << k << " n=" << n << ": "
       << (hypothesis ? "holds" : "fails") << "\n";
    if (v.verdict == Verdict::Exists && !hypothesis) {
        const std::string note = "an equivariant map exists, but 2(m+k) >= 3(n+1) fails, so this alone does not give a lift";
        r.json["note"] = note;
        ss << "note: " << note << "\n";
    }
    r.text = ss.str();
    r.exit_code = verdict_exit(v.verdict);
    return r;
}

Report run_lift(const MapBundle& b, const LiftOptions& opt)
{
    Report r = base_report("lift");
    const SimplicialMap& f = *b.map;
    LiftResult res;
    if (opt.alpha || opt.star) {
        if (has_triple_points(f)) throw PreconditionError("TriplePointsPresent", "three points share an image");
        DoublePointComplex d = double_point_model(f);
        std::vector<QVec> alpha;
        if (opt.alpha) {
            std::istringstream in(read_file(*opt.alpha));
            alpha = parse_witness(in, d, opt.alpha->string());
        } else {
            alpha = alpha_on_pairs(d, construct_equivariant_witness(d, opt.k));
        }
        std::optional<BoundaryData> boundary;
        if (opt.star) {
            std::istringstream in(read_file(*opt.star));
            boundary = parse_boundary(in, d.base->source(), opt.k, opt.star->string());
        }
        res = construct_lift_3ptfree(d, alpha, opt.k, boundary ? &*boundary : nullptr, opt.jobs);
    } else {
        res = construct_lift_3ptfree(f, opt.k, opt.jobs);
    }
    const SimplicialComplex& kstar = *res.lift.record.child;
    const std::string lift_text = write_lift(res.lift);
    r.json["k"] = opt.k;
    r.json["model_subdivisions"] = res.model_subdivisions;
    r.json["retries"] = res.retries;
    r.json["certificate"] = certificate_json(res.certificate, kstar);
    r.json["homotopy"] = res.homotopy == HomotopyStatus::Certified ? "certified" : "inconclusive";
    r.json["homotopy_cells"] = res.homotopy_cells;
    r.json["lift"] = lift_text;
    std::ostringstream ss;
    ss << lift_text << "# " << "model subdivisions " << res.model_subdivisions << ", retries " << res.retries << "\n";
    std::istringstream cert(certificate_text(res.certificate, kstar) + "homotopy to witness: " +
                            (res.homotopy == HomotopyStatus::Certified ? "certified" : "inconclusive") + "\n");
    for (std::string line; std::getline(cert, line);) ss << "# " << line << "\n";
    r.text = ss.str();
    r.exit_code = res.certificate.verdict ? 0 : 1;
    return r;
}

Report run_verify(const MapBundle& b, const Lift& g, int jobs)
{
    Report r = base_report("verify");
    EmbeddingCertificate c = verify_embedding(*b.map, g, jobs);
    r.json["certificate"] = certificate_json(c, *g.record.child);
    r.text = certificate_text(c, *g.record.child);
    r.exit_code = c.verdict ? 0 : 1;
    return r;
}

Report run_plify(const MapBundle& b, const Lift& g, bool trace, int jobs)
{
    Report r = base_report("plify");
    PlifyResult p = plify_lift(*b.map, g, jobs);
    const SimplicialComplex& kn = *p.lift.record.child;
    const std::string lift_text = write_lift(p.lift);
    r.json["vertices"] = kn.num_vertices();
    r.json["cells"] = counts_json(kn);
    r.json["vertex_agreement"] = p.vertex_agreement;
    r.json["hull_pairs_checked"] = p.hull_pairs_checked;
    r.json["hulls_disjoint"] = p.hulls_disjoint;
    r.json["stars_preserved"] = p.stars_preserved;
    r.json["certificate"] = certificate_json(p.certificate, kn);
    ordered_json stages = ordered_json::array();
    std::ostringstream tr;
    for (const auto& s : p.stages) {
        ordered_json j;
        j["stage"] = s.stage;
        j["skipped"] = s.skipped;
        j["d_sq"] = rational_json(s.d_sq);
        j["separation_sq"] = rational_json(s.separation_sq);
        j["lipschitz_sq"] = rational_json(s.lipschitz_sq);
        j["radius_sq"] = s.radius_sq ? rational_json(*s.radius_sq) : ordered_json(nullptr);
        j["refinement"] = s.refinement;
        j["vertices"] = s.vertices;
        j["cells"] = s.cells;
        stages.push_back(j);
        tr << "# stage " << s.stage << (s.skipped ? " skipped" : "") << ": d^2 " << format_rational(s.d_sq)
           << ", separation^2 " << format_rational(s.separation_sq) << ", lipschitz^2 "
           << format_rational(s.lipschitz_sq) << ", r^2 " << (s.radius_sq ? format_rational(*s.radius_sq) : "inf")
           << ", refinement " << s.refinement << ", vertices " << s.vertices << ", cells " << s.cells << "\n";
    }
    if (trace) r.json["stages"] = stages;
    r.json["lift"] = lift_text;
    std::ostringstream ss;
    ss << lift_text;
    if (trace) ss << tr.str();
    ss << "# vertex agreement: " << (p.vertex_agreement ? "yes" : "no") << "\n"
       << "# derived-star hulls disjoint: " << (p.hulls_disjoint ? "yes" : "no") << " (" << p.hull_pairs_checked
       << " pairs)\n"
       << "# stars preserved: " << (p.stars_preserved ? "yes" : "no") << "\n";
    std::istringstream cert(certificate_text(p.certificate, kn));
    for (std::string line; std::getline(cert, line);) ss << "# " << line << "\n";
    r.text = ss.str();
    r.exit_code = p.certificate.verdict ? 0 : 1;
    return r;
}

Report run_stability(const SimplicialComplex& k, const std::vector<QVec>& values,
                     const std::optional<GeometricComplex>& target)
{
    Report r = base_report("stability");
    LinearMapToRm f;
    f.source = std::make_shared<const SimplicialComplex>(k);
    f.m = values.empty() ? 1 : static_cast<int>(values[0].size());
    f.values = values;
    std::ostringstream ss;
    const bool gp = is_general_position_config(values);
    r.json["m"] = f.m;
    r.json["general_position"] = gp;
    GPhiReport g = in_G_phi(f, target ? &*target : nullptr);
    r.json["in_G_phi"] = g.in_g_phi;
    r.json["auto_target"] = g.auto_target;
    const std::string gverdict = g.in_g_phi ? "in G(phi) hence stable" : "not in G(phi) (stability undecided)";
    r.json["G_phi_verdict"] = gverdict;
    ss << "vertex values in general position: " << (gp ? "yes" : "no") << "\n" << gverdict << "\n";
    if (f.m == 1) {
        StableToRReport s = stable_to_R_report(f);
        ordered_json j;
        j["embeds_all_edges"] = s.embeds_all_edges;
        j["critical_values_injective"] = s.critical_values_injective;
        ordered_json crit = ordered_json::array();
        for (int v : s.critical_vertices) crit.push_back(k.name(v));
        j["critical_vertices"] = crit;
        j["verdict"] = s.verdict;
        j["regularity_decided"] = s.regularity_decided;
        r.json["maps_to_R"] = j;
        ss << "embeds every edge: " << (s.embeds_all_edges ? "yes" : "no") << "\n"
           << "critical values injective: " << (s.critical_values_injective ? "yes" : "no") << "\n"
           << "verdict: " << s.verdict << "\n";
        if (!s.regularity_decided) ss << "caveat: regularity is only decided for dim K <= 2\n";
    }
    r.text = ss.str();
    return r;
}

Report run_report_thm3(const MapBundle& b, std::optional<int> n_opt)
{
    Report r = base_report("report-thm3");
    const int n = n_opt ? *n_opt : meta_n(b);
    Theorem3Report t = theorem3_report(*b.map, n);
    r.json["n"] = t.n;
    r.json["target_dim"] = t.target_dim;
    r.json["source_pseudomanifold"] = t.source_pseudomanifold;
    r.json["source_betti"] = t.source_betti;
    r.json["model_subdivisions"] = t.model_subdivisions;
    r.json["delta_vertices"] = t.delta_vertices;
    r.json["delta_cells"] = t.delta_cells;
    r.json["components"] = t.num_components;
    ordered_json comps = ordered_json::array();
    std::ostringstream cs;
    for (const auto& c : t.components) {
        ordered_json j;
        j["label"] = c.label;
        j["parity_well_defined"] = c.first.well_defined;
        j["parity"] = c.first.parity;
        j["parity_other_side"] = c.second.parity;
        comps.push_back(j);
        cs << "invariant component " << c.label << ": projection degree parity "
           << (c.first.well_defined ? std::to_string(c.first.parity) : std::string("undefined")) << "\n";
    }
    r.json["invariant_components"] = comps;
    r.json["yang_index"] = t.yang_index;
    r.json["verdict"] = to_string(t.verdict.verdict);
    r.json["justification"] = to_string(t.verdict.justification);
    r.json["dimension_hypothesis"] = t.dimension_hypothesis;
    r.json["prem_conclusion"] = t.prem_conclusion;
    auto opt_json = [](const std::optional<bool>& x) { return x ? ordered_json(*x) : ordered_json(nullptr); };
    r.json["odd_reading_predicts_exists"] = opt_json(t.odd_reading_predicts_exists);
    r.json["even_reading_predicts_exists"] = opt_json(t.even_reading_predicts_exists);
    r.json["odd_reading_consistent"] = t.odd_reading_consistent;
    r.json["even_reading_consistent"] = t.even_reading_consistent;
    r.json["notes"] = t.notes;
    std::ostringstream ss;
    ss << "n: " << t.n << ", target dimension: " << t.target_dim << "\n"
       << "source closed pseudomanifold: " << (t.source_pseudomanifold ? "yes" : "no") << ", mod-2 betti "
       << list_text(t.source_betti) << "\n"
       << "double-point model: " << t.delta_vertices << " vertices, " << t.delta_cells << " cells, "
       << t.num_components << " components, " << t.model_subdivisions << " subdivisions\n"
       << cs.str() << "yang index: " << t.yang_index << "\n"
       << "verdict: " << to_string(t.verdict.verdict) << " (" << to_string(t.verdict.justification) << ")\n"
       << "dimension hypothesis 2(m+n) >= 3(n+1): " << (t.dimension_hypothesis ? "holds" : "fails") << "\n"
       << "conclusion: " << (t.prem_conclusion ? "f is a " + std::to_string(n) + "-prem" : "no prem conclusion")
       << "\n";
    if (t.odd_reading_predicts_exists)
        ss << "parity readings: odd " << (t.odd_reading_consistent ? "consistent" : "inconsistent") << ", even "
           << (t.even_reading_consistent ? "consistent" : "inconsistent") << " with the cup-power verdict\n";
    for (const auto& note : t.notes) ss << "note: " << note << "\n";
    r.text = ss.str();
    r.exit_code = verdict_exit(t.verdict.verdict);
    return r;
}

Report run_gen(const std::string& name, const std::vector<int>& params, const std::filesystem::path& dir)
{
    Report r = base_report("gen");
    GeneratedExample ex = generate(name, params);
    auto files = write_example(ex, dir);
    ordered_json fj = ordered_json::array();
    std::ostringstream ss;
    for (const auto& p : files) {
        fj.push_back(p.string());
        ss << p.string() << "\n";
    }
    r.json["generator"] = name;
    r.json["files"] = fj;
    r.json["source_cells"] = counts_json(ex.map->source());
    r.json["target_cells"] = counts_json(ex.map->target());
    r.json["subdivisions"] = ex.subdivisions;
    if (ex.base) r.json["base_cells"] = counts_json(*ex.base);
    ss << "# source cells " << list_text(counts(ex.map->source())) << ", target cells "
       << list_text(counts(ex.map->target())) << ", subdivisions " << ex.subdivisions << "\n";
    if (ex.base) ss << "# base cells " << list_text(counts(*ex.base)) << "\n";
    r.text = ss.str();
    return r;
}

Report error_report(const std::exception& e)
{
    Report r = base_report("error");
    r.json["message"] = e.what();
    if (auto p = dynamic_cast<const PreconditionError*>(&e)) {
        r.exit_code = 65;
        r.json["error"] = "precondition";
        r.json["code"] = p->code();
    } else if (dynamic_cast<const ParseError*>(&e)) {
        r.exit_code = 64;
        r.json["error"] = "parse";
    } else if (dynamic_cast<const ContractViolation*>(&e)) {
        r.exit_code = 70;
        r.json["error"] = "contract";
    } else {
        r.exit_code = 70;
        r.json["error"] = "internal";
    }
    r.text = std::string("error: ") + e.what() + "\n";
    return r;
}

}  // namespace prem
