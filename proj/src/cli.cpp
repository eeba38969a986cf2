#include "tfr/cli.hpp"

#include "tfr/document.hpp"
#include "tfr/residue.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace tfr {

namespace {

const std::set<std::string> kInputErrors = {"ParseError",  "ValidationFailed", "InvalidBoundary", "UnknownConeId",
                                            "InvalidArgument", "IoError",       "NotSimplicial",   "InvalidCharacteristic"};
const std::set<std::string> kPreconditionErrors = {"PreconditionFailed", "NotWlc",        "NotAnLcCenter",   "NotNormalComponents",
                                                   "Infeasible",         "NotOrientable", "GlueCheckFailed", "NotIrreducible"};

Json labels(const MonoidalComplex& mc, const std::vector<std::size_t>& cs) {
    Json a = Json::array();
    for (auto c : cs) a.push_back(mc.label(c));
    return a;
}

Json strings(const std::vector<std::string>& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(s);
    return a;
}

Json boundary_json(const MonoidalComplex& mc, const Boundary& b) {
    Json o = Json::object();
    for (const auto& [t, v] : b) o[mc.label(t)] = str(v);
    return o;
}

Json rat_map(const MonoidalComplex& mc, const std::map<std::size_t, Rat>& m) {
    Json o = Json::object();
    for (const auto& [t, v] : m) o[mc.label(t)] = str(v);
    return o;
}

Json unit_map(const MonoidalComplex& mc, const std::map<std::size_t, Unit>& m) {
    Json o = Json::object();
    for (const auto& [t, v] : m) o[mc.label(t)] = v.str();
    return o;
}

std::string provenance(const Verdict& v) { return v.exact ? "exact" : "verified up to box " + std::to_string(v.box); }

Json verdict_json(const Verdict& v) {
    Json j;
    j["value"] = v.value;
    j["provenance"] = provenance(v);
    if (!v.note.empty()) j["note"] = v.note;
    if (!v.witness.empty()) j["witness"] = strings(v.witness);
    return j;
}

Json complex_summary(const MonoidalComplex& mc) {
    Json j;
    j["lattice_rank"] = mc.rank();
    j["characteristic"] = mc.characteristic();
    j["mode"] = mc.mode() == SemigroupMode::Generators ? "generators" : "lattice_family";
    j["dimension"] = mc.dim();
    j["cones"] = mc.cones().size();
    j["facets"] = labels(mc, mc.facets());
    Json al = Json::object();
    for (const auto& [a, i] : mc.aliases()) al[a] = mc.cone(i).id();
    j["aliases"] = al;
    return j;
}

Json normality_json(const MonoidalComplex& mc, const NormalityReport& r) {
    Json j;
    j["seminormal"] = verdict_json(r.seminormal);
    j["weakly_normal"] = verdict_json(r.weakly_normal);
    j["s2"] = verdict_json(r.s2);
    j["has_normal_components"] = r.has_normal_components;
    j["provenance"] = r.exact ? "exact" : "verified up to box " + std::to_string(r.box);
    Json inc = Json::array();
    for (const auto& [key, d] : incidence_table(mc)) inc.push_back(Json{{"tau", mc.label(key.first)}, {"facet", mc.label(key.second)}, {"d", d.get_str()}});
    j["incidences"] = inc;
    return j;
}

Json classification_json(const MonoidalComplex& mc, const Boundary& b, const ClassificationReport& r) {
    Json j;
    j["boundary"] = boundary_json(mc, b);
    j["weakly_normal_log_pair"] = r.weakly_normal_log_pair;
    if (r.psi) {
        j["psi"] = str(r.psi->psi);
        j["core"] = mc.label(r.psi->core);
        j["residue_lattice"] = r.psi->residue_lattice.str();
        Json amb = Json::array();
        for (const auto& v : r.psi->ambiguity) amb.push_back(str(v));
        j["psi_ambiguity"] = amb;
    } else {
        j["psi"] = nullptr;
    }
    j["q_orientable"] = r.orientability.value;
    j["orientability_exponent"] = r.orientability.exponent;
    j["wlc"] = r.wlc;
    j["slc"] = r.slc;
    j["invertibility_orders"] = r.invertibility_orders;
    if (mc.characteristic() == 0) j["odd_orders_note"] = "odd n computed with canonical HNF orientations";
    j["non_wlc_locus"] = labels(mc, r.non_wlc_locus);
    Json w = Json::object();
    for (const auto& [k, v] : r.witnesses) w[k] = strings(v);
    j["witnesses"] = w;
    j["provenance"] = r.normality.exact ? "exact" : "lattices derived from generators; normality verified up to box " + std::to_string(r.normality.box);
    return j;
}

Json centers_json(const MonoidalComplex& mc, const Boundary& b, const QVec& psi) {
    Json j;
    j["lc_centers"] = labels(mc, lc_centers(mc, b, psi));
    auto m = minimal_lc_center(mc, b, psi);
    j["minimal"] = Json{{"cone", mc.label(m.cone)}, {"normal", m.normal}, {"certificate", strings(m.certificate)}};
    auto loc = lcs_locus(mc, b, psi);
    Json l;
    l["maximal"] = labels(mc, loc.maximal);
    l["empty"] = !loc.y.has_value();
    if (loc.y) {
        l["pure_codim1"] = loc.pure_codim1;
        l["s2"] = verdict_json(loc.s2);
        l["weakly_normal"] = verdict_json(loc.weakly_normal);
    }
    j["lcs_locus"] = l;
    return j;
}

Json different_json(const MonoidalComplex& mc, const Different& d) {
    Json j;
    j["center"] = mc.label(d.center);
    j["coefficients"] = rat_map(mc, d.coefficients);
    Json q = Json::object();
    for (const auto& [k, v] : d.q) q[mc.label(k)] = v.get_str();
    j["q"] = q;
    return j;
}

Json datum_json(const MonoidalComplex& mc, const ResidueDatum& d) {
    Json j;
    j["r"] = d.r;
    j["constants_facets"] = unit_map(mc, d.constants_facets);
    j["constants_primes"] = unit_map(mc, d.constants_primes);
    Json s = Json::array();
    for (const auto& [k, e] : d.signs) s.push_back(Json{{"tau", mc.label(k.first)}, {"facet", mc.label(k.second)}, {"epsilon", e}});
    j["signs"] = s;
    j["verified"] = verify_residue_datum(mc, d);
    return j;
}

Json residues_json(const MonoidalComplex& mc, const Boundary& b, const QVec& psi, const CommandOptions& opt) {
    Json j;
    j["r"] = opt.r;
    j["constants"] = datum_json(mc, residue_constants(mc, b, psi, opt.r));
    auto loc = lcs_locus(mc, b, psi);
    Json diffs = Json::array();
    for (auto s : loc.maximal)
        if (mc.codim(s) == 1) diffs.push_back(different_json(mc, different(mc, b, psi, s)));
    j["differents"] = diffs;
    auto g = lcs_glue_check(mc, b, psi, opt.r);
    Json gj;
    gj["ok"] = g.ok;
    gj["checked"] = g.checked;
    if (g.witness) {
        const auto& w = *g.witness;
        gj["witness"] = Json{{"Q", mc.label(w[0])}, {"F", mc.label(w[1])}, {"E1", mc.label(w[2])}, {"E2", mc.label(w[3])}};
        gj["lhs"] = g.lhs->str();
        gj["rhs"] = g.rhs->str();
    }
    j["glue_check"] = gj;
    if (g.ok && loc.y) {
        auto ld = lcs_different(mc, b, psi, opt.r);
        j["lcs_boundary"] = boundary_json(*ld.locus.y, ld.boundary);
    }
    if (opt.center) {
        auto z = mc.resolve(*opt.center);
        if (!z) throw Error("UnknownConeId", "--center '" + *opt.center + "' is not a cone of the fan");
        auto h = higher_residue(mc, b, psi, opt.r, *z);
        j["higher_residue"] = Json{{"center", mc.label(*z)}, {"constant", h.constant.str()}, {"boundary", rat_map(mc, h.boundary)}, {"chains", h.chains}};
    }
    return j;
}

Json chain_json(const std::vector<ChainStep>& steps) {
    Json a = Json::array();
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        Json j;
        j["step"] = i;
        j["dimension"] = s.x.dim();
        j["facets"] = labels(s.x, s.x.facets());
        j["boundary"] = boundary_json(s.x, s.boundary);
        j["psi"] = str(s.psi);
        j["residue"] = datum_json(s.x, s.residue);
        a.push_back(j);
    }
    return a;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("IoError", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

long param_long(const std::vector<std::string>& p, std::size_t i, const std::string& what) {
    if (i >= p.size()) throw Error("InvalidArgument", "missing parameter " + what);
    Int v = parse_integer(p[i]);
    if (v < 0 || !v.fits_slong_p()) throw Error("InvalidArgument", what + " out of range");
    return v.get_si();
}

std::vector<std::vector<std::size_t>> parse_faces(const std::string& s) {
    std::vector<std::vector<std::size_t>> out;
    std::stringstream ss(s);
    std::string block;
    while (std::getline(ss, block, ';')) {
        std::vector<std::size_t> f;
        std::stringstream bs(block);
        std::string v;
        while (std::getline(bs, v, ',')) {
            Int x = parse_integer(v);
            if (x < 1 || !x.fits_ulong_p()) throw Error("InvalidArgument", "vertex '" + v + "' must be a positive integer");
            f.push_back(x.get_ui());
        }
        if (f.empty()) throw Error("InvalidArgument", "empty face in '" + s + "'");
        out.push_back(f);
    }
    if (out.empty()) throw Error("InvalidArgument", "no faces given");
    return out;
}

RawComplex generate(const CommandOptions& opt) {
    const auto& p = opt.params;
    if (opt.kind == "coordinate-arrangement") {
        long n = param_long(p, 0, "n"), c = param_long(p, 1, "p");
        if (n < 1 || c > n) throw Error("InvalidArgument", "need 1 <= n and 0 <= p <= n");
        return coordinate_arrangement_raw(n, c);
    }
    if (opt.kind == "stanley-reisner") {
        if (p.empty()) throw Error("InvalidArgument", "missing facet list such as \"1,2,3;3,4,5\"");
        auto faces = parse_faces(p.back());
        std::size_t n = 0;
        for (const auto& f : faces)
            for (auto v : f) n = std::max(n, v);
        if (p.size() >= 2) {
            std::size_t given = param_long(p, 0, "n");
            if (given < n) throw Error("InvalidArgument", "vertex index exceeds n");
            n = given;
        }
        return stanley_reisner_raw(n, faces);
    }
    if (opt.kind == "cusp-cone") return cusp_cone_raw();
    throw Error("InvalidArgument", "unknown kind '" + opt.kind + "' (coordinate-arrangement, stanley-reisner, cusp-cone)");
}

}  // namespace

int exit_code_for(const std::string& code) {
    if (kInputErrors.count(code)) return 2;
    if (kPreconditionErrors.count(code)) return 3;
    return 4;
}

CommandResult run_command(const CommandOptions& opt) {
    CommandResult res;
    Json report;
    report["report_version"] = 1;
    report["command"] = opt.command;
    try {
        if (opt.command == "generate") {
            Document doc;
            doc.raw = generate(opt);
            if (opt.characteristic) doc.raw.characteristic = *opt.characteristic;
            build(doc.raw);
            res.out = write_document(doc);
            return res;
        }
        static const std::set<std::string> known = {"validate", "classify", "centers", "residues", "chain"};
        if (!known.count(opt.command)) throw Error("InvalidArgument", "unknown command '" + opt.command + "'");
        std::string text = opt.input ? *opt.input : read_file(opt.path);
        report["input_digest"] = "fnv1a64:" + fnv1a(text);
        Json flags;
        flags["r"] = opt.r;
        flags["nmax"] = opt.nmax;
        flags["box"] = opt.box ? Json(*opt.box) : Json(nullptr);
        flags["center"] = opt.center ? Json(*opt.center) : Json(nullptr);
        flags["char"] = opt.characteristic ? Json(*opt.characteristic) : Json(nullptr);
        report["flags"] = flags;

        Document doc = parse_document(text);
        if (opt.characteristic) doc.raw.characteristic = *opt.characteristic;
        auto vr = validate(doc.raw);
        Json val;
        val["ok"] = vr.ok();
        Json vio = Json::array();
        for (const auto& v : vr.violations) vio.push_back(Json{{"code", v.code}, {"message", v.message}, {"witness", strings(v.witness)}});
        val["violations"] = vio;
        if (vr.ok()) val["complex"] = complex_summary(*vr.complex);
        report["validation"] = val;
        if (!vr.ok()) {
            res.exit_code = 2;
            res.err = vr.violations.front().code + ": " + vr.violations.front().message + "\n";
            res.out = report.dump(2) + "\n";
            return res;
        }
        const MonoidalComplex& mc = *vr.complex;
        Boundary b = resolve_boundary(mc, doc.boundary);
        validate_boundary(mc, b);
        if (opt.command == "validate") {
            res.out = report.dump(2) + "\n";
            return res;
        }
        if (opt.r <= 0 || opt.r % 2 != 0) throw Error("InvalidArgument", "--r must be a positive even integer");
        if (opt.nmax < 1) throw Error("InvalidArgument", "--nmax must be positive");

        if (opt.command == "chain") {
            report["chain"] = chain_json(lcs_chain(mc, b, opt.r));
            res.out = report.dump(2) + "\n";
            return res;
        }
        auto cls = classify(mc, b, opt.nmax, opt.box);
        report["normality"] = normality_json(mc, cls.normality);
        const MonoidalComplex& lf = *cls.complex;
        report["classification"] = classification_json(lf, b, cls);
        if (opt.command == "centers" || opt.command == "residues") {
            if (!cls.psi) throw Error("PreconditionFailed", "no log discrepancy function");
            if (opt.command == "centers") {
                if (!cls.wlc) {
                    report["centers"] = Json{{"lc_centers", labels(lf, lc_centers(lf, b, cls.psi->psi))}, {"note", "not wlc"}};
                } else {
                    report["centers"] = centers_json(lf, b, cls.psi->psi);
                }
            } else {
                if (!cls.wlc) throw Error("NotWlc", "residues need a wlc pair");
                report["residues"] = residues_json(lf, b, cls.psi->psi, opt);
                if (report["residues"]["glue_check"]["ok"] == false) {
                    // keep the witness in the report, fail like lcs_different would
                    const auto& w = report["residues"]["glue_check"]["witness"];
                    std::string msg = "LCS gluing fails at Q=" + w["Q"].get<std::string>() + " F=" + w["F"].get<std::string>();
                    res.exit_code = exit_code_for("GlueCheckFailed");
                    report["error"] = Json{{"code", "GlueCheckFailed"}, {"message", "GlueCheckFailed: " + msg}};
                    res.err = "GlueCheckFailed: " + msg + "\n";
                }
            }
        }
        res.out = report.dump(2) + "\n";
    } catch (const Error& e) {
        res.exit_code = exit_code_for(e.code());
        report["error"] = Json{{"code", e.code()}, {"message", e.what()}};
        res.out = opt.command == "generate" ? "" : report.dump(2) + "\n";
        res.err = std::string(e.what()) + "\n";
    } catch (const std::exception& e) {
        res.exit_code = 4;
        report["error"] = Json{{"code", "InternalError"}, {"message", e.what()}};
        res.out = report.dump(2) + "\n";
        res.err = std::string("InternalError: ") + e.what() + "\n";
    }
    return res;
}

}  // namespace tfr
