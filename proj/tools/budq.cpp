// budq: banded unlink diagrams, quandle presentations, colorings, and
// bridge-number bounds.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "budq/bounds.hpp"
#include "budq/coloring.hpp"
#include "budq/diagram.hpp"
#include "budq/errors.hpp"
#include "budq/group_invariants.hpp"
#include "budq/presentation.hpp"
#include "budq/quandle.hpp"

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw budq::InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& bytes) {
    if (path.empty() || path == "-") {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw budq::InputError("cannot open output file: " + path);
    out << bytes;
}

std::size_t operator_cap_from_env() {
    const char* v = std::getenv("BUDQ_CAP");
    if (!v) return budq::kDefaultOperatorCap;
    try {
        long long n = std::stoll(v);
        if (n < 1) throw budq::InputError("BUDQ_CAP must be positive");
        return static_cast<std::size_t>(n);
    } catch (const budq::InputError&) {
        throw;
    } catch (...) {
        throw budq::InputError("BUDQ_CAP is not an integer");
    }
}

// Quandle spec: dihedral:n | conj:groupfile | a quandle JSON file path.
budq::FiniteQuandle load_quandle(const std::string& spec) {
    if (spec.rfind("dihedral:", 0) == 0) {
        int n = 0;
        try {
            n = std::stoi(spec.substr(9));
        } catch (...) {
            throw budq::InputError("bad dihedral quandle spec: " + spec);
        }
        return budq::make_dihedral(n);
    }
    if (spec.rfind("conj:", 0) == 0) {
        json j = json::parse(read_file(spec.substr(5)));
        budq::FiniteGroup g = budq::group_from_json(j);
        return budq::make_conjugation(g.table());
    }
    return budq::quandle_from_json(json::parse(read_file(spec)));
}

budq::AugmentedPresentation load_presentation(const std::string& path) {
    return budq::parse_presentation(read_file(path));
}

// Accepts either an augmented presentation (converted by augmentation) or a
// bare group presentation with "relators".
budq::GroupPresentation load_group_presentation(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw budq::InputError("JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (j.is_object() && j.contains("relators")) return budq::group_presentation_from_json(j);
    return budq::group_presentation(budq::presentation_from_json(j));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

int cmd_family(const std::string& kind, int p, int q, int d, const std::string& out) {
    budq::BandedUnlinkDiagram dia;
    if (kind == "torus") dia = budq::family_torus_link(p, q);
    else if (kind == "curve") dia = budq::family_algebraic_curve(d);
    else if (kind == "rp2") dia = budq::family_unknotted_projective_plane();
    else if (kind == "torus_surface") dia = budq::family_unknotted_torus();
    else throw budq::InputError("unknown family kind: " + kind);
    write_output(out, budq::serialize_diagram(dia));
    return 0;
}

int cmd_present(const std::string& file, bool do_simplify, bool to_group,
                const std::string& out) {
    budq::BandedUnlinkDiagram d = budq::parse_diagram(read_file(file));
    budq::AugmentedPresentation p = budq::extract_presentation(d);
    if (do_simplify) p = budq::simplify(p);
    if (to_group) {
        write_output(out, dump(budq::group_presentation_to_json(budq::group_presentation(p))));
    } else {
        write_output(out, budq::serialize_presentation(p));
    }
    return 0;
}

int cmd_color(const std::string& file, const std::string& target, long long list_n, int jobs,
              const std::string& format, const std::string& out) {
    budq::AugmentedPresentation p = load_presentation(file);
    budq::FiniteQuandle q = load_quandle(target);
    budq::ColoringOptions opts;
    opts.operator_cap = operator_cap_from_env();
    opts.jobs = jobs;

    auto t0 = std::chrono::steady_clock::now();
    json payload;
    if (list_n >= 0) {
        auto cols = budq::list_colorings(p, q, static_cast<std::size_t>(list_n), opts);
        json arr = json::array();
        for (const auto& c : cols) {
            json jc;
            jc["primary"] = c.primary_assignment;
            json ops = json::object();
            for (const auto& [name, perm] : c.operator_assignment) ops[name] = perm.mapping();
            jc["operator"] = ops;
            arr.push_back(std::move(jc));
        }
        payload["colorings"] = arr;
        payload["count"] = cols.size();
    } else {
        payload["count"] = budq::count_colorings(p, q, opts);
    }
    auto t1 = std::chrono::steady_clock::now();
    payload["target"] = budq::quandle_to_json(q);
    payload["presentation_digest"] = budq::presentation_digest(p);
    payload["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

    if (format == "text") {
        std::ostringstream os;
        os << "count: " << payload["count"].get<long long>() << "\n"
           << "digest: " << payload["presentation_digest"].get<std::string>() << "\n";
        write_output(out, os.str());
    } else {
        write_output(out, dump(payload));
    }
    return 0;
}

int cmd_bound(long long count, int qsize, int chi, bool classical, const std::string& format,
              const std::string& out) {
    budq::BridgeBoundResult r = classical ? budq::classical_bridge_lower_bound(count, qsize)
                                          : budq::bridge_lower_bound(count, qsize, chi);
    if (format == "text") {
        std::ostringstream os;
        os << "bound: " << r.bound_integer << (r.exact ? " (exact)" : " (ceiling)") << "\n";
        write_output(out, os.str());
    } else {
        write_output(out, dump(budq::bridge_bound_to_json(r)));
    }
    return 0;
}

int cmd_group(const std::string& file, bool abelianize, const std::string& homcount,
              const std::string& format, const std::string& out) {
    budq::GroupPresentation g = load_group_presentation(file);
    json payload;
    if (!homcount.empty()) {
        budq::FiniteGroup h = budq::group_from_json(json::parse(read_file(homcount)));
        payload["hom_count"] = budq::count_group_homs(g, h);
        payload["target_size"] = h.size();
    } else if (abelianize) {
        budq::Abelianization a = budq::abelianization(g);
        payload["free_rank"] = a.free_rank;
        json tor = json::array();
        for (const auto& t : a.torsion) tor.push_back(t.get_str());
        payload["torsion"] = tor;
    } else {
        payload = budq::group_presentation_to_json(g);
    }
    if (format == "text") {
        std::ostringstream os;
        if (!homcount.empty()) {
            os << "hom_count: " << payload["hom_count"].get<long long>() << "\n";
        } else if (abelianize) {
            os << "Z^" << payload["free_rank"].get<int>();
            for (const auto& t : payload["torsion"]) os << " + Z_" << t.get<std::string>();
            os << "\n";
        } else {
            os << dump(payload);
        }
        write_output(out, os.str());
    } else {
        write_output(out, dump(payload));
    }
    return 0;
}

// Construct micro-language, one operation per line:
//   twist-spin N | attach-order GEN D | connect GEN FILE GEN2 | propagate | simplify
budq::AugmentedPresentation run_script(budq::AugmentedPresentation p, std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op) || op[0] == '#') continue;
        auto bad = [&](const std::string& why) {
            throw budq::InputError("construct script line " + std::to_string(lineno) + ": " + why);
        };
        if (op == "twist-spin") {
            int n;
            if (!(ls >> n)) bad("usage: twist-spin N");
            p = budq::twist_spin(p, n);
        } else if (op == "attach-order") {
            std::string g;
            int d;
            if (!(ls >> g >> d)) bad("usage: attach-order GEN D");
            p = budq::attach_order_relation(p, g, d);
        } else if (op == "connect") {
            std::string g1, file, g2;
            if (!(ls >> g1 >> file >> g2)) bad("usage: connect GEN FILE GEN2");
            p = budq::connected_sum(p, g1, load_presentation(file), g2);
        } else if (op == "propagate") {
            p = budq::propagate_order_relations(p);
        } else if (op == "simplify") {
            p = budq::simplify(p);
        } else {
            bad("unknown operation '" + op + "'");
        }
    }
    return p;
}

int cmd_construct(const std::string& file, const std::string& script, const std::string& out) {
    budq::AugmentedPresentation p = load_presentation(file);
    if (script.empty() || script == "-") {
        p = run_script(std::move(p), std::cin);
    } else {
        std::istringstream in(read_file(script));
        p = run_script(std::move(p), in);
    }
    write_output(out, budq::serialize_presentation(p));
    return 0;
}

int cmd_validate(const std::string& kind, const std::string& file, const std::string& out) {
    json payload;
    if (kind == "diagram") {
        json j;
        try {
            j = json::parse(read_file(file));
        } catch (const json::parse_error& e) {
            throw budq::InputError("JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
        }
        budq::DiagramReport r = budq::validate_diagram(budq::diagram_from_json(j));
        payload["ok"] = r.ok();
        payload["failures"] = r.failures;
        write_output(out, dump(payload));
        return r.ok() ? 0 : 2;
    }
    if (kind == "quandle") {
        json j = json::parse(read_file(file));
        if (!j.is_object() || !j.contains("table"))
            throw budq::InputError("quandle JSON must contain \"table\"");
        auto table = j.at("table").get<std::vector<std::vector<int>>>();
        budq::QuandleValidation v = budq::validate_quandle(table);
        payload["ok"] = v.ok();
        payload["kei"] = v.kei;
        payload["report"] = v.summary();
        write_output(out, dump(payload));
        return v.ok() ? 0 : 2;
    }
    if (kind == "presentation") {
        budq::parse_presentation(read_file(file)); // throws on any failure
        payload["ok"] = true;
        write_output(out, dump(payload));
        return 0;
    }
    throw budq::InputError("unknown validate kind: " + kind + " (diagram|quandle|presentation)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"banded unlink diagrams and quandle coloring invariants"};
    app.require_subcommand(1);

    std::string out, format = "json";

    // family
    auto* family = app.add_subcommand("family", "emit a built-in diagram family");
    std::string fam_kind;
    int fam_p = 2, fam_q = 3, fam_d = 2;
    family->add_option("kind", fam_kind, "torus|curve|rp2|torus_surface")->required();
    family->add_option("--p", fam_p, "torus braid strands");
    family->add_option("--q", fam_q, "torus braid repeats");
    family->add_option("--d", fam_d, "curve degree");
    family->add_option("-o,--output", out, "output path (default stdout)");

    // present
    auto* present = app.add_subcommand("present", "extract a presentation from a diagram");
    std::string pre_file;
    bool pre_simplify = false, pre_group = false;
    present->add_option("diagram", pre_file, "diagram JSON file")->required();
    present->add_flag("--simplify", pre_simplify, "apply safe simplifications");
    present->add_flag("--group", pre_group, "emit the group presentation");
    present->add_option("-o,--output", out, "output path (default stdout)");

    // color
    auto* color = app.add_subcommand("color", "count or list colorings");
    std::string col_file, col_target;
    long long col_list = -1;
    int col_jobs = 1;
    color->add_option("presentation", col_file, "presentation JSON file")->required();
    color->add_option("--target", col_target, "dihedral:n | conj:groupfile | quandle file")
        ->required();
    color->add_option("--list", col_list, "list up to N colorings instead of counting");
    color->add_option("--jobs", col_jobs, "worker threads");
    color->add_option("--format", format, "json|text");
    color->add_option("-o,--output", out, "output path (default stdout)");

    // bound
    auto* bound = app.add_subcommand("bound", "bridge-number lower bound");
    long long b_count = 0;
    int b_qsize = 0, b_chi = 0;
    bool b_classical = false;
    bound->add_option("--count", b_count, "coloring count")->required();
    bound->add_option("--qsize", b_qsize, "quandle size")->required();
    bound->add_option("--chi", b_chi, "Euler characteristic of the surface");
    bound->add_flag("--classical", b_classical, "classical-link bound log_q(count)");
    bound->add_option("--format", format, "json|text");
    bound->add_option("-o,--output", out, "output path (default stdout)");

    // group
    auto* group = app.add_subcommand("group", "group-presentation invariants");
    std::string grp_file, grp_hom;
    bool grp_ab = false;
    group->add_option("presentation", grp_file, "presentation or group-presentation JSON")
        ->required();
    group->add_flag("--abelianize", grp_ab, "report free rank and torsion");
    group->add_option("--homcount", grp_hom, "count homs into the group JSON file");
    group->add_option("--format", format, "json|text");
    group->add_option("-o,--output", out, "output path (default stdout)");

    // construct
    auto* construct = app.add_subcommand("construct", "apply a construction script");
    std::string con_file, con_script;
    construct->add_option("presentation", con_file, "starting presentation JSON")->required();
    construct->add_option("--script", con_script, "script file (default stdin)");
    construct->add_option("-o,--output", out, "output path (default stdout)");

    // validate
    auto* validate = app.add_subcommand("validate", "validate an input file");
    std::string val_kind, val_file;
    validate->add_option("kind", val_kind, "diagram|quandle|presentation")->required();
    validate->add_option("file", val_file, "JSON file")->required();
    validate->add_option("-o,--output", out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (format != "json" && format != "text")
            throw budq::InputError("--format must be json or text");
        if (family->parsed()) return cmd_family(fam_kind, fam_p, fam_q, fam_d, out);
        if (present->parsed()) return cmd_present(pre_file, pre_simplify, pre_group, out);
        if (color->parsed()) return cmd_color(col_file, col_target, col_list, col_jobs, format, out);
        if (bound->parsed()) return cmd_bound(b_count, b_qsize, b_chi, b_classical, format, out);
        if (group->parsed()) return cmd_group(grp_file, grp_ab, grp_hom, format, out);
        if (construct->parsed()) return cmd_construct(con_file, con_script, out);
        if (validate->parsed()) return cmd_validate(val_kind, val_file, out);
    } catch (const budq::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const budq::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
