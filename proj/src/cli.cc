#include "tcc/cli.h"

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tcc/cluster.h"
#include "tcc/codestate.h"
#include "tcc/colex.h"
#include "tcc/correspondence.h"
#include "tcc/errors.h"
#include "tcc/io.h"
#include "tcc/parallel.h"
#include "tcc/patches.h"
#include "tcc/pauli.h"
#include "tcc/spinmodel.h"

namespace tcc {

namespace {

// Raised by commands whose computation finished but did not pass.
class CheckFailed : public std::runtime_error {
  public:
    CheckFailed(const std::string& what, Json payload) : std::runtime_error(what), payload(std::move(payload)) {}
    Json payload;
};

struct Options {
    unsigned threads = 0;
    std::string family, in, out, lattice, couplings, method = "exact", sign = "+", widths = "3,6,9";
    std::string beta_j = "0.5", fields, basis = "z", order, x, coeffs;
    std::size_t rows = 3, cols = 3, samples = 1000;
    std::uint64_t seed = 0;
    double lo = 0.2, hi = 0.8, step = 0.01, tol = 1e-10;
};

struct Command {
    CLI::App* app;
    std::string name;
    std::function<Json()> body;
};

std::vector<double> parse_doubles(const std::string& list, const char* what) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw std::invalid_argument(std::string(what) + ": bad number '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    return out;
}

std::vector<std::size_t> parse_indices(const std::string& list, const char* what) {
    std::vector<std::size_t> out;
    for (double v : parse_doubles(list, what)) {
        if (v < 0 || v != std::floor(v)) throw std::invalid_argument(std::string(what) + ": expected non-negative integers");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

// Loads a lattice and rejects anything that fails validation.
LatticeFile load_valid_lattice(const std::string& path) {
    LatticeFile f = lattice_from_json(read_json_file(path));
    const LatticeReport report = f.colex ? validate(*f.colex) : validate(f.dual);
    if (!report.all_passed()) {
        for (const auto& c : report.checks) {
            if (!c.passed) throw InvalidLattice(path + ": check " + c.name + " failed: " + c.detail);
        }
    }
    return f;
}

const Colex2& need_colex(const LatticeFile& f, const std::string& path) {
    if (!f.colex) throw InvalidLattice(path + ": a closed dual has no colex attached; pass the colex2 file instead");
    return *f.colex;
}

std::string outcome_string(const BitVec& bits, const std::vector<std::size_t>& order) {
    std::string s(bits.size(), '-');
    for (std::size_t v : order) s[v] = bits.get(v) ? '1' : '0';
    return s;
}

Json option_config(const CLI::App* app) {
    Json config;
    for (const CLI::Option* opt : app->get_options()) {
        if (opt->get_lnames().empty() || opt->get_lnames()[0] == "help") continue;
        const auto& results = opt->results();
        config[opt->get_lnames()[0]] = results.empty() ? opt->get_default_str() : results.back();
    }
    return config;
}

void write_goldens(const std::string& dir, Json& files) {
    std::filesystem::create_directories(dir);
    struct Golden {
        const char* name;
        Json doc;
        LatticeReport report;
    };
    auto bordered = [](const char* name, const DualTriangulation& d) {
        const BorderedColex b = build_bordered(d);
        return Golden{name, to_json(b), validate(b)};
    };
    auto closed = [](const char* name, const Colex2& c) { return Golden{name, to_json(c), validate(c)}; };
    const std::vector<Golden> goldens = {
        bordered("hexpatch.json", hexagon_patch()),
        bordered("single_triangle.json", single_triangle_patch()),
        closed("hex_torus_1x3.json", build_hex_torus(1, 3)),
        closed("hex_torus_3x3.json", build_hex_torus(3, 3)),
        bordered("uj_patch.json", union_jack_patch(2, 2)),
        closed("four8_torus_2x2.json", build_48_torus(2, 2)),
        bordered("tri_patch_3x4.json", triangular_parallelogram_patch(3, 4)),
    };
    for (const auto& g : goldens) {
        const std::string path = (std::filesystem::path(dir) / g.name).string();
        write_text_file(path, dump_json(g.doc));
        files.push_back(Json{{"file", path}, {"kind", g.doc["kind"]}, {"valid", g.report.all_passed()}});
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Topological color codes and 3-body Ising partition functions", kToolName};
    app.require_subcommand(1);
    Options o;
    app.add_option("--threads", o.threads, "Worker threads (0 = all cores); results do not depend on it")
        ->capture_default_str();
    app.set_version_flag("--version", kToolVersion);
    std::vector<Command> commands;
    auto add = [&](CLI::App* parent, const char* name, const char* help, std::function<Json()> body) {
        CLI::App* sub = parent->add_subcommand(name, help);
        commands.push_back({sub, parent == &app ? std::string(name) : parent->get_name() + " " + name, std::move(body)});
        return sub;
    };

    // colex
    CLI::App* colex = app.add_subcommand("colex", "Build, dualize, cut and validate lattices");
    colex->require_subcommand(1);
    auto* gen = add(colex, "gen", "Generate a closed colex (torus)", [&] {
        Colex2 c;
        if (o.family == "hex") {
            c = build_hex_torus(o.rows, o.cols);
        } else if (o.family == "four8") {
            c = build_48_torus(o.rows, o.cols);
        } else {
            throw std::invalid_argument("--family must be hex or four8");
        }
        write_text_file(o.out, dump_json(to_json(c)));
        return Json{{"file", o.out}, {"vertices", c.num_vertices}, {"edges", c.edges.size()}, {"faces", c.faces.size()},
                    {"valid", validate(c).all_passed()}};
    });
    gen->add_option("--family", o.family, "hex or four8")->required();
    gen->add_option("--rows", o.rows)->capture_default_str();
    gen->add_option("--cols", o.cols)->capture_default_str();
    gen->add_option("--out", o.out, "Output lattice JSON")->required();

    auto* dual = add(colex, "dual", "Write the dual triangulation of a colex", [&] {
        const LatticeFile f = load_valid_lattice(o.in);
        write_text_file(o.out, dump_json(to_json(f.dual)));
        return Json{{"file", o.out}, {"sites", f.dual.num_sites()}, {"triangles", f.dual.num_triangles()}};
    });
    dual->add_option("--in", o.in)->required()->check(CLI::ExistingFile);
    dual->add_option("--out", o.out)->required();

    auto* border = add(colex, "border", "Cut a bordered colex out of a dual patch", [&] {
        const Json j = read_json_file(o.in);
        const BorderedColex b = build_bordered(dual_from_json(j));
        write_text_file(o.out, dump_json(to_json(b)));
        return Json{{"file", o.out}, {"vertices", b.colex.num_vertices}, {"complete_faces", b.num_complete_faces()},
                    {"partial_faces", b.num_partial_faces()}};
    });
    border->add_option("--in", o.in, "Dual patch JSON")->required()->check(CLI::ExistingFile);
    border->add_option("--out", o.out)->required();

    auto* val = add(colex, "validate", "Run all lattice checks; exit 0 iff all pass", [&] {
        // Parse without building derived lattices, which would reject invalid input early.
        const Json j = read_json_file(o.in);
        const std::string kind = j.is_object() ? j.value("kind", "") : "";
        LatticeReport report;
        if (kind == "bordered") {
            report = validate(BorderedColex{colex_from_json(j), dual_from_json(j.at("source"))});
        } else if (kind == "colex2") {
            report = validate(colex_from_json(j));
        } else if (kind == "dual") {
            report = validate(dual_from_json(j));
        } else {
            throw InvalidLattice(o.in + ": unknown lattice kind \"" + kind + "\"");
        }
        Json payload = to_json(report);
        if (!report.all_passed()) throw CheckFailed("lattice validation failed", payload);
        return payload;
    });
    val->add_option("--in", o.in)->required()->check(CLI::ExistingFile);

    // code
    CLI::App* code = app.add_subcommand("code", "Color code stabilizers and states");
    code->require_subcommand(1);
    auto* info = add(code, "info", "Qubits, stabilizer rank, encoded qubits", [&] {
        const LatticeFile f = load_valid_lattice(o.in);
        const Colex2& c = need_colex(f, o.in);
        const StabilizerSet s = stabilizer_set(c);
        const LatticeReport r = validate(c);
        Json j;
        j["n"] = c.num_vertices;
        j["generators"] = s.generators.size();
        j["rank"] = s.rank();
        j["k"] = encoded_qubits(c);
        j["chi"] = r.euler_characteristic;
        j["h1"] = r.betti1 ? Json(*r.betti1) : Json(nullptr);
        j["k_from_euler"] = c.closed ? Json(encoded_qubits_from_euler(c)) : Json(nullptr);
        j["homology_gap"] = homology_gap(c);
        return j;
    });
    info->add_option("--in", o.in)->required()->check(CLI::ExistingFile);

    auto* state = add(code, "state", "Write the code state amplitudes", [&] {
        const LatticeFile f = load_valid_lattice(o.in);
        const StateVector s = code_state(need_colex(f, o.in));
        write_state_file(o.out, s);
        return Json{{"file", o.out}, {"qubits", s.num_qubits}, {"support", s.support_size()}, {"norm_squared", s.norm_squared()},
                    {"format", "little-endian float64 (re, im) pairs, basis index order, bit q = qubit q"}};
    });
    state->add_option("--in", o.in)->required()->check(CLI::ExistingFile);
    state->add_option("--out", o.out)->required();

    auto* ov = add(code, "overlap", "Overlap of the code state with a product state", [&] {
        const LatticeFile f = load_valid_lattice(o.in);
        const Colex2& c = need_colex(f, o.in);
        const ProductState phi = product_state_from_json(read_json_file(o.coeffs), c.num_vertices);
        Json j;
        j["dense"] = to_json(overlap(code_state(c), phi));
        try {
            j["string_net"] = to_json(string_net_overlap(c, phi));
        } catch (const DomainError& e) {
            j["string_net"] = nullptr;
            j["string_net_error"] = e.what();
        }
        return j;
    });
    ov->add_option("--in", o.in)->required()->check(CLI::ExistingFile);
    ov->add_option("--coeffs", o.coeffs)->required()->check(CLI::ExistingFile);

    // spin
    CLI::App* spin = app.add_subcommand("spin", "Classical 3-body Ising model");
    spin->require_subcommand(1);
    auto* z = add(spin, "z", "Partition function", [&] {
        const LatticeFile f = load_valid_lattice(o.lattice);
        const CouplingSet c = couplings_from_json(read_json_file(o.couplings), f.dual);
        Complex value;
        if (o.method == "exact") {
            value = partition_exact(f.dual, c);
        } else if (o.method == "hight") {
            value = partition_high_t(f.dual, c);
        } else {
            throw std::invalid_argument("--method must be exact or hight");
        }
        return Json{{"method", o.method}, {"sites", f.dual.num_sites()}, {"Z", to_json(value)}};
    });
    z->add_option("--lattice", o.lattice)->required()->check(CLI::ExistingFile);
    z->add_option("--couplings", o.couplings)->required()->check(CLI::ExistingFile);
    z->add_option("--method", o.method, "exact or hight")->capture_default_str();

    auto* ground = add(spin, "ground", "Ground states at uniform J = +1 or -1", [&] {
        const LatticeFile f = load_valid_lattice(o.lattice);
        int s = 0;
        if (o.sign == "+" || o.sign == "+1") s = 1;
        if (o.sign == "-" || o.sign == "-1") s = -1;
        if (s == 0) throw std::invalid_argument("--sign must be + or -");
        Json states = Json::array();
        for (const auto& g : ground_states(f.dual, s)) {
            Json tag = nullptr;
            for (const auto& t : parity_tags(s)) {
                if (tag_config(f.dual, t) == g) tag = t;
            }
            states.push_back(Json{{"config", g.bits.to_string()}, {"tag", tag}});
        }
        return Json{{"sign", s}, {"count", states.size()}, {"states", states}};
    });
    ground->add_option("--lattice", o.lattice)->required()->check(CLI::ExistingFile);
    ground->add_option("--sign", o.sign, "+ or -")->capture_default_str();

    auto* crit = add(spin, "critical", "Transfer-matrix specific heat scan", [&] {
        if (o.family != "tri") throw std::invalid_argument("--family: only tri has a transfer matrix");
        const std::vector<std::size_t> widths = parse_indices(o.widths, "--widths");
        std::string csv = "width,betaJ,free_energy,specific_heat\n";
        for (std::size_t w : widths) {
            for (const auto& p : specific_heat_scan(w, o.lo, o.hi, o.step)) {
                csv += std::to_string(w) + "," + format_double(p.beta_j) + "," + format_double(p.free_energy) + "," +
                       format_double(p.specific_heat) + "\n";
            }
        }
        const CriticalityReport r = criticality_scan(widths);
        write_text_file(o.out, csv);
        Json peaks = Json::array();
        for (const auto& p : r.peaks) {
            peaks.push_back(Json{{"width", p.width}, {"betaJ", p.beta_j}, {"specific_heat", p.specific_heat}});
        }
        const ReferenceConstants& ref = r.reference;
        return Json{{"file", o.out},
                    {"peaks", peaks},
                    {"estimated_critical_coupling", r.estimated_critical_coupling},
                    {"self_dual_coupling", self_dual_coupling()},
                    {"reference", Json{{"critical_coupling", ref.critical_coupling},
                                       {"triangular_alpha", ref.triangular_alpha},
                                       {"triangular_nu", ref.triangular_nu},
                                       {"triangular_beta", ref.triangular_beta},
                                       {"triangular_eta", ref.triangular_eta},
                                       {"union_jack_alpha", ref.union_jack_alpha}}}};
    });
    crit->add_option("--family", o.family, "tri")->required();
    crit->add_option("--widths", o.widths, "Comma-separated strip widths (multiples of 3, at most 12)")->capture_default_str();
    crit->add_option("--lo", o.lo)->capture_default_str();
    crit->add_option("--hi", o.hi)->capture_default_str();
    crit->add_option("--step", o.step)->capture_default_str();
    crit->add_option("--out", o.out, "CSV: width,betaJ,free_energy,specific_heat")->required();

    // verify
    CLI::App* verify = app.add_subcommand("verify", "Check Z = 2^N O identities");
    verify->require_subcommand(1);
    auto* vo = add(verify, "overlap", "Zero-field identity on a bordered lattice", [&] {
        const LatticeFile f = load_valid_lattice(o.lattice);
        const Colex2& c = need_colex(f, o.lattice);
        Json rows = Json::array();
        bool ok = true;
        for (double k : parse_doubles(o.beta_j, "--betaJ")) {
            const IdentityCheck r = verify_overlap_identity(c, f.dual, std::vector<double>(f.dual.num_triangles(), k));
            const bool pass = r.rel_err < o.tol;
            ok = ok && pass;
            rows.push_back(Json{{"betaJ", k}, {"Z", r.lhs.real()}, {"two_pow_N_overlap", r.rhs.real()},
                                {"rel_err", r.rel_err}, {"passed", pass}});
        }
        Json payload{{"N", f.dual.num_sites()}, {"tolerance", o.tol}, {"checks", rows}};
        if (!ok) throw CheckFailed("overlap identity outside tolerance", payload);
        return payload;
    });
    vo->add_option("--lattice", o.lattice)->required()->check(CLI::ExistingFile);
    vo->add_option("--betaJ", o.beta_j, "Comma-separated couplings")->capture_default_str();
    vo->add_option("--tol", o.tol)->capture_default_str();

    auto* vf = add(verify, "field", "Identity with per-vertex couplings and per-face fields", [&] {
        const LatticeFile f = load_valid_lattice(o.lattice);
        const Colex2& c = need_colex(f, o.lattice);
        const FieldSpec spec = fields_from_json(read_json_file(o.fields), c.num_vertices, c.faces.size());
        const FieldIdentityCheck r = verify_field_identity(c, f.dual, spec);
        Json payload{{"N", f.dual.num_sites()}, {"Z", r.lhs},
                     {"two_pow_N_overlap_dense", r.rhs_dense ? Json(*r.rhs_dense) : Json(nullptr)},
                     {"two_pow_N_overlap_expansion", r.rhs_expansion}, {"rel_err", r.rel_err}, {"tolerance", o.tol}};
        if (!(r.rel_err < o.tol)) throw CheckFailed("field identity outside tolerance", payload);
        return payload;
    });
    vf->add_option("--lattice", o.lattice)->required()->check(CLI::ExistingFile);
    vf->add_option("--fields", o.fields, "{\"beta\": .., \"J\": [..], \"h\": [..]}")->required()->check(CLI::ExistingFile);
    vf->add_option("--tol", o.tol)->capture_default_str();

    // mqc
    CLI::App* mqc = app.add_subcommand("mqc", "Sequential single-qubit measurements of the code state");
    mqc->require_subcommand(1);
    auto bases_for = [&](std::size_t n) {
        if (o.basis == "z" || o.basis == "x") return bases_from_json(Json(o.basis), n);
        return bases_from_json(read_json_file(o.basis), n);
    };
    auto* sample = add(mqc, "sample", "Sample measurement records", [&] {
        const LatticeFile f = load_valid_lattice(o.lattice);
        const Colex2& c = need_colex(f, o.lattice);
        const auto bases = bases_for(c.num_vertices);
        std::vector<std::size_t> order;
        if (o.order.empty()) {
            for (std::size_t v = 0; v < c.num_vertices; ++v) order.push_back(v);
        } else {
            order = parse_indices(o.order, "--order");
        }
        const auto samples = mqc_sample(c, bases, order, o.seed, o.samples);
        std::string csv = "sample_index,outcome_bits,probability\n";
        for (std::size_t i = 0; i < samples.size(); ++i) {
            csv += std::to_string(i) + "," + outcome_string(samples[i].outcome.bits, order) + "," +
                   format_double(samples[i].probability) + "\n";
        }
        write_text_file(o.out, csv);
        Json payload{{"file", o.out}, {"samples", samples.size()}, {"seed", o.seed}, {"order", order},
                     {"rng", "mt19937_64 seeded with splitmix64(seed + sample_index)"}};
        if (order.size() == c.num_vertices) {
            const auto joint = mqc_joint(c, bases);
            double dev = 0;
            for (const auto& s : samples) dev = std::max(dev, std::abs(s.probability - joint[s.outcome.bits.to_mask()]));
            payload["max_joint_deviation"] = dev;
        }
        return payload;
    });
    sample->add_option("--lattice", o.lattice)->required()->check(CLI::ExistingFile);
    sample->add_option("--basis", o.basis, "z, x or a basis JSON file")->capture_default_str();
    sample->add_option("--n-samples", o.samples)->capture_default_str();
    sample->add_option("--seed", o.seed)->capture_default_str();
    sample->add_option("--order", o.order, "Comma-separated measurement order (default: vertex order)");
    sample->add_option("--out", o.out, "CSV: sample_index,outcome_bits,probability")->required();

    auto* joint = add(mqc, "joint", "Full outcome distribution", [&] {
        const LatticeFile f = load_valid_lattice(o.lattice);
        const Colex2& c = need_colex(f, o.lattice);
        const auto p = mqc_joint(c, bases_for(c.num_vertices));
        std::vector<std::size_t> all(c.num_vertices);
        for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
        Json table = Json::array();
        CompensatedSum<double> total;
        for (std::size_t m = 0; m < p.size(); ++m) {
            total.add(p[m]);
            if (p[m] != 0) table.push_back(Json{{"outcome_bits", outcome_string(BitVec::from_mask(c.num_vertices, m), all)}, {"probability", p[m]}});
        }
        return Json{{"nonzero", table.size()}, {"total", total.value()}, {"probabilities", table}};
    });
    joint->add_option("--lattice", o.lattice)->required()->check(CLI::ExistingFile);
    joint->add_option("--basis", o.basis, "z, x or a basis JSON file")->capture_default_str();

    // cluster
    CLI::App* cluster = app.add_subcommand("cluster", "Bipartite cluster state preparation");
    cluster->require_subcommand(1);
    auto* cs = add(cluster, "state", "Write the cluster state amplitudes", [&] {
        const LatticeFile f = load_valid_lattice(o.lattice);
        const Colex2& c = need_colex(f, o.lattice);
        const ClusterGraph g = build_cluster_graph(c);
        const StateVector s = cluster_state(g);
        write_state_file(o.out, s);
        return Json{{"file", o.out}, {"u1", g.num_u1}, {"u2", g.num_u2}, {"edges", g.edges.size()},
                    {"support", s.support_size()}, {"matches_closed_form", s == cluster_state_closed_form(c, g)}};
    });
    cs->add_option("--lattice", o.lattice)->required()->check(CLI::ExistingFile);
    cs->add_option("--out", o.out)->required();

    auto* cp = add(cluster, "project", "Measure the face qubits with outcomes x", [&] {
        const LatticeFile f = load_valid_lattice(o.lattice);
        const Colex2& c = need_colex(f, o.lattice);
        const ClusterGraph g = build_cluster_graph(c);
        const FaceChain x{BitVec::from_string(o.x)};
        if (x.x.size() != g.num_u2) {
            throw std::invalid_argument("--x needs " + std::to_string(g.num_u2) + " bits, one per face");
        }
        const StateVector p = project_faces(cluster_state(g), g, x);
        if (!o.out.empty()) write_state_file(o.out, p);
        Json j{{"x", o.x}, {"support", p.support_size()}, {"norm_squared", p.norm_squared()}};
        if (x.x.none()) j["equals_code_state"] = p == code_state(c);
        return j;
    });
    cp->add_option("--lattice", o.lattice)->required()->check(CLI::ExistingFile);
    cp->add_option("--x", o.x, "Face outcomes, face 0 first")->required();
    cp->add_option("--out", o.out, "Optional STATE.bin for the projected state");

    auto* golden = add(&app, "goldens", "Write the canonical test lattices", [&] {
        Json files = Json::array();
        write_goldens(o.out, files);
        return Json{{"directory", o.out}, {"files", files}};
    });
    golden->add_option("--out", o.out, "Output directory")->required();

    std::vector<std::string> argv_store = {kToolName};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const Command* selected = nullptr;
    for (const auto& c : commands) {
        if (c.app->parsed()) selected = &c;
    }
    if (selected == nullptr) {
        err << "no command given; see --help\n";
        return kExitUsage;
    }
    set_thread_count(o.threads);
    Json envelope;
    envelope["tool"] = kToolName;
    envelope["version"] = kToolVersion;
    envelope["command"] = selected->name;
    Json config = option_config(selected->app);
    config["threads"] = o.threads;
    envelope["config"] = config;
    const auto start = std::chrono::steady_clock::now();
    auto finish = [&](Json payload, int code) {
        envelope["payload"] = std::move(payload);
        envelope["exit_code"] = code;
        envelope["timing"] = Json{
            {"wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
        out << dump_json(envelope);
        return code;
    };
    try {
        return finish(selected->body(), kExitOk);
    } catch (const CheckFailed& e) {
        err << "tcc: " << e.what() << "\n";
        return finish(e.payload, kExitFailed);
    } catch (const HomologyObstruction& e) {
        err << "tcc: " << e.what() << "\n";
        return finish(Json{{"error", e.what()}}, kExitFailed);
    } catch (const CapExceeded& e) {
        err << "tcc: cap exceeded: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidLattice& e) {
        err << "tcc: invalid lattice: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "tcc: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace tcc
