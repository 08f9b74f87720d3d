// Command-line front end: root data, Weyl classes, pairings, Ext computations
// and the verification suites.

#include "ghecke/module_io.hpp"
#include "ghecke/suites.hpp"

#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

using namespace ghecke;
using nlohmann::json;

namespace {

struct TypeArgs {
    std::string family = "A";
    int rank = 2;
    std::string k;
    int64_t cap = 10000000;

    WeylContext context() const {
        if (family.size() != 1) throw input_error("family must be one letter");
        char f = family[0];
        if (!valid_type(f, rank))
            throw input_error("invalid type " + family + std::to_string(rank));
        if (k.empty()) return make_context(f, rank, Rat(1), cap);
        std::vector<Rat> ks;
        std::stringstream ss(k);
        std::string item;
        while (std::getline(ss, item, ',')) ks.push_back(rat_parse(item));
        return make_context(f, rank, ks, cap);
    }
};

void add_type_options(CLI::App* cmd, TypeArgs& args) {
    cmd->add_option("--type", [&args](const std::vector<std::string>& vals) {
            if (vals.size() != 2) return false;
            args.family = vals[0];
            try {
                args.rank = std::stoi(vals[1]);
            } catch (...) {
                return false;
            }
            return true;
        }, "family and rank, e.g. --type A 2")
        ->expected(2);
    cmd->add_option("--k", args.k, "parameter values per simple-root orbit, e.g. --k 1 or --k 1,1/2");
    cmd->add_option("--cap", args.cap, "enumeration cap on |W|");
}

std::vector<int> parse_subset(const std::string& s, int rank) {
    if (s == "all" || s.empty()) {
        std::vector<int> all(rank);
        for (int i = 0; i < rank; ++i) all[i] = i;
        return all;
    }
    if (s == "none") return {};
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int v = std::stoi(item) - 1;
        if (v < 0 || v >= rank) throw input_error("simple index out of range: " + item);
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Rat> parse_vector(const std::string& s, int rank) {
    std::vector<Rat> out(rank, Rat(0));
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= rank) throw input_error("vector has too many entries");
        out[i++] = rat_parse(item);
    }
    if (i != rank) throw input_error("vector needs " + std::to_string(rank) + " entries");
    return out;
}

int cmd_rootsys(const TypeArgs& targs, bool as_json) {
    WeylContext ctx = targs.context();
    const RootDatum& rd = ctx.rd();
    if (as_json) {
        json j = json::parse(datum_to_json(rd));
        j["num_roots"] = rd.roots.size();
        j["num_positive"] = rd.npos;
        json roots = json::array();
        for (int r = 0; r < static_cast<int>(rd.roots.size()); ++r) roots.push_back(rd.root_name(r));
        j["roots"] = std::move(roots);
        json cart = json::array();
        for (int i = 0; i < rd.rank; ++i) {
            json row = json::array();
            for (int m = 0; m < rd.rank; ++m) row.push_back(rat_to_long(rd.cartan(i, m)));
            cart.push_back(std::move(row));
        }
        j["cartan"] = std::move(cart);
        json perm = json::array();
        for (int i : ctx.theta.perm) perm.push_back(i + 1);
        j["theta_perm"] = std::move(perm);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "type " << rd.family << rd.rank << ", |R| = " << rd.roots.size() << ", |R+| = "
              << rd.npos << ", |W| = " << ctx.table.order << "\n";
    std::cout << "cartan:\n" << rd.cartan.str() << "\n";
    std::cout << "positive roots:";
    for (int r = 0; r < rd.npos; ++r) std::cout << " " << rd.root_name(r);
    std::cout << "\ntheta permutation:";
    for (int i = 0; i < rd.rank; ++i) std::cout << " a" << i + 1 << "->a" << ctx.theta.perm[i] + 1;
    std::cout << "\n";
    return 0;
}

int cmd_classes(const TypeArgs& targs, bool twisted, bool as_json) {
    WeylContext ctx = targs.context();
    const ConjClassSet& cs = twisted ? ctx.tclasses : ctx.classes;
    const std::vector<Rat>& dets = twisted ? ctx.tclass_det : ctx.class_det;
    int elliptic = 0;
    for (const Rat& d : dets)
        if (sgn(d) != 0) ++elliptic;
    if (as_json) {
        json rows = json::array();
        for (int c = 0; c < cs.count(); ++c)
            rows.push_back({{"rep", ctx.table.word_str(cs.rep[c])},
                            {"size", cs.size[c]},
                            {"det", rat_str(dets[c])},
                            {"elliptic", sgn(dets[c]) != 0}});
        json j;
        j["twisted"] = twisted;
        j["classes"] = std::move(rows);
        j["elliptic_count"] = elliptic;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << (twisted ? "twisted " : "") << "classes of W(" << targs.family << targs.rank
              << "), det = det(1 - w" << (twisted ? " theta" : "") << ")\n";
    for (int c = 0; c < cs.count(); ++c)
        std::cout << "  " << ctx.table.word_str(cs.rep[c]) << "  size " << cs.size[c] << "  det "
                  << rat_str(dets[c]) << (sgn(dets[c]) != 0 ? "  elliptic" : "") << "\n";
    std::cout << "elliptic count: " << elliptic << "\n";
    return 0;
}

int cmd_pairing(const TypeArgs& targs, const std::string& fx, const std::string& fy, bool twisted,
                bool as_json) {
    DatumSpec sx = read_datum_spec(fx), sy = read_datum_spec(fy);
    if (!same_datum(sx, sy)) throw input_error("modules built over different data");
    WeylContext ctx = make_context(sx.family, sx.rank, sx.k, targs.cap);
    HModule x = read_module_file(fx, ctx.rd());
    HModule y = read_module_file(fy, ctx.rd());
    for (const HModule* m : {&x, &y}) {
        RelationReport rr = check_relations(*m);
        if (!rr.ok()) throw input_error(m->label + " fails relations: " + rr.str());
    }
    Rat value;
    if (!twisted) {
        ClassDomain dom = full_domain(ctx, false);
        value = elliptic_pairing(trace_class_function(dom, x), trace_class_function(dom, y));
    } else {
        ThetaSearch tx = find_theta_structure(ctx, x), ty = find_theta_structure(ctx, y);
        if (!tx.found() || !ty.found()) {
            std::cerr << "no theta structure on " << (tx.found() ? y.label : x.label) << "\n";
            return 1;
        }
        ClassDomain dom = full_domain(ctx, true);
        value = twisted_elliptic_pairing(twisted_trace_class_function(dom, x, tx.theta),
                                         twisted_trace_class_function(dom, y, ty.theta));
    }
    if (as_json) {
        json j;
        j["twisted"] = twisted;
        j["value"] = rat_str(value);
        // characters as maps from class-representative words to rationals
        ClassDomain dom = full_domain(ctx, twisted);
        auto char_map = [&](const HModule& m) {
            json out = json::object();
            ClassFn f = twisted ? twisted_trace_class_function(dom, m, find_theta_structure(ctx, m).theta)
                                : trace_class_function(dom, m);
            for (int cc = 0; cc < dom.count(); ++cc)
                out[ctx.table.word_str(dom.rep[cc])] = rat_str(f.v[cc]);
            return out;
        };
        j["x_char"] = char_map(x);
        j["y_char"] = char_map(y);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (twisted ? "twisted elliptic pairing: " : "elliptic pairing: ")
                  << rat_str(value) << "\n";
    }
    return 0;
}

int cmd_rigid(const TypeArgs& targs, bool char_only, bool as_json) {
    WeylContext ctx = targs.context();
    ExtOptions opts;
    json out = json::array();
    bool all_ok = true;
    for (const auto& J : rigid_subsets(ctx.table)) {
        bool full = !char_only && static_cast<int>(J.size()) < ctx.rd().rank + 1;
        RigidReport rr;
        try {
            rr = rigid_verification(ctx, J, full && ctx.rd().rank <= 3, opts);
        } catch (const cap_error& e) {
            std::cout << "J = " << subset_str(J) << " (type "
                      << (J.empty() ? "empty" : subset_type(ctx.rd(), J))
                      << "): skipped, " << e.what() << "\n";
            continue;
        }
        all_ok = all_ok && rr.ok();
        if (as_json) {
            json j;
            j["J"] = subset_str(J);
            j["type"] = J.empty() ? "empty" : subset_type(ctx.rd(), J);
            j["r"] = rr.r;
            j["ok"] = rr.ok();
            j["ep"] = rat_str(rr.ep_char);
            j["ep_theta"] = rat_str(rr.ep_theta_char);
            if (rr.full_pipeline) {
                j["dims"] = rr.ext.dims;
                json tr = json::array();
                for (const Rat& t : *rr.ext.theta_traces) tr.push_back(rat_str(t));
                j["theta_traces"] = std::move(tr);
            }
            j["failures"] = rr.failures;
            out.push_back(std::move(j));
        } else {
            std::cout << "J = " << subset_str(J) << " (type "
                      << (J.empty() ? "empty" : subset_type(ctx.rd(), J)) << "), r = " << rr.r
                      << ": " << (rr.ok() ? "ok" : "FAIL");
            if (rr.full_pipeline) std::cout << "  " << rr.ext.str();
            else
                std::cout << "  ep " << rat_str(rr.ep_char) << " ep_theta "
                          << rat_str(rr.ep_theta_char);
            for (const auto& f : rr.failures) std::cout << " [" << f << "]";
            std::cout << "\n";
        }
    }
    if (as_json) std::cout << out.dump(2) << "\n";
    return all_ok ? 0 : 1;
}

json ext_result_json(const ExtResult& er) {
    json j;
    j["dims"] = er.dims;
    if (er.theta_traces) {
        json tr = json::array();
        for (const Rat& t : *er.theta_traces) tr.push_back(rat_str(t));
        j["theta_traces"] = std::move(tr);
    }
    j["ep"] = er.ep;
    if (er.ep_theta) j["ep_theta"] = rat_str(*er.ep_theta);
    if (er.ext_extended_dims) j["extended_dims"] = *er.ext_extended_dims;
    return j;
}

int cmd_ext(const std::string& fx, const std::string& fy, bool with_theta, bool as_json,
            int64_t cap, Exec ex) {
    DatumSpec sx = read_datum_spec(fx), sy = read_datum_spec(fy);
    if (!same_datum(sx, sy)) throw input_error("modules built over different data");
    WeylContext ctx = make_context(sx.family, sx.rank, sx.k, cap);
    HModule x = read_module_file(fx, ctx.rd());
    HModule y = read_module_file(fy, ctx.rd());
    for (const HModule* m : {&x, &y}) {
        RelationReport rr = check_relations(*m);
        if (!rr.ok()) throw input_error(m->label + " fails relations: " + rr.str());
    }
    ExtOptions opts;
    opts.ex = ex;
    ExtResult er;
    if (with_theta) {
        ThetaSearch tx = find_theta_structure(ctx, x), ty = find_theta_structure(ctx, y);
        if (!tx.found() || !ty.found()) {
            std::cerr << "theta structure not found on " << (tx.found() ? y.label : x.label)
                      << " (intertwiner dim " << (tx.found() ? ty.intertwiner_dim : tx.intertwiner_dim)
                      << ")\n";
            return 1;
        }
        er = theta_star_on_ext(ctx, x, y, tx.theta, ty.theta, opts);
    } else {
        er = ext_dims(ctx, x, y, opts);
    }
    if (as_json) std::cout << ext_result_json(er).dump(2) << "\n";
    else std::cout << er.str() << "\n";
    return 0;
}

int cmd_induce(const TypeArgs& targs, const std::string& j_spec, const std::string& u_name,
               const std::string& nu_spec, const std::string& label, const std::string& out_path) {
    WeylContext ctx = targs.context();
    const RootDatum& rd = ctx.rd();
    std::vector<int> J = parse_subset(j_spec, rd.rank);
    std::vector<Rat> nu = parse_vector(nu_spec, rd.rank);
    int sign = u_name == "steinberg" ? -1 : u_name == "trivial" ? 1 : 0;
    if (sign == 0) throw input_error("unknown factor module '" + u_name + "' (steinberg|trivial)");
    HModule u = one_dim_parabolic(rd, J, std::vector<int>(J.size(), sign), std::vector<Rat>(rd.rank, Rat(0)));
    u.label = u_name;
    HModule x = induced_module(ctx, J, u, nu, label);
    RelationReport rr = check_relations(x);
    if (!rr.ok()) throw std::logic_error("induced module fails relations: " + rr.str());
    if (out_path.empty()) std::cout << module_to_json(x) << "\n";
    else {
        write_module_file(x, out_path);
        std::cout << "wrote " << out_path << " (dim " << x.dim << ")\n";
    }
    return 0;
}

int cmd_verify(const std::string& suite, bool as_json, Exec ex) {
    SuiteReport rep = run_suite(suite, ex);
    print_report(rep, std::cout, as_json);
    if (!as_json && suite == "paper") print_criterion_summary(rep, std::cout);
    return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic computations for graded affine Hecke algebra modules"};
    app.require_subcommand(1);
    bool as_json = false, twisted = false, with_theta = false, serial = false, char_only = false;
    app.add_flag("--json", as_json, "JSON output");
    app.add_flag("--serial", serial, "force the serial kernels");

    TypeArgs targs;

    auto* rootsys_cmd = app.add_subcommand("rootsys", "construct a root datum and print it");
    add_type_options(rootsys_cmd, targs);

    auto* classes_cmd = app.add_subcommand("classes", "conjugacy or twisted classes with ellipticity");
    add_type_options(classes_cmd, targs);
    classes_cmd->add_flag("--twisted", twisted, "theta-twisted classes");

    std::string file_x, file_y;
    auto* pairing_cmd = app.add_subcommand("pairing", "elliptic pairing of two module characters");
    add_type_options(pairing_cmd, targs);
    pairing_cmd->add_option("--x", file_x, "module file")->required();
    pairing_cmd->add_option("--y", file_y, "module file")->required();
    pairing_cmd->add_flag("--twisted", twisted, "twisted elliptic pairing");

    auto* rigid_cmd = app.add_subcommand("rigid", "verify the rigid-module assertions for every rigid J");
    add_type_options(rigid_cmd, targs);
    rigid_cmd->add_flag("--char-only", char_only, "skip the full matrix pipeline");

    auto* ext_cmd = app.add_subcommand("ext", "Ext dimensions (and theta traces) of two module files");
    ext_cmd->add_option("--x", file_x, "module file")->required();
    ext_cmd->add_option("--y", file_y, "module file")->required();
    ext_cmd->add_flag("--theta", with_theta, "include the theta* action");
    int64_t ext_cap = 10000000;
    ext_cmd->add_option("--cap", ext_cap, "enumeration cap on |W|");

    std::string j_spec = "all", u_name = "steinberg", nu_spec, label, out_path;
    auto* induce_cmd = app.add_subcommand("induce", "write a parabolically induced module file");
    add_type_options(induce_cmd, targs);
    induce_cmd->add_option("--j", j_spec, "simple indices of J: 'all', 'none' or e.g. '1,2'");
    induce_cmd->add_option("--u", u_name, "factor module on J: steinberg or trivial");
    induce_cmd->add_option("--nu", nu_spec, "character of V_J-perp, e.g. '0,2'");
    induce_cmd->add_option("--label", label, "module label");
    induce_cmd->add_option("-o,--out", out_path, "output file (stdout when omitted)");

    std::string suite = "core";
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("--suite", suite, "core, paper or conjecture");

    // global flags may follow the subcommand
    for (auto* sc : {rootsys_cmd, classes_cmd, pairing_cmd, rigid_cmd, ext_cmd, induce_cmd, verify_cmd})
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Exec ex = serial ? Exec::serial : Exec::parallel;
    try {
        if (rootsys_cmd->parsed()) return cmd_rootsys(targs, as_json);
        if (classes_cmd->parsed()) return cmd_classes(targs, twisted, as_json);
        if (pairing_cmd->parsed()) return cmd_pairing(targs, file_x, file_y, twisted, as_json);
        if (rigid_cmd->parsed()) return cmd_rigid(targs, char_only, as_json);
        if (ext_cmd->parsed()) return cmd_ext(file_x, file_y, with_theta, as_json, ext_cap, ex);
        if (induce_cmd->parsed())
            return cmd_induce(targs, j_spec, u_name, nu_spec, label, out_path);
        if (verify_cmd->parsed()) return cmd_verify(suite, as_json, ex);
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const cap_error& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const weight_error& e) {
        std::cerr << "weight error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
