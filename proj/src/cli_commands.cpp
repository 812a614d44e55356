#include "crnf/cli_commands.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "crnf/io.hpp"
#include "crnf/solver.hpp"
#include "crnf/trace.hpp"

namespace crnf {

namespace {

std::string read_text(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw validation_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw validation_error("cannot write file: " + path);
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

NormalFormSpec load_spec(const std::string& preset_opt, const std::string& spec_path, int max_weight,
                         std::istream& in) {
    if (!preset_opt.empty()) {
        auto p = preset_from_name(preset_opt);
        if (!p) throw validation_error("unknown preset: " + preset_opt);
        return preset(*p, max_weight);
    }
    return spec_from_json(parse_json_text(read_text(spec_path, in)), max_weight);
}

std::string condition_text(const Condition& c) {
    std::ostringstream ss;
    if (c.t > 0) ss << "tr^" << c.t << " ";
    ss << "phi_{" << c.k << "," << c.m << "," << c.l << "}";
    return ss.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact normal forms for Levi-nondegenerate hypersurface jets"};
    app.require_subcommand(1);

    std::string jet_path, map_path, spec_path, preset_opt;
    std::string out_nf = "-", out_map, out_path = "-", out_q, out_r;
    int max_weight = -1, s_power = 1;
    bool oracle = false, verify = false;

    auto add_spec_opts = [&](CLI::App* cmd) {
        cmd->add_option("--preset", preset_opt, "one of chern-moser, nf1, nf2, nf12, min-l, mixed");
        cmd->add_option("--spec", spec_path, "path to a spec document (JSON)");
    };

    CLI::App* cmd_normalize = app.add_subcommand("normalize", "compute the normal form and normalizing map");
    cmd_normalize->add_option("jet", jet_path, "jet document path, or - for stdin")->required();
    add_spec_opts(cmd_normalize);
    cmd_normalize->add_option("--max-weight", max_weight, "re-truncate the jet to this weight first");
    cmd_normalize->add_option("--out-nf", out_nf, "where to write the normal form (default -)");
    cmd_normalize->add_option("--out-map", out_map, "where to write the normalizing map");
    cmd_normalize->add_flag("--oracle", oracle, "cross-check against the generic linear-solve engine");

    CLI::App* cmd_check = app.add_subcommand("check", "evaluate the normalization conditions on a jet");
    cmd_check->add_option("jet", jet_path)->required();
    add_spec_opts(cmd_check);

    CLI::App* cmd_apply = app.add_subcommand("apply", "transform a jet by a map");
    cmd_apply->add_option("jet", jet_path)->required();
    cmd_apply->add_option("map", map_path)->required();
    cmd_apply->add_option("--out", out_path, "where to write the image jet (default -)");
    cmd_apply->add_flag("--verify", verify, "re-check the transformation identity residual");

    CLI::App* cmd_decompose = app.add_subcommand("decompose", "split P = Q<z,z>^s + R with tr^s R = 0");
    cmd_decompose->add_option("poly", jet_path, "series document path, or - for stdin")->required();
    cmd_decompose->add_option("--s", s_power, "power of the Levi form")->required();
    cmd_decompose->add_option("--out-q", out_q);
    cmd_decompose->add_option("--out-r", out_r);
    cmd_decompose->add_flag("--verify", verify, "re-multiply and re-trace the result");

    CLI::App* cmd_spec = app.add_subcommand("spec", "spec document utilities");
    cmd_spec->require_subcommand(1);
    CLI::App* cmd_spec_validate = cmd_spec->add_subcommand("validate", "validate a spec document");
    cmd_spec_validate->add_option("spec", spec_path)->required();
    cmd_spec_validate->add_option("--max-weight", max_weight, "weight the table must cover")->required();

    std::vector<const char*> argv{"crnf"};
    for (auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 3;
    }

    try {
        if (cmd_normalize->parsed() || cmd_check->parsed()) {
            if (preset_opt.empty() == spec_path.empty()) {
                err << "error: exactly one of --preset and --spec is required\n";
                return 3;
            }
            HypersurfaceJet m = jet_from_json(parse_json_text(read_text(jet_path, in)));
            if (max_weight >= 0 && max_weight != m.max_weight())
                m = HypersurfaceJet::validate(m.phi().truncated(max_weight), m.sig());
            NormalFormSpec spec = load_spec(preset_opt, spec_path, m.max_weight(), in);
            if (cmd_check->parsed()) {
                auto violations = check(m, spec);
                for (auto& v : violations)
                    out << "violation: " << condition_text(v.cond)
                        << " residual " << series_to_json(v.residual, m.sig())["terms"].dump() << "\n";
                out << violations.size() << " violation(s)\n";
                return violations.empty() ? 0 : 1;
            }
            auto res = normalize(m, spec);
            if (oracle) {
                auto res2 = normalize_oracle(m, spec);
                if (!(res2.normal_form == res.normal_form) || !(res2.map == res.map))
                    throw internal_error("oracle result differs from the line-solver result");
            }
            write_text(out_nf, dump(jet_to_json(res.normal_form)), out);
            if (!out_map.empty()) write_text(out_map, dump(map_to_json(res.map)), out);
            err << "certificate: " << res.certificate.size() << " violation(s)\n";
            return 0;
        }
        if (cmd_apply->parsed()) {
            std::string jet_text = read_text(jet_path, in);
            HypersurfaceJet m = jet_from_json(parse_json_text(jet_text));
            MapJet h = map_from_json(parse_json_text(read_text(map_path, in)));
            HypersurfaceJet img = apply_map(m, h);
            if (verify && !check_transformation_identity(m, h, img).is_zero())
                throw internal_error("transformation identity residual is nonzero");
            write_text(out_path, dump(jet_to_json(img)), out);
            return 0;
        }
        if (cmd_decompose->parsed()) {
            auto [p, sig] = series_from_json(parse_json_text(read_text(jet_path, in)));
            auto dec = trace_decompose(p, s_power, sig);
            if (verify) {
                PuSeries lam = PuSeries::levi(sig, p.max_weight());
                if (!(dec.q * lam.pow(s_power) + dec.r == p) ||
                    !trace_pow(dec.r, sig, s_power).is_zero())
                    throw internal_error("decomposition failed re-verification");
            }
            if (out_q.empty() && out_r.empty()) {
                json j;
                j["q"] = series_to_json(dec.q, sig);
                j["r"] = series_to_json(dec.r, sig);
                out << dump(j);
            } else {
                if (!out_q.empty()) write_text(out_q, dump(series_to_json(dec.q, sig)), out);
                if (!out_r.empty()) write_text(out_r, dump(series_to_json(dec.r, sig)), out);
            }
            return 0;
        }
        if (cmd_spec_validate->parsed()) {
            if (max_weight < 2) throw validation_error("--max-weight must be >= 2");
            spec_from_json(parse_json_text(read_text(spec_path, in)), max_weight);
            out << "ok\n";
            return 0;
        }
        err << "error: no command\n";
        return 3;
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const validation_error& e) {
        err << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const internal_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace crnf
