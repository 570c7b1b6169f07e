#include "latcalc/convergence.hpp"
#include "latcalc/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace latcalc;

// --out wins; otherwise the default file name lands in LATCALC_OUT_DIR when
// that is set, else in the working directory.
std::string resolve_out(const std::string& out, const std::string& fallback) {
    if (!out.empty()) return out;
    if (const char* dir = std::getenv("LATCALC_OUT_DIR"); dir && *dir)
        return std::string(dir) + "/" + fallback;
    return fallback;
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << bytes;
    if (!f) throw std::runtime_error("failed writing output file: " + path);
}

void add_common_options(CLI::App* cmd, RunConfig& cfg, std::string& mode) {
    cmd->add_option("--n", cfg.n, "lattice dimension")->check(CLI::Range(1, 6));
    cmd->add_option("--N", cfg.N, "periodic size parameter (4N points per axis)")->check(CLI::Range(1, 16));
    cmd->add_option("--mode", mode, "lattice mode")->check(CLI::IsMember({"periodic", "window"}));
    cmd->add_option("--window-radius", cfg.window_radius, "half-width of sampling windows");
    cmd->add_option("--kmax", cfg.k_max, "largest bracket arity")->check(CLI::Range(1, 6));
    cmd->add_option("--degree", cfg.degree, "sample polynomial degree bound")->check(CLI::Range(0, 8));
    cmd->add_option("--samples", cfg.samples, "sample count per check")->check(CLI::Range(1, 64));
    cmd->add_option("--seed", cfg.seed, "random seed recorded in the report");
    cmd->add_option("--levels", cfg.levels, "numeric refinement levels");
    cmd->add_option("--out", cfg.out, "output report path");
}

Report convergence_report(const RunConfig& cfg) {
    Report rep;
    rep.config = cfg.to_json();
    rep.config["suite"] = "convergence";
    for (const auto& st : run_convergence(cfg.levels)) {
        CheckResult c;
        c.id = "converge/" + st.id;
        c.anchor = st.kind == "exact" ? "refinement-exactness" : "refinement-decay";
        c.pass = st.pass;
        std::string rates;
        for (const auto& r : st.rates) {
            if (!rates.empty()) rates += ", ";
            rates += r ? std::to_string(*r) : std::string("-");
        }
        bool zero = true;
        for (const auto& q : st.sup_norms) zero = zero && q.is_zero();
        c.detail = zero ? "every sup-norm is exactly zero" : "log2 ratios: " + rates;
        nlohmann::json w;
        w["levels"] = st.levels;
        nlohmann::json norms = nlohmann::json::array();
        for (const auto& q : st.sup_norms) norms.push_back(rational_to_string(q));
        w["sup_norms"] = norms;
        nlohmann::json rj = nlohmann::json::array();
        for (const auto& r : st.rates) {
            if (r) rj.push_back(*r);
            else rj.push_back(nullptr);
        }
        w["rates"] = rj;
        c.witness = w;
        rep.add(std::move(c));
    }
    return rep;
}

int emit(const Report& rep, const std::string& path) {
    write_file(path, dump_report(rep));
    std::cout << render_table(rep);
    std::cout << "report written to " << path << "\n";
    return rep.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification and refinement driver for the overlapping-lattice calculus"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string mode = "periodic";
    std::vector<std::string> inputs;

    CLI::App* verify = app.add_subcommand("verify", "run every module invariant suite");
    add_common_options(verify, cfg, mode);
    CLI::App* converge = app.add_subcommand("converge", "run the numeric refinement studies");
    add_common_options(converge, cfg, mode);
    CLI::App* report = app.add_subcommand("report", "merge report files into one summary");
    report->add_option("inputs", inputs, "report files to merge")->required()
        ->check(CLI::ExistingFile);
    report->add_option("--out", cfg.out, "output report path");

    CLI11_PARSE(app, argc, argv);
    cfg.mode = mode == "window" ? Mode::window : Mode::periodic;

    try {
        if (verify->parsed())
            return emit(run_verify(cfg), resolve_out(cfg.out, "verify.json"));
        if (converge->parsed())
            return emit(convergence_report(cfg), resolve_out(cfg.out, "converge.json"));

        std::vector<std::pair<std::string, Report>> parts;
        for (const auto& path : inputs) {
            std::ifstream f(path, std::ios::binary);
            if (!f) throw std::runtime_error("cannot open report file: " + path);
            nlohmann::json j;
            f >> j;
            parts.emplace_back(path, Report::from_json(j));
        }
        return emit(merge_reports(parts), resolve_out(cfg.out, "merged.json"));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
