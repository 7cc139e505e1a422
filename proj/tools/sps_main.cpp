// Command-line front end: thin shell over the library calls, one subcommand
// per pipeline entry point. All numeric work happens in the library; this
// file only parses flags, moves matrices through files, and prints reports.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sps/binning.hpp"
#include "sps/gen.hpp"
#include "sps/matrix_market.hpp"
#include "sps/pipeline.hpp"

namespace {

using nlohmann::json;
using sps::DenseMatrix;
using sps::index_t;

struct SparsifyFlags {
    std::string input, output, report_path;
    double ratio = 0.8;
    double p = 1.0;
    index_t max_bins = 1000;
    bool impose = false;
    std::string matrix_type = "undefined";
    bool no_timing = false;
    double cg_tol = 1e-12;
};

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

sps::SparsifyConfig config_from(const SparsifyFlags& fl) {
    sps::SparsifyConfig cfg;
    cfg.sparsity_ratio = fl.ratio;
    cfg.sparsity_norm_p = fl.p;
    cfg.max_num_bins = fl.max_bins;
    cfg.impose_null_spaces = fl.impose;
    cfg.cg_tol = fl.cg_tol;
    const auto t = sps::matrix_type_from_name(fl.matrix_type);
    if (!t) throw std::invalid_argument("unknown --matrix-type '" + fl.matrix_type + "'");
    cfg.matrix_type = *t;
    return cfg;
}

json report_json(const sps::SparsifyReport& rep, bool no_timing) {
    json j;
    j["schema_version"] = 1;
    j["nnz"] = rep.nnz;
    j["n_unknowns"] = rep.n_unknowns;
    j["n_bins"] = rep.n_bins;
    j["rank"] = rep.rank;
    j["rank_tol"] = rep.rank_tol;
    j["ridge_used"] = rep.ridge_used;
    j["solver_fallback_zero"] = rep.solver_fallback_zero;
    j["null_spaces_imposed"] = rep.null_spaces_imposed;
    j["cg_iterations"] = rep.cg_iterations;
    j["cg_residual"] = rep.cg_residual;
    j["cg_converged"] = rep.cg_converged;
    j["objective_value"] = rep.objective_value;
    j["right_null_residual"] = rep.right_null_residual;
    j["left_null_residual"] = rep.left_null_residual;
    if (!no_timing) {
        j["timing"] = {{"factor_ms", rep.timing.factor_ms},
                       {"pattern_ms", rep.timing.pattern_ms},
                       {"bins_ms", rep.timing.bins_ms},
                       {"assemble_ms", rep.timing.assemble_ms},
                       {"solve_ms", rep.timing.solve_ms},
                       {"impose_ms", rep.timing.impose_ms},
                       {"total_ms", rep.timing.total_ms}};
    }
    return j;
}

json diagnostics_json(const sps::DiagnosticsReport& d) {
    json j;
    j["schema_version"] = 1;
    j["rank"] = d.rank;
    j["cond_pinv_product"] =
        std::isfinite(d.cond_pinv_product) ? json(d.cond_pinv_product) : json("inf");
    j["rel_pinv_diff"] = d.rel_pinv_diff;
    j["objective_value"] = d.objective_value;
    j["nnz_ratio"] = d.nnz_ratio;
    if (d.hessian_cond)
        j["hessian_cond"] = std::isfinite(*d.hessian_cond) ? json(*d.hessian_cond) : json("inf");
    return j;
}

int run_sparsify(const SparsifyFlags& fl) {
    const sps::SparsifyConfig cfg = config_from(fl);
    const sps::DenseVariant in = sps::read_matrix_market(fl.input);
    json rep;
    std::visit(
        [&](const auto& a) {
            const auto res = sps::sparsify(a, cfg);
            sps::write_matrix_market(fl.output, res.x);
            rep = report_json(res.report, fl.no_timing);
        },
        in);
    if (!fl.report_path.empty()) write_text_file(fl.report_path, rep.dump(2) + "\n");
    return 0;
}

int run_pattern(const std::string& input, const std::string& output, double ratio, double p) {
    const sps::DenseVariant in = sps::read_matrix_market(input);
    std::visit(
        [&](const auto& a) {
            const sps::SparsityPattern z = sps::lp_pattern(a, ratio, p);
            sps::SparseMatrixCsr<double> ones = sps::SparseMatrixCsr<double>::from_pattern(z);
            for (auto& v : ones.values) v = 1.0;
            sps::write_matrix_market(output, ones);
        },
        in);
    return 0;
}

int run_bins(const std::string& input, const std::string& output, double ratio, double p,
             index_t max_bins) {
    const sps::DenseVariant in = sps::read_matrix_market(input);
    std::ostringstream out;
    std::visit(
        [&](const auto& a) {
            const sps::SparsityPattern z = sps::lp_pattern(a, ratio, p);
            const sps::BinAssignment b = sps::compute_bins(a, z, max_bins);
            if (b.has_imag()) {
                out << "% bin identifiers: row col real_id imag_id\n";
                out << z.num_rows << " " << z.num_cols << " " << z.nnz() << " " << b.n_bins
                    << "\n";
                for (std::size_t t = 0; t < z.positions.size(); ++t)
                    out << (z.positions[t].first + 1) << " " << (z.positions[t].second + 1)
                        << " " << b.real_ids[t] << " " << b.imag_ids[t] << "\n";
            } else {
                out << "%%MatrixMarket matrix coordinate integer general\n";
                out << "% bin identifiers per retained position; " << b.n_bins << " bins\n";
                out << z.num_rows << " " << z.num_cols << " " << z.nnz() << "\n";
                for (std::size_t t = 0; t < z.positions.size(); ++t)
                    out << (z.positions[t].first + 1) << " " << (z.positions[t].second + 1)
                        << " " << b.real_ids[t] << "\n";
            }
        },
        in);
    write_text_file(output, out.str());
    return 0;
}

std::string render_text_report(const json& j) {
    std::ostringstream out;
    for (const auto& [key, value] : j.items())
        out << key << " " << (value.is_string() ? value.get<std::string>() : value.dump())
            << "\n";
    return out.str();
}

int run_diagnose(const std::string& input, const std::string& sparse_path,
                 const std::string& output, bool hessian_cond, const std::string& format) {
    const sps::DenseVariant av = sps::read_matrix_market(input);
    const sps::DenseVariant xv = sps::read_matrix_market(sparse_path);
    if (av.index() != xv.index())
        throw std::invalid_argument("--input and --sparse must both be real or both complex");
    json j;
    std::visit(
        [&](const auto& a) {
            using T = typename std::decay_t<decltype(a)>;
            const auto& xd = std::get<T>(xv);
            j = diagnostics_json(sps::diagnostics(a, sps::csr_from_dense(xd), hessian_cond));
        },
        av);
    const std::string text = format == "text" ? render_text_report(j) : j.dump(2) + "\n";
    if (output.empty())
        std::cout << text;
    else
        write_text_file(output, text);
    return 0;
}

std::vector<index_t> parse_bin_list(const std::string& csv) {
    std::vector<index_t> bins;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const long v = std::stol(item, &used);
        if (used != item.size() || v < 0)
            throw std::invalid_argument("--bins must be a comma list of nonnegative integers");
        bins.push_back(static_cast<index_t>(v));
    }
    if (bins.empty()) throw std::invalid_argument("--bins list is empty");
    std::sort(bins.begin(), bins.end());
    return bins;
}

int run_sweep(const std::string& input, const std::string& output, double ratio, double p,
              const std::string& bins_csv, bool impose, const std::string& format) {
    const std::vector<index_t> bin_counts = parse_bin_list(bins_csv);
    const sps::DenseVariant in = sps::read_matrix_market(input);

    struct Row {
        index_t max_bins, n_bins;
        double cond, rel, objective;
    };
    std::vector<Row> rows;
    std::visit(
        [&](const auto& a) {
            for (const index_t mb : bin_counts) {
                sps::SparsifyConfig cfg;
                cfg.sparsity_ratio = ratio;
                cfg.sparsity_norm_p = p;
                cfg.max_num_bins = mb;
                cfg.impose_null_spaces = impose;
                const auto res = sps::sparsify(a, cfg);
                const auto d = sps::diagnostics(a, res.x, false);
                rows.push_back({mb, res.report.n_bins, d.cond_pinv_product, d.rel_pinv_diff,
                                res.report.objective_value});
            }
        },
        in);

    std::ostringstream out;
    if (format == "csv") {
        out << "max_bins,n_bins,cond_pinv_product,rel_pinv_diff,objective\n";
        for (const Row& r : rows) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%d,%d,%.12g,%.12g,%.12g\n", r.max_bins, r.n_bins,
                          r.cond, r.rel, r.objective);
            out << buf;
        }
    } else {
        json j;
        j["schema_version"] = 1;
        j["rows"] = json::array();
        for (const Row& r : rows)
            j["rows"].push_back({{"max_bins", r.max_bins},
                                 {"n_bins", r.n_bins},
                                 {"cond_pinv_product",
                                  std::isfinite(r.cond) ? json(r.cond) : json("inf")},
                                 {"rel_pinv_diff", r.rel},
                                 {"objective", r.objective}});
        out << j.dump(2) << "\n";
    }
    if (output.empty())
        std::cout << out.str();
    else
        write_text_file(output, out.str());
    return 0;
}

int run_gen(const std::string& kind, index_t n, index_t rank, unsigned seed,
            const std::string& output) {
    const sps::DenseVariant v = sps::gen_test_matrix(kind, n, rank, seed);
    std::visit([&](const auto& a) { sps::write_matrix_market(output, a); }, v);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparsify a dense matrix while preserving its null-spaces and near null-space"};
    app.require_subcommand(1);

    SparsifyFlags fl;
    auto* sp = app.add_subcommand("sparsify", "two-step sparsification of a matrix file");
    sp->add_option("--input", fl.input, "input Matrix Market file")->required();
    sp->add_option("--output", fl.output, "output coordinate file")->required();
    sp->add_option("--ratio", fl.ratio, "sparsity ratio in [0,1]")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    sp->add_option("--p", fl.p, "Lp norm power in [0,inf]");
    sp->add_option("--max-bins", fl.max_bins, "maximum bins per sign class (0: singleton bins)")
        ->check(CLI::NonNegativeNumber);
    sp->add_flag("--impose-nullspaces", fl.impose, "project onto the null-space constraints");
    sp->add_option("--matrix-type", fl.matrix_type,
                   "undefined|general|hermitian_pos_def|hermitian_pos_semi_def|hermitian|"
                   "skew_hermitian|complex_symmetric");
    sp->add_option("--report", fl.report_path, "write a JSON run report here");
    sp->add_flag("--no-timing", fl.no_timing, "omit timing from the report");
    sp->add_option("--cg-tol", fl.cg_tol, "relative residual for the null-space projection");

    std::string pat_in, pat_out;
    double pat_ratio = 0.8, pat_p = 1.0;
    auto* pt = app.add_subcommand("pattern", "emit the 0/1 sparsity pattern");
    pt->add_option("--input", pat_in)->required();
    pt->add_option("--output", pat_out)->required();
    pt->add_option("--ratio", pat_ratio)->required()->check(CLI::Range(0.0, 1.0));
    pt->add_option("--p", pat_p);

    std::string bin_in, bin_out;
    double bin_ratio = 0.8, bin_p = 1.0;
    index_t bin_max = 1000;
    auto* bn = app.add_subcommand("bins", "emit bin identifiers per retained position");
    bn->add_option("--input", bin_in)->required();
    bn->add_option("--output", bin_out)->required();
    bn->add_option("--ratio", bin_ratio)->required()->check(CLI::Range(0.0, 1.0));
    bn->add_option("--p", bin_p);
    bn->add_option("--max-bins", bin_max)->check(CLI::NonNegativeNumber);

    std::string diag_in, diag_sparse, diag_out, diag_format = "json";
    bool diag_hess = false;
    auto* dg = app.add_subcommand("diagnose", "spectral quality report for a sparse matrix");
    dg->add_option("--input", diag_in)->required();
    dg->add_option("--sparse", diag_sparse)->required();
    dg->add_option("--output", diag_out, "output path (stdout when omitted)");
    dg->add_flag("--hessian-cond", diag_hess, "include the pattern-Hessian condition number");
    dg->add_option("--format", diag_format)->check(CLI::IsMember({"json", "text"}));

    std::string sw_in, sw_out, sw_bins = "8,16,32,64,128,256,512,1024", sw_format = "json";
    double sw_ratio = 0.8, sw_p = 1.0;
    bool sw_impose = false;
    auto* sw = app.add_subcommand("sweep-bins", "table of spectral quality against bin count");
    sw->add_option("--input", sw_in)->required();
    sw->add_option("--output", sw_out, "output path (stdout when omitted)");
    sw->add_option("--ratio", sw_ratio)->required()->check(CLI::Range(0.0, 1.0));
    sw->add_option("--p", sw_p);
    sw->add_option("--bins", sw_bins, "comma list of max-bin counts");
    sw->add_flag("--impose-nullspaces", sw_impose);
    sw->add_option("--format", sw_format)->check(CLI::IsMember({"json", "csv"}));

    std::string gen_kind, gen_out;
    index_t gen_n = 40, gen_rank = -1;
    unsigned gen_seed = 1;
    auto* gn = app.add_subcommand("gen", "generate a test matrix");
    gn->add_option("--kind", gen_kind, "paper40|rankdef|hermitian|complexsym")->required();
    gn->add_option("--n", gen_n)->check(CLI::PositiveNumber);
    gn->add_option("--rank", gen_rank, "target rank for rankdef");
    gn->add_option("--seed", gen_seed);
    gn->add_option("--output", gen_out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sp->parsed()) return run_sparsify(fl);
        if (pt->parsed()) return run_pattern(pat_in, pat_out, pat_ratio, pat_p);
        if (bn->parsed()) return run_bins(bin_in, bin_out, bin_ratio, bin_p, bin_max);
        if (dg->parsed())
            return run_diagnose(diag_in, diag_sparse, diag_out, diag_hess, diag_format);
        if (sw->parsed())
            return run_sweep(sw_in, sw_out, sw_ratio, sw_p, sw_bins, sw_impose, sw_format);
        if (gn->parsed()) return run_gen(gen_kind, gen_n, gen_rank, gen_seed, gen_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 1;
}
