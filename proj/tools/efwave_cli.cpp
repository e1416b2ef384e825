#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "efwave/efwave.hpp"

namespace {

using namespace efwave;

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string timestamp_utc() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Relative paths resolve against EFWAVE_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    const char* dir = std::getenv("EFWAVE_OUT_DIR");
    if (!dir || !*dir) return path;
    std::string d(dir);
    if (d.back() != '/') d += '/';
    return d + path;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open for writing: " + path);
    f << text;
    if (!f) throw ValidationError("write failed: " + path);
}

/// Every output file gets a sidecar <out>.manifest.json. The timestamp is the
/// only field excluded from the determinism contract.
void write_manifest(const std::string& out_path, const std::string& command,
                    const nlohmann::ordered_json& params, const std::string& material) {
    nlohmann::ordered_json m;
    m["command"] = command;
    m["parameters"] = params;
    m["material"] = material;
    m["outputs"] = {out_path};
    m["version"] = EFWAVE_VERSION;
    m["timestamp"] = timestamp_utc();
    write_text_file(out_path + ".manifest.json", m.dump(2) + "\n");
}

/// gnuplot script plotting every receiver column of a CSV against time.
void write_plot_script(const std::string& csv_path, std::size_t n_cols,
                       const std::string& title) {
    std::ostringstream os;
    os << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set xlabel 't [s]'\n"
       << "set ylabel 'p [Pa]'\n"
       << "set title '" << title << "'\n"
       << "plot";
    for (std::size_t c = 2; c <= n_cols + 1; ++c)
        os << (c == 2 ? " " : ", \\\n     ") << "'" << csv_path << "' using 1:" << c
           << " with lines";
    os << "\n";
    write_text_file(csv_path + ".gnuplot", os.str());
}

struct MaterialArgs {
    std::string name = "mat1";
    std::string file;
    bool lossless = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--material,--name", name, "built-in material name")
            ->capture_default_str();
        cmd->add_option("--file", file, "material definition file (overrides --material)");
        cmd->add_flag("--lossless", lossless, "drop the pole terms, keep the constants");
    }

    EquivalentFluid load() const {
        EquivalentFluid m;
        if (!file.empty()) {
            std::ifstream f(file, std::ios::binary);
            if (!f) throw ValidationError("cannot open material file: " + file);
            std::stringstream ss;
            ss << f.rdbuf();
            m = parse_material(ss.str());
        } else if (name == "mat1") {
            m = builtin_mat1();
        } else {
            throw ValidationError("unknown material '" + name + "' (built-ins: mat1)");
        }
        return lossless ? lossless_limit(m) : m;
    }
};

void emit(const std::string& out, const std::string& text, const std::string& command,
          const nlohmann::ordered_json& params, const std::string& material,
          bool plot = false, std::size_t plot_cols = 0, const std::string& title = "") {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    const std::string path = resolve_out(out);
    write_text_file(path, text);
    write_manifest(path, command, params, material);
    if (plot) write_plot_script(path, plot_cols, title);
}

int cmd_material(const MaterialArgs& margs, const std::vector<double>& table,
                 const std::string& out) {
    const EquivalentFluid m = margs.load();
    nlohmann::ordered_json params{{"material", m.name}};
    if (table.empty()) {
        std::ostringstream os;
        os << serialize_material(m) << "c_inf = " << g17(m.c_inf()) << " m/s\n";
        emit(out, os.str(), "material", params, m.name);
        return 0;
    }
    if (table.size() != 3 || table[2] < 1.0)
        throw ValidationError("--table needs omega_min omega_max n with n >= 1");
    const double w0 = table[0], w1 = table[1];
    const auto n = static_cast<std::size_t>(table[2]);
    params["omega_min"] = w0;
    params["omega_max"] = w1;
    params["n"] = n;
    std::ostringstream os;
    os << "omega,re_C,im_C,re_v,im_v\n";
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (n == 1) ? w0 : w0 + (w1 - w0) * static_cast<double>(i) /
                                              static_cast<double>(n - 1);
        const cplx C = m.compressibility.value(w);
        const cplx v = m.specific_volume.value(w);
        os << g17(w) << "," << g17(C.real()) << "," << g17(C.imag()) << ","
           << g17(v.real()) << "," << g17(v.imag()) << "\n";
    }
    emit(out, os.str(), "material", params, m.name);
    return 0;
}

int cmd_dispersion(const MaterialArgs& margs, double w0, double w1, std::size_t n,
                   bool log_spacing, const std::string& out) {
    const EquivalentFluid m = margs.load();
    if (n < 1) throw ValidationError("dispersion: n must be >= 1");
    if (log_spacing && !(w0 > 0.0))
        throw ValidationError("dispersion: log spacing needs omega_min > 0");
    std::ostringstream os;
    os << "omega,re_k,im_k,v_p,v_g,attenuation\n";
    for (std::size_t i = 0; i < n; ++i) {
        const double f = (n == 1) ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        const double w = log_spacing ? w0 * std::pow(w1 / w0, f) : w0 + (w1 - w0) * f;
        const DispersionSample s = dispersion_sample(m, w);
        os << g17(s.omega) << "," << g17(s.k.real()) << "," << g17(s.k.imag()) << ","
           << g17(s.phase_velocity) << "," << g17(s.group_velocity) << ","
           << g17(s.attenuation) << "\n";
    }
    nlohmann::ordered_json params{
        {"material", m.name}, {"omega_min", w0}, {"omega_max", w1}, {"n", n}, {"log", log_spacing}};
    emit(out, os.str(), "dispersion", params, m.name);
    return 0;
}

int cmd_excitation(double fc, double fs, double duration, const std::string& out) {
    const ExcitationSpec spec(fc);
    if (fs <= 0.0) fs = 64.0 * fc;
    if (duration <= 0.0) duration = 1.0 / fc;
    const SampledSignal sig = sample(spec, fs, duration);
    std::ostringstream os;
    os << "t,p0\n";
    for (std::size_t i = 0; i < sig.size(); ++i)
        os << g17(sig.time_at(i)) << "," << g17(sig.samples[i]) << "\n";
    nlohmann::ordered_json params{{"fc", fc}, {"fs", fs}, {"duration", duration}};
    emit(out, os.str(), "excitation", params, "", false);
    return 0;
}

int cmd_solve(const MaterialArgs& margs, int dim, double fc, double fs, double duration,
              double r0, std::vector<double> receivers, std::size_t pad,
              const std::string& out, bool plot) {
    const EquivalentFluid m = margs.load();
    if (receivers.empty()) throw ValidationError("solve: at least one receiver is required");
    if (fs <= 0.0) fs = 64.0 * fc;
    if (duration <= 0.0) {
        double far = 0.0;
        for (double r : receivers) far = std::max(far, (dim == 1) ? r : r - r0);
        duration = 1.0 / fc + 1.5 * far / m.c_inf() + 1e-12;
    }
    const SampledSignal excitation = sample(ExcitationSpec(fc), fs, duration);
    Geometry geom{dim, r0, receivers};
    const FieldResult res = solve(m, geom, excitation, pad);

    for (const auto& w : res.diagnostics.warnings) std::cerr << "warning: " << w << "\n";
    std::cerr << "imag residue: " << g17(res.diagnostics.imag_residue) << "\n";

    nlohmann::ordered_json params{{"material", m.name}, {"dim", dim},   {"fc", fc},
                                  {"fs", fs},           {"duration", duration},
                                  {"r0", r0},           {"receivers", receivers},
                                  {"pad", pad}};
    emit(out, to_csv(res), "solve", params, m.name, plot, receivers.size(),
         m.name + " analytic, dim " + std::to_string(dim));
    return 0;
}

int cmd_tdfd(const MaterialArgs& margs, double fc, double length, double dx, double cfl,
             double dt, double duration, std::vector<double> receivers,
             const std::string& out, bool plot) {
    const EquivalentFluid m = margs.load();
    if (receivers.empty()) throw ValidationError("tdfd: at least one receiver is required");
    if (!(length > 0.0)) throw ValidationError("tdfd: --L must be positive");
    if (!(duration > 0.0)) throw ValidationError("tdfd: --duration must be positive");
    const double c = m.c_inf();
    if (dx <= 0.0) dx = c / (40.0 * fc);
    auto nx = static_cast<std::size_t>(std::ceil(length / dx)) + 1;
    if (dt <= 0.0) dt = cfl * dx / c;
    const auto nt = static_cast<std::size_t>(std::ceil(duration / dt));

    tdfd::SimConfig cfg(m, length, nx, dt, nt, receivers);
    const SampledSignal excitation = sample(ExcitationSpec(fc), 1.0 / dt, duration);
    const FieldResult res = tdfd::run(cfg, excitation);

    for (const auto& w : res.diagnostics.warnings) std::cerr << "warning: " << w << "\n";
    std::cerr << "cfl: " << g17(res.diagnostics.cfl)
              << "  tail peak ratio: " << g17(res.diagnostics.tail_peak_ratio) << "\n";

    nlohmann::ordered_json params{{"material", m.name}, {"fc", fc},
                                  {"L", length},        {"dx", dx},
                                  {"dt", dt},           {"duration", duration},
                                  {"receivers", receivers}};
    emit(out, to_csv(res), "tdfd", params, m.name, plot, receivers.size(), m.name + " tdfd");
    return 0;
}

int cmd_compare(const std::string& ref_path, const std::string& cand_path, double tol,
                const std::string& out) {
    const FieldResult ref = read_csv_file(ref_path);
    const FieldResult cand = read_csv_file(cand_path);
    const std::vector<ErrorReport> reports = compare_fields(ref, cand);

    std::ostringstream os;
    os << "receiver,rel_l2,rel_linf,peak_offset\n";
    bool pass = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        os << g17(ref.geometry.receivers[i]) << "," << g17(reports[i].rel_l2) << ","
           << g17(reports[i].rel_linf) << "," << reports[i].peak_offset << "\n";
        if (tol >= 0.0 && reports[i].rel_l2 > tol) pass = false;
    }
    // norms are relative to the first file (the reference)
    std::cout << "reference: " << ref_path << "\n" << os.str();
    if (!out.empty()) {
        nlohmann::ordered_json params{{"reference", ref_path}, {"candidate", cand_path},
                                      {"tol", tol}};
        emit(out, os.str(), "compare", params, ref.material);
    }
    if (tol >= 0.0)
        std::cout << (pass ? "PASS" : "FAIL") << " (tol " << tol << " on rel L2)\n";
    return pass ? 0 : 1;
}

int cmd_specfun(const std::string& fn, double re, double im) {
    const cplx z(re, im);
    cplx v;
    if (fn == "j0") v = specfun::j0(z);
    else if (fn == "j1") v = specfun::j1(z);
    else if (fn == "y0") v = specfun::y0(z);
    else if (fn == "y1") v = specfun::y1(z);
    else if (fn == "h02") v = specfun::hankel0_2(z).value;
    else if (fn == "h12") v = specfun::hankel1_2(z).value;
    else throw ValidationError("specfun: unknown function '" + fn + "'");
    std::cout << g17(v.real()) << " " << g17(v.imag()) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reference benchmarks for waves in dispersive equivalent-fluid absorbers"};
    app.require_subcommand(1);
    app.set_version_flag("--version", EFWAVE_VERSION);

    // material
    auto* c_mat = app.add_subcommand("material", "inspect a material model");
    MaterialArgs mat_m;
    mat_m.attach(c_mat);
    std::vector<double> mat_table;
    std::string mat_out;
    c_mat->add_option("--table", mat_table, "omega_min omega_max n: emit an FRF table")
        ->expected(3);
    c_mat->add_option("--out", mat_out, "output file (default stdout)");

    // dispersion
    auto* c_disp = app.add_subcommand("dispersion", "wavenumber and velocity table");
    MaterialArgs mat_d;
    mat_d.attach(c_disp);
    double d_w0 = 2.0 * std::numbers::pi * 10.0, d_w1 = 2.0 * std::numbers::pi * 2000.0;
    std::size_t d_n = 200;
    bool d_log = false;
    std::string d_out;
    c_disp->add_option("--omega-min", d_w0, "rad/s")->capture_default_str();
    c_disp->add_option("--omega-max", d_w1, "rad/s")->capture_default_str();
    c_disp->add_option("--n", d_n, "rows")->capture_default_str();
    c_disp->add_flag("--log", d_log, "logarithmic frequency spacing");
    c_disp->add_option("--out", d_out, "output file (default stdout)");

    // excitation
    auto* c_exc = app.add_subcommand("excitation", "sample the boundary pulse");
    double e_fc = 700.0, e_fs = 0.0, e_dur = 0.0;
    std::string e_out;
    c_exc->add_option("--fc", e_fc, "central frequency, Hz")->capture_default_str();
    c_exc->add_option("--fs", e_fs, "sample rate, Hz (default 64*fc)");
    c_exc->add_option("--duration", e_dur, "seconds (default 1/fc)");
    c_exc->add_option("--out", e_out, "output file (default stdout)");

    // solve
    auto* c_sol = app.add_subcommand("solve", "semi-analytic frequency-domain solve");
    MaterialArgs mat_s;
    mat_s.attach(c_sol);
    int s_dim = 1;
    double s_fc = 700.0, s_fs = 0.0, s_dur = 0.0, s_r0 = 0.0;
    std::size_t s_pad = 8;
    std::vector<double> s_recv;
    std::string s_out;
    bool s_plot = false;
    c_sol->add_option("--dim", s_dim, "1, 2, or 3")->capture_default_str();
    c_sol->add_option("--fc", s_fc, "central frequency, Hz")->capture_default_str();
    c_sol->add_option("--fs", s_fs, "sample rate, Hz (default 64*fc)");
    c_sol->add_option("--duration", s_dur, "seconds (default: pulse + travel time)");
    c_sol->add_option("--r0", s_r0, "hole radius, m (2D/3D)");
    c_sol->add_option("--receivers", s_recv, "receiver coordinates, m")->required();
    c_sol->add_option("--pad", s_pad, "FFT zero-pad factor")->capture_default_str();
    c_sol->add_option("--out", s_out, "output CSV (default stdout)");
    c_sol->add_flag("--plot", s_plot, "also emit a gnuplot script");

    // tdfd
    auto* c_td = app.add_subcommand("tdfd", "1D time-domain cross-validation solver");
    MaterialArgs mat_t;
    mat_t.attach(c_td);
    double t_fc = 700.0, t_L = 0.0, t_dx = 0.0, t_cfl = 0.5, t_dt = 0.0, t_dur = 0.0;
    std::vector<double> t_recv;
    std::string t_out;
    bool t_plot = false;
    c_td->add_option("--fc", t_fc, "central frequency, Hz")->capture_default_str();
    c_td->add_option("--L", t_L, "domain length, m")->required();
    c_td->add_option("--dx", t_dx, "grid spacing, m (default c_inf/(40 fc))");
    c_td->add_option("--cfl", t_cfl, "Courant number (sets dt)")->capture_default_str();
    c_td->add_option("--dt", t_dt, "time step, s (overrides --cfl)");
    c_td->add_option("--duration", t_dur, "seconds")->required();
    c_td->add_option("--receivers", t_recv, "receiver coordinates, m")->required();
    c_td->add_option("--out", t_out, "output CSV (default stdout)");
    c_td->add_flag("--plot", t_plot, "also emit a gnuplot script");

    // compare
    auto* c_cmp = app.add_subcommand("compare", "compare two trace CSVs");
    std::string cmp_ref, cmp_cand, cmp_out;
    double cmp_tol = -1.0;
    c_cmp->add_option("reference", cmp_ref, "reference CSV")->required();
    c_cmp->add_option("candidate", cmp_cand, "candidate CSV")->required();
    c_cmp->add_option("--tol", cmp_tol, "pass/fail threshold on relative L2");
    c_cmp->add_option("--out", cmp_out, "write the report as CSV");

    // specfun (hidden test surface)
    auto* c_sf = app.add_subcommand("specfun", "evaluate a special function");
    c_sf->group(""); // hidden
    std::string sf_fn;
    double sf_re = 0.0, sf_im = 0.0;
    c_sf->add_option("fn", sf_fn, "j0|j1|y0|y1|h02|h12")->required();
    c_sf->add_option("re", sf_re)->required();
    c_sf->add_option("im", sf_im)->required();

    try {
        app.parse(argc, argv);
        if (*c_mat) return cmd_material(mat_m, mat_table, mat_out);
        if (*c_disp) return cmd_dispersion(mat_d, d_w0, d_w1, d_n, d_log, d_out);
        if (*c_exc) return cmd_excitation(e_fc, e_fs, e_dur, e_out);
        if (*c_sol)
            return cmd_solve(mat_s, s_dim, s_fc, s_fs, s_dur, s_r0, s_recv, s_pad, s_out, s_plot);
        if (*c_td)
            return cmd_tdfd(mat_t, t_fc, t_L, t_dx, t_cfl, t_dt, t_dur, t_recv, t_out, t_plot);
        if (*c_cmp) return cmd_compare(cmp_ref, cmp_cand, cmp_tol, cmp_out);
        if (*c_sf) return cmd_specfun(sf_fn, sf_re, sf_im);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
