// Command-line driver for the finite-field restriction laboratory.
//
// Exit codes: 0 when every check passes, 1 when a check fails, 2 on a
// usage or configuration error.  Report files written with --out contain
// no timing or host data, so a rerun with the same configuration and seed
// is byte-identical; wall time goes to stdout only.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fflab/fflab.hpp"

namespace {

using namespace fflab;

std::vector<long> parse_long_list(const std::string& csv) {
    std::vector<long> out;
    std::string item;
    std::istringstream is(csv);
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stol(item));
    }
    if (out.empty()) throw std::invalid_argument("empty list: " + csv);
    return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    for (long v : parse_long_list(csv)) out.push_back(static_cast<int>(v));
    return out;
}

// Field from --q, optionally overriding the built-in modulus table with a
// comma-separated coefficient list (constant term first).
FieldPtr resolve_field(long q, const std::string& modulus_csv) {
    if (modulus_csv.empty()) return Field::make_q(q);
    long p = 0;
    for (long c = 2; c * c <= q; ++c) {
        if (q % c == 0) {
            p = c;
            break;
        }
    }
    if (p == 0) p = q;
    int ell = 0;
    long t = q;
    while (t > 1 && t % p == 0) {
        t /= p;
        ++ell;
    }
    if (t != 1) throw std::invalid_argument("--q must be a prime power");
    return Field::make(static_cast<int>(p), ell, parse_int_list(modulus_csv));
}

void print_report(const Report& rep, double wall_seconds) {
    std::cout << "== " << rep.command << " ==\n";
    if (!rep.config.empty()) std::cout << "config: " << rep.config.dump() << "\n";
    long ok = 0;
    for (const auto& c : rep.checks) {
        if (c.pass) ++ok;
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.measured
                  << " (expected: " << c.expected << ")\n";
    }
    std::cout << "overall: " << (rep.pass() ? "PASS" : "FAIL") << " (" << ok << "/"
              << rep.checks.size() << " checks) in " << format_double(wall_seconds) << " s\n";
}

int emit(const Report& rep, const std::string& out_path, double wall_seconds) {
    print_report(rep, wall_seconds);
    if (!out_path.empty()) rep.write_file(out_path);
    return rep.pass() ? 0 : 1;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification laboratory for restriction estimates over finite fields"};
    app.require_subcommand(1);

    // Shared option storage; each subcommand binds the pieces it uses.
    long q = 3;
    std::string qs_csv;
    std::string modulus_csv;
    int d = 2;
    int n = 2;
    int trials = 100;
    std::uint64_t seed = 0;
    std::string backend = "both";
    std::string out_path;
    std::string csv_path;
    std::string variety = "flat_disk";
    std::string r_str = "6";
    std::string p_str;
    int iters = 500;
    int restarts = 16;
    double tol = 1e-10;
    int expo_n = 4;
    std::string expo_p = "2", expo_r = "4";
    int kakeya_d = 0;
    std::string quantity;

    auto add_field_opts = [&](CLI::App* sub, bool with_d) {
        sub->add_option("--q", q, "field size, an odd prime power")->required();
        sub->add_option("--modulus", modulus_csv,
                        "irreducible modulus coefficients, constant first (overrides the builtin)");
        if (with_d) sub->add_option("--d", d, "disk parameter; the ambient dimension is 2d");
    };

    CLI::App* verify = app.add_subcommand("verify", "exact identity and oracle checks");
    verify->require_subcommand(1);

    CLI::App* v_oracle = verify->add_subcommand(
        "oracle", "closed-form surface transform against the brute-force definition");
    add_field_opts(v_oracle, true);
    v_oracle->add_option("--out", out_path, "write a JSON report");

    CLI::App* v_gauss = verify->add_subcommand("gauss", "Gauss-sum and completed-square identities");
    v_gauss->add_option("--qs", qs_csv, "comma-separated field sizes")->required();
    v_gauss->add_option("--out", out_path, "write a JSON report");

    CLI::App* v_kernels = verify->add_subcommand(
        "kernels", "kernel decomposition, sup norms, and Fourier-side bounds");
    add_field_opts(v_kernels, true);
    v_kernels->add_option("--out", out_path, "write a JSON report");

    CLI::App* v_transform = verify->add_subcommand(
        "transform", "fast transform against the quadratic path on random inputs");
    v_transform->add_option("--q", q, "field size, an odd prime power")->required();
    v_transform->add_option("--modulus", modulus_csv,
                            "irreducible modulus coefficients, constant first");
    v_transform->add_option("--n", n, "ambient dimension");
    v_transform->add_option("--trials", trials, "random trials");
    v_transform->add_option("--seed", seed, "root seed for all randomness");
    v_transform->add_option("--backend", backend, "cyclo | complex | both")
        ->check(CLI::IsMember({"cyclo", "complex", "both"}));
    v_transform->add_option("--out", out_path, "write a JSON report");

    CLI::App* v_identities = verify->add_subcommand(
        "identities", "Plancherel, inversion, convolution, adjointness, composition");
    add_field_opts(v_identities, true);
    v_identities->add_option("--trials", trials, "random trials per suite");
    v_identities->add_option("--seed", seed, "root seed for all randomness");
    v_identities->add_option("--backend", backend, "cyclo | complex | both")
        ->check(CLI::IsMember({"cyclo", "complex", "both"}));
    v_identities->add_option("--out", out_path, "write a JSON report");

    CLI::App* norms = app.add_subcommand("norms", "operator-norm experiments");
    norms->require_subcommand(1);

    CLI::App* n_ext = norms->add_subcommand(
        "extension", "iterative lower bound for the extension operator norm");
    add_field_opts(n_ext, true);
    n_ext->add_option("--variety", variety, "flat_disk | paraboloid | subspace_h")
        ->check(CLI::IsMember({"flat_disk", "paraboloid", "subspace_h"}));
    n_ext->add_option("--r", r_str, "target exponent r as A or A/B");
    n_ext->add_option("--iters", iters, "iterations per start");
    n_ext->add_option("--restarts", restarts, "random restarts");
    n_ext->add_option("--tol", tol, "convergence tolerance");
    n_ext->add_option("--seed", seed, "root seed for all randomness");
    n_ext->add_option("--out", out_path, "write a JSON report");

    CLI::App* n_probes = norms->add_subcommand(
        "probes", "structured-input ratios against their closed forms");
    add_field_opts(n_probes, true);
    n_probes->add_option("--out", out_path, "write a JSON report");

    CLI::App* kak = app.add_subcommand("kakeya", "directional maximal operator checks");
    add_field_opts(kak, true);
    kak->add_option("--seed", seed, "root seed for all randomness");
    kak->add_option("--out", out_path, "write a JSON report");

    CLI::App* expo = app.add_subcommand("exponents", "exact exponent bookkeeping");
    expo->require_subcommand(1);

    CLI::App* e_derive = expo->add_subcommand(
        "derive", "derive the flat-disk estimate table and verify it");
    e_derive->add_option("--out", out_path, "write a JSON report");
    e_derive->add_option("--csv", csv_path, "write the derived rows as CSV");

    CLI::App* e_check = expo->add_subcommand(
        "check", "evaluate a pair (p, r) against necessary conditions and the conjectured region");
    e_check->add_option("--n", expo_n, "ambient dimension")->required();
    e_check->add_option("--p", expo_p, "exponent p: A, A/B, or A/B+eps")->required();
    e_check->add_option("--r", expo_r, "exponent r: A, A/B, or A/B+eps")->required();
    e_check->add_option("--kakeya-d", kakeya_d, "also test derivability from the trivial segment in dimension d");
    e_check->add_option("--out", out_path, "write a JSON report");

    CLI::App* sweep = app.add_subcommand("sweep", "one quantity across several field sizes");
    sweep->add_option("quantity", quantity, "opnorm | decay | kakeya")
        ->required()
        ->check(CLI::IsMember({"opnorm", "decay", "kakeya"}));
    sweep->add_option("--qs", qs_csv, "comma-separated field sizes")->required();
    sweep->add_option("--d", d, "disk parameter (decay/opnorm) or dimension (kakeya)");
    sweep->add_option("--r", r_str, "exponent r (opnorm target, or kakeya range exponent)");
    sweep->add_option("--p", p_str, "kakeya domain exponent (defaults to d)");
    sweep->add_option("--variety", variety, "flat_disk | paraboloid (opnorm)")
        ->check(CLI::IsMember({"flat_disk", "paraboloid"}));
    sweep->add_option("--iters", iters, "iterations per start (opnorm)");
    sweep->add_option("--restarts", restarts, "random restarts (opnorm)");
    sweep->add_option("--tol", tol, "convergence tolerance (opnorm)");
    sweep->add_option("--seed", seed, "root seed for all randomness");
    sweep->add_option("--out", out_path, "write the CSV table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (v_oracle->parsed()) {
            Report rep = check_oracle(resolve_field(q, modulus_csv), d);
            return emit(rep, out_path, seconds_since(t0));
        }
        if (v_gauss->parsed()) {
            Report rep;
            rep.command = "verify gauss";
            ordered_json qlist = ordered_json::array();
            std::vector<long> qvals = parse_long_list(qs_csv);
            for (long qv : qvals) qlist.push_back(qv);
            rep.config = {{"qs", qlist}};
            for (long qv : qvals) {
                Report one = check_gauss(Field::make_q(qv));
                for (const auto& c : one.checks)
                    rep.add("q" + std::to_string(qv) + "_" + c.name, c.measured, c.expected, c.pass);
            }
            return emit(rep, out_path, seconds_since(t0));
        }
        if (v_kernels->parsed()) {
            Report rep = check_kernels(resolve_field(q, modulus_csv), d);
            return emit(rep, out_path, seconds_since(t0));
        }
        if (v_transform->parsed()) {
            Report rep = check_transform(resolve_field(q, modulus_csv), n, trials, seed, backend);
            return emit(rep, out_path, seconds_since(t0));
        }
        if (v_identities->parsed()) {
            Report rep = check_identities(resolve_field(q, modulus_csv), d, trials, seed, backend);
            return emit(rep, out_path, seconds_since(t0));
        }
        if (n_ext->parsed()) {
            Report rep = run_extension(resolve_field(q, modulus_csv), variety, d,
                                       parse_rational(r_str), iters, restarts, tol, seed);
            return emit(rep, out_path, seconds_since(t0));
        }
        if (n_probes->parsed()) {
            Report rep = check_probes(resolve_field(q, modulus_csv), d);
            return emit(rep, out_path, seconds_since(t0));
        }
        if (kak->parsed()) {
            Report rep = check_kakeya(resolve_field(q, modulus_csv), d, seed);
            return emit(rep, out_path, seconds_since(t0));
        }
        if (e_derive->parsed()) {
            Report rep = check_exponents();
            if (!csv_path.empty()) {
                std::ofstream out(csv_path, std::ios::binary);
                if (!out) throw std::runtime_error("cannot open CSV file: " + csv_path);
                out << ledger_csv(derive_ledger());
            }
            return emit(rep, out_path, seconds_since(t0));
        }
        if (e_check->parsed()) {
            std::optional<int> kd;
            if (e_check->count("--kakeya-d")) kd = kakeya_d;
            Report rep = exponents_point_check(expo_p, expo_r, expo_n, kd);
            return emit(rep, out_path, seconds_since(t0));
        }
        if (sweep->parsed()) {
            SweepParams sp;
            sp.quantity = quantity;
            sp.qs = parse_long_list(qs_csv);
            sp.d = d;
            sp.variety = variety;
            sp.iters = iters;
            sp.restarts = restarts;
            sp.tol = tol;
            sp.seed = seed;
            if (quantity == "opnorm") {
                sp.r = parse_rational(r_str);
            } else if (quantity == "kakeya") {
                sp.kp = p_str.empty() ? Rational(d) : parse_rational(p_str);
                sp.kr = sweep->count("--r") ? parse_rational(r_str) : Rational(d);
            }
            std::vector<SweepRow> rows = run_sweep(sp);
            std::string csv = sweep_csv(rows);
            std::cout << csv;
            bool all = true;
            for (const auto& row : rows) all = all && row.pass;
            std::cout << "overall: " << (all ? "PASS" : "FAIL") << " in "
                      << format_double(seconds_since(t0)) << " s\n";
            if (!out_path.empty()) {
                std::ofstream out(out_path, std::ios::binary);
                if (!out) throw std::runtime_error("cannot open CSV file: " + out_path);
                out << csv;
            }
            return all ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no subcommand selected\n";
    return 2;
}
