// selfprod — enumerates the sets {n <= x : n = k*f(k)} for f in
// {tau, omega, bigomega, phi}, hunts collisions of k -> k*f(k), inverts
// n = k*phi(k), and evaluates the related Euler-product constants with
// certified truncation tails.  Results are CSV/JSON on stdout or --out.
//
// Exit codes: 0 ok, 1 domain/usage error, 2 I/O error, 3 resource cap.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "selfprod/errors.hpp"
#include "selfprod/harness.hpp"

namespace {

using namespace selfprod;

FKind parse_kind(const std::string& name) {
    static const std::map<std::string, FKind> kinds = {
        {"tau", FKind::Tau},
        {"omega", FKind::Omega},
        {"bigomega", FKind::BigOmega},
        {"phi", FKind::Phi},
    };
    auto it = kinds.find(name);
    if (it == kinds.end())
        throw std::invalid_argument("unknown kind '" + name + "' (expected tau|omega|bigomega|phi)");
    return it->second;
}

std::vector<u64> parse_u64_list(const std::string& csv) {
    std::vector<u64> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        const u64 v = std::stoull(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad real '" + item + "'");
        out.push_back(v);
    }
    return out;
}

// Runs fn against --out (stdout when "-").
void with_output(const std::string& out_path, const std::function<void(std::ostream&)>& fn) {
    if (out_path.empty() || out_path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw io_error("cannot open '" + out_path + "' for writing");
    fn(file);
    file.flush();
    if (!file) throw io_error("write to '" + out_path + "' failed");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"self-product sets of arithmetic functions"};
    app.require_subcommand(1);

    std::string kind_name;
    std::string x_list_csv;
    std::string s_list_csv;
    std::string out_path = "-";
    u64 x = 0;
    u64 n = 0;
    u64 x_cap = 10000000;
    HarnessOptions opt;

    auto add_common = [&](CLI::App* sub, bool wants_kind) {
        if (wants_kind)
            sub->add_option("--kind", kind_name, "tau|omega|bigomega|phi")->required();
        sub->add_option("--prime-limit", opt.prime_limit, "Euler products truncated here")
            ->default_val(u64(1000000));
        sub->add_option("--out", out_path, "output path, '-' for stdout");
        sub->add_option("--threads", opt.threads, "worker threads, 0 = all cores");
    };

    CLI::App* count = app.add_subcommand("count", "count A_f in [1, x], one CSV row");
    add_common(count, true);
    count->add_option("--x", x)->required();

    CLI::App* scan = app.add_subcommand("scan", "asymptotics table over an ascending x list");
    add_common(scan, true);
    scan->add_option("--x-list", x_list_csv, "comma-separated, ascending")->required();

    CLI::App* collisions = app.add_subcommand("collisions", "witness pairs k1*f(k1) = k2*f(k2) <= x");
    add_common(collisions, true);
    collisions->add_option("--x", x)->required();

    CLI::App* invert = app.add_subcommand("invert-phi", "solve n = k*phi(k), print k or 'none'");
    invert->add_option("--n", n)->required();
    invert->add_option("--out", out_path, "output path, '-' for stdout");

    CLI::App* pil = app.add_subcommand("pi-l", "counts of n <= x with omega(n) = l");
    add_common(pil, false);
    pil->add_option("--x", x)->required();

    CLI::App* constants = app.add_subcommand("constants", "Euler-product constants as JSON");
    add_common(constants, false);

    CLI::App* fcheck = app.add_subcommand("fcheck", "verify F(s) = zeta(2s) G(s) numerically");
    add_common(fcheck, false);
    fcheck->add_option("--s-list", s_list_csv, "comma-separated s values in [0.6, 2]")->required();
    fcheck->add_option("--x-cap", x_cap, "Dirichlet series truncation")->default_val(u64(10000000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 1;
    }

    try {
        if (count->parsed()) {
            const FKind kind = parse_kind(kind_name);
            with_output(out_path, [&](std::ostream& os) { cmd_count(os, kind, x, opt); });
        } else if (scan->parsed()) {
            const FKind kind = parse_kind(kind_name);
            const std::vector<u64> xs = parse_u64_list(x_list_csv);
            with_output(out_path, [&](std::ostream& os) { cmd_scan(os, kind, xs, opt); });
        } else if (collisions->parsed()) {
            const FKind kind = parse_kind(kind_name);
            with_output(out_path,
                        [&](std::ostream& os) { cmd_collisions(os, std::cerr, kind, x, opt); });
        } else if (invert->parsed()) {
            if (n == 0) throw std::domain_error("invert-phi: n must be >= 1");
            with_output(out_path, [&](std::ostream& os) { cmd_invert_phi(os, n); });
        } else if (pil->parsed()) {
            with_output(out_path, [&](std::ostream& os) { cmd_pi_l(os, x, opt); });
        } else if (constants->parsed()) {
            with_output(out_path, [&](std::ostream& os) { cmd_constants(os, opt); });
        } else if (fcheck->parsed()) {
            const std::vector<double> ss = parse_double_list(s_list_csv);
            with_output(out_path, [&](std::ostream& os) { cmd_fcheck(os, ss, x_cap, opt); });
        }
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
