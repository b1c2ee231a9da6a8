// Copyright 2026 The entcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entcert/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>

#include "entcert/classical_models.hpp"
#include "entcert/error.hpp"
#include "entcert/hilbert.hpp"
#include "entcert/inequalities.hpp"
#include "entcert/parallel.hpp"
#include "entcert/protocol_sim.hpp"
#include "entcert/rng.hpp"
#include "entcert/stat_tests.hpp"
#include "entcert/states.hpp"
#include "report.hpp"
#include "state_spec.hpp"

namespace entcert::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr double kDeg = std::numbers::pi / 180.0;

struct Common {
    std::uint64_t seed = 2026;
    std::string out = "entcert-out";
    unsigned workers = 1;
    std::optional<std::size_t> runs;
};

struct ChshOptions {
    std::string state = "singlet";
    bool optimize = false;
    double grid_step_deg = 1.0;
    std::string angles_deg = "0,90,45,135";
};

struct DiceOptions {
    std::size_t trials = 1000000;
};

struct TorreOptions {
    double theta_deg = 45.0;
};

struct ProtocolOptions {
    std::string model = "loophole-default";
    std::vector<double> p1;
    std::vector<double> p2;
    std::vector<double> table;
    std::string variant = "blockm";
    std::size_t n1 = 4;
    std::size_t n2 = 250;
    std::size_t bins = 100;
    double alpha = 0.05;
};

struct AuditOptions {
    std::string input;
    std::size_t bins = 100;
    double alpha = 0.05;
};

std::string rational_text(const classical::Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const classical::Rational& r) { return double(r.numerator()) / double(r.denominator()); }

void write_audit_rows(CsvWriter& csv, std::optional<std::uint64_t> run, const stats::HomogeneityReport& rep) {
    for (const auto& t : rep.tests) {
        if (run) csv.cell(*run);
        csv.cell(t.name).cell(t.statistic).cell(t.degrees_of_freedom).cell(t.p_value).cell(t.note).end_row();
    }
}

// ---------------------------------------------------------------- chsh

void cmd_chsh(const Common& common, const ChshOptions& opt, std::ostream& out) {
    if (!(opt.grid_step_deg > 0.0 && opt.grid_step_deg <= 90.0)) throw UsageError("--grid-step-deg must be in (0, 90]");
    const auto angles = parse_number_list(opt.angles_deg);
    if (angles.size() != 4) throw UsageError("--angles takes four comma-separated values: a,a',b,b' in degrees");
    const auto rho = parse_state(opt.state);
    if (rho.structure() != hilbert::TensorStructure::bipartite(2, 2)) throw UsageError("chsh needs a two-qubit state");

    std::array<double, 4> deg{angles[0], angles[1], angles[2], angles[3]};
    inequalities::CHSHReport report{};
    if (opt.optimize) {
        const auto best = inequalities::maximize_chsh(rho, opt.grid_step_deg * kDeg);
        const double step = opt.grid_step_deg * kDeg;
        const double rad[4] = {best.angles.a, best.angles.a_prime, best.angles.b, best.angles.b_prime};
        for (int i = 0; i < 4; ++i) deg[i] = std::round(rad[i] / step) * opt.grid_step_deg;
        report = best.report;
    } else {
        report = inequalities::chsh_value(
            rho, inequalities::planar_config({deg[0] * kDeg, deg[1] * kDeg, deg[2] * kDeg, deg[3] * kDeg}));
    }
    const double neg = states::negativity(rho);

    const fs::path dir(common.out);
    {
        CsvWriter csv(dir / "chsh_report.csv",
                      {"state", "optimized", "a_deg", "a_prime_deg", "b_deg", "b_prime_deg", "e_ab", "e_ab_prime",
                       "e_a_prime_b", "e_a_prime_b_prime", "s", "classical_bound_violated", "tsirelson_exceeded",
                       "negativity", "entangled"});
        csv.cell(opt.state).cell(opt.optimize);
        for (double d : deg) csv.cell(d);
        csv.cell(report.e_ab).cell(report.e_ab_prime).cell(report.e_a_prime_b).cell(report.e_a_prime_b_prime);
        csv.cell(report.s_value).cell(report.classical_bound_violated).cell(report.tsirelson_exceeded);
        csv.cell(neg).cell(states::is_entangled(rho)).end_row();
    }
    {
        // Settings (0, 2 phi, phi, 3 phi): the singlet reaches 2 sqrt 2 at phi = 45.
        CsvWriter csv(dir / "chsh_scan.csv", {"phi_deg", "e_ab", "e_ab_prime", "e_a_prime_b", "e_a_prime_b_prime", "s"});
        const auto steps = static_cast<std::size_t>(std::floor(180.0 / opt.grid_step_deg + 1e-9));
        for (std::size_t k = 0; k <= steps; ++k) {
            const double phi = double(k) * opt.grid_step_deg;
            const auto r = inequalities::chsh_value(
                rho, inequalities::planar_config({0.0, 2.0 * phi * kDeg, phi * kDeg, 3.0 * phi * kDeg}));
            csv.cell(phi).cell(r.e_ab).cell(r.e_ab_prime).cell(r.e_a_prime_b).cell(r.e_a_prime_b_prime).cell(r.s_value);
            csv.end_row();
        }
    }
    out << "state " << opt.state << ": S = " << format_number(report.s_value) << " at (" << format_number(deg[0])
        << ", " << format_number(deg[1]) << ", " << format_number(deg[2]) << ", " << format_number(deg[3])
        << ") deg, classical bound violated: " << (report.classical_bound_violated ? "yes" : "no")
        << ", negativity = " << format_number(neg) << "\n";
}

// ---------------------------------------------------------------- dice

void cmd_dice(const Common& common, const DiceOptions& opt, std::ostream& out) {
    const std::size_t runs = common.runs.value_or(1);
    if (runs == 0) throw UsageError("--runs must be positive");
    if (opt.trials == 0) throw UsageError("--trials must be positive");
    const auto ensemble = classical::DicePairEnsemble::reference();
    const auto exact = classical::analytic_moments(ensemble);
    const fs::path dir(common.out);
    {
        CsvWriter csv(dir / "dice_exact.csv", {"quantity", "exact", "value"});
        const std::pair<const char*, classical::Rational> rows[] = {
            {"e_a", exact.e_a}, {"e_b", exact.e_b}, {"e_ab", exact.e_ab}, {"cov", exact.cov}};
        for (const auto& [name, value] : rows) csv.cell(name).cell(rational_text(value)).cell(to_double(value)).end_row();
    }
    CsvWriter csv(dir / "dice_runs.csv", {"run", "seed", "trials", "mean_a", "sem_a", "mean_b", "sem_b", "mean_ab",
                                          "sem_ab", "cov", "sem_cov", "within_4_sem"});
    std::size_t inside = 0;
    for (std::size_t run = 0; run < runs; ++run) {
        const auto seed = rng::derive_seed(common.seed, run);
        const auto m = classical::empirical_moments(classical::sample(ensemble, opt.trials, seed, common.workers));
        const bool ok = std::abs(m.mean_a - to_double(exact.e_a)) <= 4 * m.sem_a &&
                        std::abs(m.mean_b - to_double(exact.e_b)) <= 4 * m.sem_b &&
                        std::abs(m.mean_ab - to_double(exact.e_ab)) <= 4 * m.sem_ab &&
                        std::abs(m.cov - to_double(exact.cov)) <= 4 * m.sem_cov;
        inside += ok;
        csv.cell(std::uint64_t(run)).cell(seed).cell(std::uint64_t(opt.trials));
        csv.cell(m.mean_a).cell(m.sem_a).cell(m.mean_b).cell(m.sem_b).cell(m.mean_ab).cell(m.sem_ab);
        csv.cell(m.cov).cell(m.sem_cov).cell(ok).end_row();
    }
    out << "exact: E(A) = " << rational_text(exact.e_a) << ", E(B) = " << rational_text(exact.e_b)
        << ", E(AB) = " << rational_text(exact.e_ab) << ", cov = " << rational_text(exact.cov) << "\n"
        << "monte carlo: " << inside << " of " << runs << " runs within 4 SEM at n = " << opt.trials << "\n";
}

// ---------------------------------------------------------------- torre

void cmd_torre(const Common& common, const TorreOptions& opt, std::ostream& out) {
    using hilbert::ComplexMatrix;
    using hilbert::DensityOperator;
    using hilbert::TensorStructure;
    const auto x = hilbert::position_operator(8);
    const DensityOperator narrow(
        ComplexMatrix::diagonal({0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.0078125}),
        TensorStructure({8}));
    const DensityOperator flat = DensityOperator::maximally_mixed(TensorStructure({8}));

    struct Case {
        const char* name;
        DensityOperator rho;
        double k, n, m, l;
    };
    const Case cases[] = {
        {"position-asymmetric", hilbert::tensor_product(narrow, flat), 1, 1, 1, -1},
        {"position-symmetric", hilbert::tensor_product(flat, flat), 1, 1, 1, -1},
        {"position-general", hilbert::tensor_product(narrow, flat), 2, -1, 0.5, 3},
    };
    const fs::path dir(common.out);
    double worst = 0.0;
    {
        CsvWriter csv(dir / "torre.csv",
                      {"case", "k", "n", "m", "l", "covariance", "var_a", "var_b", "predicted", "residual"});
        for (const auto& c : cases) {
            const auto a = hilbert::lift_local(x, 0, c.rho.structure());
            const auto b = hilbert::lift_local(x, 1, c.rho.structure());
            const auto r = hilbert::covariance_bilinear(c.rho, c.k, c.n, c.m, c.l, a, b);
            worst = std::max(worst, r.residual());
            csv.cell(c.name).cell(c.k).cell(c.n).cell(c.m).cell(c.l);
            csv.cell(r.covariance).cell(r.variance_a).cell(r.variance_b).cell(r.predicted).cell(r.residual()).end_row();
        }
    }
    {
        CsvWriter csv(dir / "torre_spin.csv", {"case", "theta_a_deg", "theta_b_deg", "covariance", "commutator_norm"});
        const std::tuple<const char*, double, double> spins[] = {
            {"up-up", 0.0, 0.0}, {"tilted", opt.theta_deg, opt.theta_deg}, {"up-plus", 0.0, 90.0}};
        for (const auto& [name, ta, tb] : spins) {
            const auto rho = hilbert::tensor_product(states::qubit_planar(ta * kDeg), states::qubit_planar(tb * kDeg));
            const auto r = inequalities::torre_spin_covariance(rho);
            csv.cell(name).cell(ta).cell(tb).cell(r.covariance).cell(r.commutator_norm).end_row();
            out << "spin " << name << ": covariance = " << format_number(r.covariance) << "\n";
        }
    }
    out << "bilinear identity: max residual = " << format_number(worst) << "\n";
}

// ---------------------------------------------------------------- protocol

protocol::SignalModel build_model(const ProtocolOptions& opt) {
    if (opt.model == "loophole-default") return protocol::SignalModel::loophole_default();
    if (opt.model == "custom") return protocol::SignalModel(opt.p1, opt.p2, opt.table);
    throw UsageError("unknown model '" + opt.model + "' (expected loophole-default or custom)");
}

void cmd_protocol(const Common& common, const ProtocolOptions& opt, std::ostream& out) {
    const std::size_t runs = common.runs.value_or(100);
    if (runs == 0) throw UsageError("--runs must be positive");
    const auto variant = protocol::parse_variant(opt.variant);
    if (!variant) throw UsageError("unknown variant '" + opt.variant + "' (expected iid, blockm or blockn)");
    const protocol::ProtocolSpec spec{*variant, opt.n1, opt.n2};
    spec.validate();
    if (spec.total() < 10 * opt.bins) {
        throw UsageError("audit needs at least 10 outcomes per bin: N1 * N2 = " + std::to_string(spec.total()) +
                         " with " + std::to_string(opt.bins) + " bins");
    }
    const auto model = build_model(opt);

    const auto samples = protocol::generate_runs(model, spec, common.seed, runs, common.workers);
    std::vector<protocol::SignificanceReport> reports(runs);
    std::vector<stats::HomogeneityReport> audits(runs);
    parallel_for(runs, common.workers, [&](std::size_t i) {
        reports[i] = protocol::test_h0(samples[i], model);
        audits[i] = stats::simple_random_sample_audit(samples[i], opt.bins, opt.alpha);
    });

    std::optional<double> deff;
    if (runs >= 30) {
        try {
            deff = protocol::design_effect(samples);
        } catch (const DegenerateSampleError&) {
        }
    }

    const fs::path dir(common.out);
    std::vector<std::size_t> rejected(std::size(protocol::kAlphas), 0);
    std::size_t flagged = 0;
    {
        auto jsonl = open_output(dir / "protocol_runs.jsonl");
        for (std::size_t i = 0; i < runs; ++i) {
            const auto& r = reports[i];
            ordered_json rec;
            rec["run"] = i;
            rec["seed"] = samples[i].seed;
            rec["n"] = samples[i].outcomes.size();
            rec["sample_mean"] = r.sample_mean;
            rec["theoretical_mean"] = r.theoretical_mean;
            rec["ratio"] = r.ratio ? ordered_json(*r.ratio) : ordered_json(nullptr);
            rec["naive_sem"] = r.naive_sem;
            rec["z_score"] = r.z_score ? ordered_json(*r.z_score) : ordered_json(nullptr);
            ordered_json rej = ordered_json::object();
            for (std::size_t a = 0; a < r.h0_rejected_at.size(); ++a) {
                rej[format_number(r.h0_rejected_at[a].first)] = r.h0_rejected_at[a].second;
                rejected[a] += r.h0_rejected_at[a].second;
            }
            rec["h0_rejected"] = rej;
            rec["audit_bonferroni_p"] = audits[i].bonferroni_p;
            rec["audit_homogeneous"] = audits[i].overall_homogeneous;
            flagged += !audits[i].overall_homogeneous;
            jsonl << rec.dump() << '\n';
        }
    }
    {
        CsvWriter csv(dir / "protocol_audit.csv", {"run", "test", "statistic", "dof", "p_value", "note"});
        for (std::size_t i = 0; i < runs; ++i) write_audit_rows(csv, i, audits[i]);
    }
    {
        std::vector<std::string> header{"model", "variant", "n1", "n2", "runs", "theoretical_mean", "theoretical_sd",
                                        "design_effect"};
        for (double a : protocol::kAlphas) header.push_back("h0_rejection_rate_" + format_number(a));
        header.push_back("audit_flag_rate");
        CsvWriter csv(dir / "protocol_summary.csv", header);
        csv.cell(opt.model).cell(protocol::to_string(*variant)).cell(std::uint64_t(opt.n1)).cell(std::uint64_t(opt.n2));
        csv.cell(std::uint64_t(runs)).cell(protocol::theoretical_mean(model)).cell(protocol::theoretical_sd(model));
        csv.cell(deff);
        for (auto count : rejected) csv.cell(double(count) / double(runs));
        csv.cell(double(flagged) / double(runs)).end_row();
    }
    out << "protocol " << protocol::to_string(*variant) << " (" << opt.n1 << ", " << opt.n2 << "), " << runs
        << " runs: design effect = " << (deff ? format_number(*deff) : std::string("n/a"))
        << ", H0 rejected at 0.05 in " << rejected[0] << " runs, audit flagged " << flagged << " runs\n";
}

// ---------------------------------------------------------------- audit

std::vector<double> read_outcomes(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read input file '" + path + "'");
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r");
        double v = 0.0;
        const char* begin = line.data() + first;
        const char* end = line.data() + last + 1;
        const auto res = std::from_chars(begin, end, v);
        if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(v)) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": not a number: '" + std::string(begin, end) + "'");
        }
        values.push_back(v);
    }
    return values;
}

void cmd_audit(const Common& common, const AuditOptions& opt, std::ostream& out) {
    const auto values = read_outcomes(opt.input);
    if (values.size() < 10 * opt.bins) {
        throw UsageError("audit needs at least 10 outcomes per bin: " + std::to_string(values.size()) + " outcomes, " +
                         std::to_string(opt.bins) + " bins");
    }
    const auto rep = stats::simple_random_sample_audit(values, opt.bins, opt.alpha);
    const fs::path dir(common.out);
    {
        CsvWriter csv(dir / "audit.csv", {"test", "statistic", "dof", "p_value", "note"});
        write_audit_rows(csv, std::nullopt, rep);
    }
    {
        CsvWriter csv(dir / "audit_summary.csv", {"n", "bins", "alpha", "bonferroni_p", "homogeneous"});
        csv.cell(std::uint64_t(values.size())).cell(std::uint64_t(opt.bins)).cell(opt.alpha);
        csv.cell(rep.bonferroni_p).cell(rep.overall_homogeneous).end_row();
    }
    out << "audit of " << values.size() << " outcomes in " << opt.bins << " bins: Bonferroni p = "
        << format_number(rep.bonferroni_p) << ", " << (rep.overall_homogeneous ? "homogeneous" : "inhomogeneous")
        << " at alpha = " << format_number(opt.alpha) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Operational entanglement and sampling-loophole experiments", "entcert"};
    app.set_config("--config", "", "Read options from an INI file (for example a run_config.ini sidecar)");
    app.fallthrough();
    app.require_subcommand(1);

    Common common;
    app.add_option("--seed", common.seed, "Master seed")->capture_default_str();
    app.add_option("--out", common.out, "Output directory")->capture_default_str()->configurable(false);
    app.add_option("--workers", common.workers, "Worker threads (results do not depend on it)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber)
        ->configurable(false);
    app.add_option("--runs", common.runs, "Number of seeded runs (dice: 1, protocol: 100)");

    ChshOptions chsh;
    auto* chsh_cmd = app.add_subcommand("chsh", "CHSH value of a two-qubit state");
    chsh_cmd->add_option("--state", chsh.state, "singlet | werner:<w> | mixed-demo | product:<deg>,<deg> | "
                                                "convex:<w>@<deg>,<deg>;... | dice")
        ->capture_default_str();
    chsh_cmd->add_flag("--optimize", chsh.optimize, "Maximize S over the planar angle grid");
    chsh_cmd->add_option("--grid-step-deg", chsh.grid_step_deg, "Grid resolution in degrees")->capture_default_str();
    chsh_cmd->add_option("--angles", chsh.angles_deg, "Settings a,a',b,b' in degrees")->capture_default_str();

    DiceOptions dice;
    auto* dice_cmd = app.add_subcommand("dice", "Exact and Monte Carlo moments of the two-dice source");
    dice_cmd->add_option("--trials", dice.trials, "Trials per run")->capture_default_str();

    TorreOptions torre;
    auto* torre_cmd = app.add_subcommand("torre", "Bilinear covariance identity on product states");
    torre_cmd->add_option("--theta-deg", torre.theta_deg, "Tilt of both spins in the spin demo")->capture_default_str();

    ProtocolOptions proto;
    auto* proto_cmd = app.add_subcommand("protocol", "Simulate (N1, N2) sampling protocols and test H0");
    proto_cmd->add_option("--model", proto.model, "loophole-default | custom")->capture_default_str();
    proto_cmd->add_option("--p1", proto.p1, "Signal distribution p1(m) for a custom model");
    proto_cmd->add_option("--p2", proto.p2, "Device distribution p2(n) for a custom model");
    proto_cmd->add_option("--table", proto.table, "Row-major outcome table A(m, n) for a custom model");
    proto_cmd->add_option("--variant", proto.variant, "iid | blockm | blockn")->capture_default_str();
    proto_cmd->add_option("--n1", proto.n1, "Number of blocks")->capture_default_str();
    proto_cmd->add_option("--n2", proto.n2, "Block length")->capture_default_str();
    proto_cmd->add_option("--bins", proto.bins, "Contiguous bins for the homogeneity audit")->capture_default_str();
    proto_cmd->add_option("--alpha", proto.alpha, "Audit significance level")->capture_default_str();

    AuditOptions audit;
    auto* audit_cmd = app.add_subcommand("audit", "Homogeneity audit of an outcome file (one number per line)");
    audit_cmd->add_option("--input", audit.input, "Outcome file")->required();
    audit_cmd->add_option("--bins", audit.bins, "Contiguous bins")->capture_default_str();
    audit_cmd->add_option("--alpha", audit.alpha, "Significance level")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        fs::create_directories(common.out);
        {
            auto sidecar = open_output(fs::path(common.out) / "run_config.ini");
            sidecar << app.config_to_str(true, false);
        }
        if (chsh_cmd->parsed()) cmd_chsh(common, chsh, out);
        if (dice_cmd->parsed()) cmd_dice(common, dice, out);
        if (torre_cmd->parsed()) cmd_torre(common, torre, out);
        if (proto_cmd->parsed()) cmd_protocol(common, proto, out);
        if (audit_cmd->parsed()) cmd_audit(common, audit, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace entcert::cli
