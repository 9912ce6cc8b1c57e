// Command-line surface: simulate catalog systems, find and continue periodic
// orbits, compute plane-curve invariants, lift curves through the complex
// square, run randomized validation corpora, and render SVG plots.
//
// Exit codes: 0 success, 1 numerical failure, 2 configuration error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "szplus/families.hpp"
#include "szplus/integrability.hpp"
#include "szplus/io.hpp"
#include "szplus/orbit.hpp"
#include "szplus/regularization.hpp"
#include "szplus/synthesis.hpp"

using namespace szplus;

namespace {

struct SystemFlags {
    std::string config_path;
    std::string catalog = "kepler";
    std::vector<std::string> params;   // key=value

    SystemSpec resolve() const {
        std::map<std::string, double> p;
        for (const auto& kv : params) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ConfigError("--param expects key=value, got: " + kv);
            p[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        }
        if (!config_path.empty()) {
            // config file wins over flags, with a warning on conflicts
            auto sys = system_from_json(json::parse(read_file(config_path)));
            if (!params.empty() || catalog != "kepler")
                std::cerr << "warning: --config overrides --system/--param\n";
            return sys;
        }
        const auto id = catalog_from_name(catalog);
        if (!id) throw ConfigError("unknown catalog id: " + catalog);
        return make_system(*id, p);
    }
};

void add_system_flags(CLI::App* cmd, SystemFlags& f) {
    cmd->add_option("--config", f.config_path,
                    "system config JSON ({\"catalog_id\",\"params\"})");
    cmd->add_option("--system", f.catalog, "catalog id (default kepler)");
    cmd->add_option("--param", f.params, "system parameter key=value");
}

int cmd_simulate(const SystemFlags& sf, std::vector<double> state, double tmax,
                 double sample_dt, const std::string& out_csv,
                 const std::string& out_svg) {
    auto sys = sf.resolve();
    PhaseState s0{{state[0], state[1]}, {state[2], state[3]}, 0.0};
    IntegrateOptions opt;
    opt.sample_dt = sample_dt;
    auto traj = integrate(sys, s0, tmax, opt);
    const double c = energy(sys, s0);
    std::cout << "system " << catalog_name(sys.id) << " energy " << c
              << " samples " << traj.samples.size() << " max-energy-drift "
              << traj.max_energy_drift() << '\n';
    if (traj.handoff)
        std::cout << "stopped near a singularity at t=" << traj.handoff_state.t
                  << " (collision handoff)\n";
    if (!out_csv.empty()) write_file_atomic(out_csv, trajectory_to_csv(sys, traj));
    if (!out_svg.empty())
        write_file_atomic(out_svg, trajectory_to_svg(sys, traj, c));
    return 0;
}

int cmd_orbit(const SystemFlags& sf, double c, double guess, double vy_sign,
              int crossing, const std::string& out_json,
              const std::string& out_curve) {
    auto sys = sf.resolve();
    ShootingOptions opt;
    opt.vy_sign = vy_sign;
    opt.crossing_index = crossing;
    auto orb = find_periodic_orbit(sys, c, guess, opt);
    json j;
    j["system"] = catalog_name(sys.id);
    j["energy"] = orb.c;
    j["initial"] = {orb.initial.q.x, orb.initial.q.y, orb.initial.qdot.x,
                    orb.initial.qdot.y};
    j["period"] = orb.period;
    j["residual"] = orb.residual;
    std::cout << j.dump(2) << '\n';
    if (!out_json.empty()) write_file_atomic(out_json, j.dump(2) + "\n");
    if (!out_curve.empty()) write_curve(out_curve, project_to_curve(orb));
    return 0;
}

int cmd_family(const SystemFlags& sf, double c_from, double c_to, double guess,
               double vy_sign, std::size_t min_members,
               const std::string& out_jsonl, const std::string& out_events) {
    auto sys = sf.resolve();
    ShootingOptions opt;
    opt.vy_sign = vy_sign;
    auto start = find_periodic_orbit(sys, c_from, guess, opt);
    auto orbits = continue_family(sys, start, c_to, min_members, opt);
    std::vector<FamilyMember> members;
    std::vector<std::vector<EventRecord>> gaps;
    for (const auto& orb : orbits) {
        FamilyMember m;
        m.orbit = orb;
        m.curve = project_to_curve(orb);
        m.invariants = invariants_geometric(m.curve);
        members.push_back(std::move(m));
    }
    std::vector<EventRecord> all_events;
    for (std::size_t i = 0; i + 1 < members.size(); ++i) {
        // between adjacent members, scan the interpolating energy segment
        auto fam = [&](double c) {
            const double t = (c - orbits[i].c) /
                             (orbits[i + 1].c - orbits[i].c + 1e-300);
            const double x = (1 - t) * orbits[i].initial.q.x +
                             t * orbits[i + 1].initial.q.x;
            return project_to_curve(find_periodic_orbit(sys, c, x, opt));
        };
        std::vector<EventRecord> evs;
        try {
            evs = detect_events(fam, orbits[i].c, orbits[i + 1].c, 4);
        } catch (const std::runtime_error& e) {
            std::cerr << "warning: event scan failed between members " << i
                      << " and " << i + 1 << ": " << e.what() << '\n';
        }
        for (const auto& ev : evs) all_events.push_back(ev);
        gaps.push_back(std::move(evs));
    }
    auto rep = verify_family_invariants(
        [&] {
            std::vector<PolyCurve> cs;
            for (const auto& m : members) cs.push_back(m.curve);
            return cs;
        }(),
        gaps);
    std::cout << "members " << members.size() << " events "
              << all_events.size() << " invariants-constant "
              << (rep.invariants_constant ? "yes" : "no")
              << " tracked-matches " << (rep.tracked_matches ? "yes" : "no")
              << '\n';
    if (!out_jsonl.empty()) write_file_atomic(out_jsonl, family_to_jsonl(members));
    if (!out_events.empty())
        write_file_atomic(out_events, events_to_csv(all_events));
    return 0;
}

int cmd_invariants(const std::vector<std::string>& files,
                   const std::string& out_csv) {
    std::vector<InvariantRow> rows;
    for (const auto& path : files) {
        InvariantRow row;
        row.id = path;
        try {
            const auto k = read_curve(path);
            row.inv = invariants_geometric(k);
            row.n = double_points(k).size();
            row.rotation = rotation_number(k);
            row.ok = true;
        } catch (const ConfigError&) {
            throw;   // unreadable input is a hard configuration error
        } catch (const std::runtime_error& e) {
            row.note = e.what();
        }
        rows.push_back(std::move(row));
    }
    const auto csv = invariant_rows_to_csv(rows);
    std::cout << csv;
    if (!out_csv.empty()) write_file_atomic(out_csv, csv);
    for (const auto& r : rows)
        if (!r.ok) std::cerr << "warning: skipped " << r.id << ": " << r.note << '\n';
    return 0;
}

int cmd_lift(const std::string& in, const std::string& out_prefix) {
    const auto k = read_curve(in);
    const auto lift = levi_civita_lift_curve(k);
    auto inv = invariants_geometric(k);
    std::cout << "components " << lift.components.size() << " w0 " << inv.w0
              << " J2 " << inv.j2 << '\n';
    if (!out_prefix.empty())
        for (std::size_t i = 0; i < lift.components.size(); ++i)
            write_curve(out_prefix + "." + std::to_string(i) + ".json",
                        lift.components[i]);
    return 0;
}

int cmd_render(const std::string& in, const std::string& out,
               bool face_labels) {
    const auto k = read_curve(in);
    write_file_atomic(out, curve_to_svg(k, face_labels));
    std::cout << "wrote " << out << '\n';
    return 0;
}

int cmd_validate(std::size_t size, unsigned seed, const std::string& out_json,
                 const std::string& programs_out) {
    json verdict;
    verdict["seed"] = seed;
    verdict["corpus_size"] = size;
    bool ok = true;

    if (size == 0) {
        std::cerr << "warning: corpus size 0; validation is vacuous\n";
        verdict["checks"] = json::array();
        verdict["pass"] = true;
        std::cout << verdict.dump(2) << '\n';
        if (!out_json.empty())
            write_file_atomic(out_json, verdict.dump(2) + "\n");
        return 0;
    }

    // 1. oracle vs geometric J+, and the parity law J2 = 2 J1 - 1 on odd
    //    curves, across a seeded random move-program corpus
    std::size_t mismatches = 0, parity_failures = 0, odd_seen = 0;
    json programs = json::array();
    for (std::size_t i = 0; i < size; ++i) {
        const unsigned s = seed + static_cast<unsigned>(i);
        auto res = run_random_program(s);
        auto inv = invariants_geometric(res.curve);
        if (inv.j_plus != res.j_plus || inv.w0 != res.w0) ++mismatches;
        if (inv.odd_parity) {
            ++odd_seen;
            if (inv.j2 != inv.two_j1 - 1) ++parity_failures;
        }
        if (!programs_out.empty()) {
            json pj;
            pj["seed"] = s;
            pj["steps"] = json::array();
            for (const auto& st : res.log)
                pj["steps"].push_back({{"op", st.op}, {"delta_j", st.delta_j}});
            pj["j_plus"] = res.j_plus;
            pj["w0"] = res.w0;
            programs.push_back(std::move(pj));
        }
    }
    verdict["checks"].push_back({{"name", "oracle-vs-geometric"},
                                 {"mismatches", mismatches},
                                 {"pass", mismatches == 0}});
    verdict["checks"].push_back({{"name", "odd-parity-relation"},
                                 {"odd_curves", odd_seen},
                                 {"failures", parity_failures},
                                 {"pass", parity_failures == 0}});
    ok = ok && mismatches == 0 && parity_failures == 0;

    // 2. standard-curve closed forms
    bool std_ok = true;
    for (int j = -6; j <= 6; ++j) {
        auto res = standard_curve(j);
        if (res.j_plus != (j == 0 ? 0 : 2 - 2 * std::abs(j))) std_ok = false;
        if (invariants_geometric(res.curve).j_plus != res.j_plus) std_ok = false;
    }
    verdict["checks"].push_back({{"name", "standard-curves"}, {"pass", std_ok}});
    ok = ok && std_ok;

    // 3. integrability spot checks
    bool int_ok = true;
    for (auto id : {CatalogId::Stark, CatalogId::FrozenHillCentrifugal,
                    CatalogId::Euler, CatalogId::Lagrange}) {
        auto rep = poisson_bracket_residual(make_system(id), 200, seed, 3);
        if (rep.bracket_residual > 1e-6 || rep.value_drift > 1e-7)
            int_ok = false;
    }
    verdict["checks"].push_back({{"name", "integrability"}, {"pass", int_ok}});
    ok = ok && int_ok;

    verdict["pass"] = ok;
    std::cout << verdict.dump(2) << '\n';
    if (!out_json.empty()) write_file_atomic(out_json, verdict.dump(2) + "\n");
    if (!programs_out.empty())
        write_file_atomic(programs_out, programs.dump(2) + "\n");
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar Stark-Zeeman systems: orbits, curves, invariants"};
    app.require_subcommand(1);

    // simulate
    SystemFlags sim_sys;
    std::vector<double> sim_state{1.0, 0.0, 0.0, 1.0};
    double sim_tmax = 10.0, sim_dt = 0.01;
    std::string sim_csv, sim_svg;
    auto* sim = app.add_subcommand("simulate", "integrate an initial state");
    add_system_flags(sim, sim_sys);
    sim->add_option("--state", sim_state, "q1 q2 qd1 qd2")->expected(4);
    sim->add_option("--tmax", sim_tmax, "integration time");
    sim->add_option("--sample-dt", sim_dt, "output sampling step");
    sim->add_option("--out-csv", sim_csv, "trajectory CSV path");
    sim->add_option("--out-svg", sim_svg, "orbit plot with Hill boundary");

    // orbit
    SystemFlags orb_sys;
    double orb_c = -0.5, orb_guess = 1.0, orb_vy = 1.0;
    int orb_crossing = 1;
    std::string orb_json, orb_curve;
    auto* orb = app.add_subcommand("orbit", "find a symmetric periodic orbit");
    add_system_flags(orb, orb_sys);
    orb->add_option("--energy", orb_c, "energy level");
    orb->add_option("--guess", orb_guess, "initial axis position");
    orb->add_option("--vy-sign", orb_vy, "sign of initial vertical velocity");
    orb->add_option("--crossing", orb_crossing, "closing axis-crossing index");
    orb->add_option("--out-json", orb_json, "orbit record path");
    orb->add_option("--out-curve", orb_curve, "projected curve JSON path");

    // family
    SystemFlags fam_sys;
    double fam_from = 0.5, fam_to = 1.0, fam_guess = 1.0, fam_vy = 1.0;
    std::size_t fam_members = 30;
    std::string fam_jsonl, fam_events;
    auto* fam = app.add_subcommand("family", "continue an orbit family in energy");
    add_system_flags(fam, fam_sys);
    fam->add_option("--from", fam_from, "starting energy");
    fam->add_option("--to", fam_to, "target energy");
    fam->add_option("--guess", fam_guess, "axis position at starting energy");
    fam->add_option("--vy-sign", fam_vy, "sign of initial vertical velocity");
    fam->add_option("--members", fam_members, "minimum member count");
    fam->add_option("--out-jsonl", fam_jsonl, "family archive (JSON lines)");
    fam->add_option("--out-events", fam_events, "events CSV path");

    // invariants
    std::vector<std::string> inv_files;
    std::string inv_csv;
    auto* inv = app.add_subcommand("invariants",
                                   "invariant table for curve files");
    inv->add_option("files", inv_files, "curve JSON files");
    inv->add_option("--out-csv", inv_csv, "write the table here too");

    // lift
    std::string lift_in, lift_out;
    auto* lift = app.add_subcommand("lift", "complex-square preimage of a curve");
    lift->add_option("file", lift_in, "curve JSON file")->required();
    lift->add_option("--out-prefix", lift_out, "write component curves here");

    // validate
    std::size_t val_size = 100;
    unsigned val_seed = 2024;
    std::string val_json, val_programs;
    auto* val = app.add_subcommand("validate", "randomized validation corpus");
    val->add_option("--size", val_size, "corpus size");
    val->add_option("--seed", val_seed, "base seed");
    val->add_option("--out-json", val_json, "verdict path");
    val->add_option("--emit-programs", val_programs,
                    "write the generated move programs as JSON");

    // render
    std::string ren_in, ren_out;
    bool ren_labels = true;
    auto* ren = app.add_subcommand("render", "curve to SVG");
    ren->add_option("file", ren_in, "curve JSON file")->required();
    ren->add_option("--out", ren_out, "SVG path")->required();
    ren->add_flag("--face-labels,!--no-face-labels", ren_labels,
                  "label bounded faces with windings");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed())
            return cmd_simulate(sim_sys, sim_state, sim_tmax, sim_dt, sim_csv,
                                sim_svg);
        if (orb->parsed())
            return cmd_orbit(orb_sys, orb_c, orb_guess, orb_vy, orb_crossing,
                             orb_json, orb_curve);
        if (fam->parsed())
            return cmd_family(fam_sys, fam_from, fam_to, fam_guess, fam_vy,
                              fam_members, fam_jsonl, fam_events);
        if (inv->parsed()) return cmd_invariants(inv_files, inv_csv);
        if (lift->parsed()) return cmd_lift(lift_in, lift_out);
        if (val->parsed())
            return cmd_validate(val_size, val_seed, val_json, val_programs);
        if (ren->parsed()) return cmd_render(ren_in, ren_out, ren_labels);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
