// chainforge: weighted-chain constructions, cospectrality / transfer
// certificates, and power-sum solution tooling on one command line.
#include <CLI11.hpp>

#include <complex>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <sstream>

#include "chainforge/cospec.hpp"
#include "chainforge/json_io.hpp"
#include "chainforge/opsbuild.hpp"
#include "chainforge/pst.hpp"
#include "chainforge/pte.hpp"

namespace cf = chainforge;
using cf::Json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitVerifiedFalse = 2;

int workers_from_env() {
    const char* w = std::getenv("CHAINFORGE_WORKERS");
    if (!w) return 1;
    int n = std::atoi(w);
    return n >= 1 ? n : 1;
}

Json manifest(const std::string& command, Json options) {
    return Json{{"command", command},
                {"options", std::move(options)},
                {"version", kVersion},
                {"workers", workers_from_env()}};
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<cf::Integer> parse_int_list(const std::string& csv) {
    std::vector<cf::Integer> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.emplace_back(tok);
    }
    if (out.empty()) throw cf::Error("empty integer list: '" + csv + "'");
    return out;
}

Json cospec_cert_json(const cf::CospectralCertificate& cert) {
    Json j{{"l", cert.l}, {"m", cert.m}};
    if (cert.mode == cf::CospectralCertificate::Mode::Exact) {
        j["mode"] = "exact";
        j["deleted_charpoly"] = cf::poly_to_json(cert.deleted_charpoly);
        j["c_squared"] = cf::rational_to_json(cert.c_squared);
    } else {
        j["mode"] = "numeric";
        j["max_deviation"] = cert.max_deviation;
    }
    return j;
}

Json pst_cert_json(const cf::PSTCertificate& cert) {
    Json j{{"l", cert.l}, {"m", cert.m}, {"time", cert.time}, {"fidelity", cert.fidelity}};
    if (cert.mode == cf::PSTCertificate::Mode::Exact) {
        j["mode"] = "exact";
        j["C"] = cf::rational_to_json(cert.C);
        Json sp = Json::array();
        for (const auto& t : cert.normalized_spectrum) sp.push_back(t.get_str());
        j["normalized_spectrum"] = sp;
    } else {
        j["mode"] = "numeric";
    }
    return j;
}

Json build_cert_json(const cf::BuildCertificate& bc) {
    Json rho = Json::array(), tau = Json::array();
    for (const auto& r : bc.rho) rho.push_back(cf::rational_to_json(r));
    for (const auto& t : bc.tau) tau.push_back(cf::rational_to_json(t));
    return Json{{"q_m", cf::poly_to_json(bc.q_m)},
                {"q_top", cf::poly_to_json(bc.q_top)},
                {"q_hat", cf::poly_to_json(bc.q_hat)},
                {"scale", cf::rational_to_json(bc.scale)},
                {"rho", rho},
                {"tau", tau},
                {"q_d", cf::poly_to_json(bc.q_d)},
                {"chain", cf::chain_to_json(bc.chain)}};
}

// --- the two pinned constructions reused by several repro subcommands ---

cf::PTESolution pte5_first() {
    return *cf::verify_pte({-8, -4, 0, 8, 9}, {-7, -6, 2, 6, 10});
}

std::vector<cf::Integer> seven_chain_spectrum() { return {5, 4, 3, 1, 0, -2, -3, -4}; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted chain construction and certification toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    int exit_code = 0;

    // ---- build ----
    auto* build = app.add_subcommand("build", "construct a chain through q_m and q_top");
    std::string build_qm, build_qtop, build_out;
    std::vector<std::string> build_mu;
    build->add_option("--qm", build_qm, "polynomial JSON file")->required();
    build->add_option("--qtop", build_qtop, "polynomial JSON file")->required();
    build->add_option("--mu", build_mu, "free abscissae, one per empty gap");
    build->add_option("-o,--out", build_out, "also write the chain JSON here");
    build->callback([&] {
        cf::ExactPolynomial qm = cf::poly_from_json(cf::load_json_file(build_qm));
        cf::ExactPolynomial qtop = cf::poly_from_json(cf::load_json_file(build_qtop));
        cf::BuildOptions opts;
        if (!build_mu.empty()) {
            std::vector<cf::Rational> mus;
            for (const auto& m : build_mu) mus.push_back(cf::rational_from_string(m));
            opts.mu = std::move(mus);
        }
        cf::BuildCertificate bc = cf::build_ops(qm, qtop, opts);
        Json out{{"manifest", manifest("build", {{"qm", build_qm}, {"qtop", build_qtop}})},
                 {"certificate", build_cert_json(bc)},
                 {"chain", cf::chain_to_json(bc.chain, true)}};
        emit(out);
        if (!build_out.empty()) {
            std::ofstream f(build_out);
            f << cf::chain_to_json(bc.chain).dump(2) << "\n";
        }
        std::cerr << "built a " << bc.chain.d() << "-chain through the requested pair\n";
    });

    // ---- chain ----
    auto* chain_cmd = app.add_subcommand("chain", "inspect a chain");
    chain_cmd->require_subcommand(1);
    std::string chain_file;
    chain_cmd->add_option("--chain", chain_file, "chain JSON file")->required();
    double amp_t = 0.0;
    int amp_from = 0, amp_to = 0, alpha_v = 0;

    auto* ce = chain_cmd->add_subcommand("eigen", "eigenvalues and eigenvectors");
    ce->callback([&] {
        cf::Chain c = cf::chain_from_json(cf::load_json_file(chain_file));
        cf::SpectralData sd = cf::eigen(c);
        Json evs = Json::array(), vecs = Json::array();
        for (const auto& e : sd.eigenvalues)
            evs.push_back(e.exact ? cf::rational_to_json(e.value) : Json(e.witness));
        for (const auto& v : sd.vectors) vecs.push_back(v);
        emit(Json{{"manifest", manifest("chain eigen", {{"chain", chain_file}})},
                  {"eigenvalues", evs},
                  {"vectors", vecs}});
    });
    auto* co = chain_cmd->add_subcommand("ops", "the polynomial sequence");
    co->callback([&] {
        cf::Chain c = cf::chain_from_json(cf::load_json_file(chain_file));
        cf::OPSequence seq = cf::ops_from_chain(c);
        Json ps = Json::array();
        for (const auto& p : seq.p) ps.push_back(cf::poly_to_json(p));
        emit(Json{{"manifest", manifest("chain ops", {{"chain", chain_file}})}, {"p", ps}});
    });
    auto* ca = chain_cmd->add_subcommand("alpha", "walk generating function at a vertex");
    ca->add_option("--v", alpha_v, "vertex")->required();
    ca->callback([&] {
        cf::Chain c = cf::chain_from_json(cf::load_json_file(chain_file));
        cf::RationalFn fn = cf::alpha(c, alpha_v);
        emit(Json{{"manifest", manifest("chain alpha", {{"chain", chain_file}, {"v", alpha_v}})},
                  {"num", cf::poly_to_json(fn.num)},
                  {"den", cf::poly_to_json(fn.den)}});
    });
    auto* cam = chain_cmd->add_subcommand("amplitude", "transition amplitude at time t");
    cam->add_option("--t", amp_t, "time")->required();
    cam->add_option("--from", amp_from, "source vertex")->required();
    cam->add_option("--to", amp_to, "target vertex")->required();
    cam->callback([&] {
        cf::Chain c = cf::chain_from_json(cf::load_json_file(chain_file));
        std::complex<double> a = cf::transition_amplitude(c, amp_t, amp_from, amp_to);
        emit(Json{{"manifest", manifest("chain amplitude", {{"chain", chain_file}})},
                  {"re", a.real()},
                  {"im", a.imag()},
                  {"abs", std::abs(a)}});
    });

    // ---- cospec ----
    auto* cospec = app.add_subcommand("cospec", "cospectral vertex tooling");
    cospec->require_subcommand(1);
    std::string cs_chain;
    int cs_l = 0, cs_m = 0, cs_d = 0, cs_k = 1;
    bool cs_exact = false;

    auto* csc = cospec->add_subcommand("check", "certify or refute a cospectral pair");
    csc->add_option("--chain", cs_chain)->required();
    csc->add_option("--l", cs_l)->required();
    csc->add_option("--m", cs_m)->required();
    csc->add_flag("--exact", cs_exact, "only accept exact certificates");
    csc->callback([&] {
        cf::Chain c = cf::chain_from_json(cf::load_json_file(cs_chain));
        auto cert = cf::is_cospectral(c, cs_l, cs_m, cs_exact);
        Json out{{"manifest",
                  manifest("cospec check", {{"chain", cs_chain}, {"l", cs_l}, {"m", cs_m}})},
                 {"cospectral", cert.has_value()}};
        if (cert) out["certificate"] = cospec_cert_json(*cert);
        emit(out);
        if (!cert) {
            std::cerr << "vertices " << cs_l << " and " << cs_m << " are not cospectral\n";
            exit_code = kExitVerifiedFalse;
        }
    });
    auto* cscons = cospec->add_subcommand("construct", "build a chain with a cospectral pair");
    cscons->add_option("--l", cs_l)->required();
    cscons->add_option("--m", cs_m)->required();
    cscons->add_option("--d", cs_d)->required();
    cscons->callback([&] {
        cf::Chain c = cf::construct_cospectral(cs_l, cs_m, cs_d);
        auto cert = cf::is_cospectral(c, cs_l, cs_m);
        emit(Json{{"manifest", manifest("cospec construct",
                                        {{"l", cs_l}, {"m", cs_m}, {"d", cs_d}})},
                  {"chain", cf::chain_to_json(c)},
                  {"certificate", cospec_cert_json(*cert)}});
    });
    auto* csext = cospec->add_subcommand("extend", "push a cospectral pair outward k times");
    csext->add_option("--chain", cs_chain)->required();
    csext->add_option("--l", cs_l)->required();
    csext->add_option("--m", cs_m)->required();
    csext->add_option("--k", cs_k)->required();
    csext->add_flag("--exact", cs_exact, "require an exact certificate on the result");
    csext->callback([&] {
        cf::Chain c = cf::chain_from_json(cf::load_json_file(cs_chain));
        cf::Chain out = cf::extend_cospectral(c, cs_l, cs_m, cs_k);
        auto cert = cf::is_cospectral(out, cs_l + cs_k, cs_m + cs_k, cs_exact);
        if (!cert) throw cf::Error("extension produced no exact certificate");
        emit(Json{{"manifest", manifest("cospec extend",
                                        {{"chain", cs_chain}, {"k", cs_k}})},
                  {"chain", cf::chain_to_json(out)},
                  {"certificate", cospec_cert_json(*cert)}});
    });

    // ---- pst ----
    auto* pst = app.add_subcommand("pst", "state-transfer tooling");
    pst->require_subcommand(1);
    std::string pst_chain_file, pst_spectrum, pst_pm_file;
    int pst_l = 0, pst_m = 0, pst_d = 0, pst_bound = 0, pst_dtarget = 0;

    auto* pstc = pst->add_subcommand("check", "certify or refute transfer between two vertices");
    pstc->add_option("--chain", pst_chain_file)->required();
    pstc->add_option("--l", pst_l)->required();
    pstc->add_option("--m", pst_m)->required();
    pstc->callback([&] {
        cf::Chain c = cf::chain_from_json(cf::load_json_file(pst_chain_file));
        auto cert = cf::check_pst(c, pst_l, pst_m);
        Json out{{"manifest", manifest("pst check", {{"chain", pst_chain_file}})},
                 {"pst", cert.has_value()}};
        if (cert) out["certificate"] = pst_cert_json(*cert);
        emit(out);
        if (!cert) {
            std::cerr << "no perfect state transfer between " << pst_l << " and " << pst_m
                      << "\n";
            exit_code = kExitVerifiedFalse;
        }
    });
    auto* pstb = pst->add_subcommand("build", "build a transfer chain from an integer spectrum");
    pstb->add_option("--spectrum", pst_spectrum, "comma-separated integers")->required();
    pstb->add_option("--m", pst_m)->required();
    pstb->callback([&] {
        std::vector<cf::Integer> sp = parse_int_list(pst_spectrum);
        std::sort(sp.begin(), sp.end(), std::greater<cf::Integer>());
        cf::Chain c = cf::build_pst_chain(sp, pst_m);
        auto cert = cf::check_pst(c, 0, pst_m);
        emit(Json{{"manifest", manifest("pst build", {{"spectrum", pst_spectrum}})},
                  {"chain", cf::chain_to_json(c)},
                  {"certificate", pst_cert_json(*cert)}});
    });
    auto* psts = pst->add_subcommand("shrink", "drop eigenvalues while keeping the witness");
    psts->add_option("--pm", pst_pm_file, "polynomial JSON file")->required();
    psts->add_option("--spectrum", pst_spectrum, "comma-separated integers")->required();
    psts->add_option("--d-target", pst_dtarget)->required();
    psts->callback([&] {
        cf::ExactPolynomial pm = cf::poly_from_json(cf::load_json_file(pst_pm_file));
        std::vector<cf::Integer> ints = parse_int_list(pst_spectrum);
        std::sort(ints.begin(), ints.end(), std::greater<cf::Integer>());
        std::vector<cf::Rational> sp(ints.begin(), ints.end());
        std::vector<cf::Rational> reduced = cf::shrink(pm, sp, pst_dtarget);
        Json arr = Json::array();
        for (const auto& r : reduced) arr.push_back(cf::rational_to_json(r));
        emit(Json{{"manifest", manifest("pst shrink", {{"d_target", pst_dtarget}})},
                  {"spectrum", arr}});
    });
    auto* pstscan = pst->add_subcommand("scan", "feasible half-position spectra in a window");
    pstscan->add_option("--d", pst_d)->required();
    pstscan->add_option("--bound", pst_bound)->required();
    pstscan->callback([&] {
        auto hits = cf::scan_no_pst_half(pst_d, pst_bound, workers_from_env());
        for (const auto& sp : hits) {
            Json arr = Json::array();
            for (const auto& t : sp) arr.push_back(t.get_str());
            std::cout << Json{{"spectrum", arr}}.dump() << "\n";
        }
        std::cout << Json{{"manifest", manifest("pst scan",
                                                {{"d", pst_d}, {"bound", pst_bound}})},
                          {"hits", hits.size()}}
                         .dump()
                  << "\n";
        if (hits.empty()) {
            std::cerr << "no feasible spectrum found\n";
            exit_code = kExitVerifiedFalse;
        }
    });

    // ---- pte ----
    auto* pte = app.add_subcommand("pte", "power-sum solution tooling");
    pte->require_subcommand(1);
    std::string pte_file, pte_E, pte_F, pte_class, pte_chain_file;
    int pte_n = 0, pte_m = 0;
    long pte_lo = 0, pte_hi = 0;
    bool pte_even = false;

    auto* ptev = pte->add_subcommand("verify", "check and classify a candidate solution");
    ptev->add_option("--file", pte_file, "solution JSON file");
    ptev->add_option("--E", pte_E, "comma-separated integers");
    ptev->add_option("--F", pte_F, "comma-separated integers");
    ptev->callback([&] {
        std::vector<cf::Integer> E, F;
        if (!pte_file.empty()) {
            Json j = cf::load_json_file(pte_file);
            for (const auto& v : j["E"]) E.emplace_back(v.is_string() ? cf::Integer(v.get<std::string>()) : cf::Integer(static_cast<long>(v.get<long long>())));
            for (const auto& v : j["F"]) F.emplace_back(v.is_string() ? cf::Integer(v.get<std::string>()) : cf::Integer(static_cast<long>(v.get<long long>())));
        } else {
            E = parse_int_list(pte_E);
            F = parse_int_list(pte_F);
        }
        std::string reason;
        auto sol = cf::verify_pte(E, F, &reason);
        Json out{{"manifest", manifest("pte verify", {})}, {"valid", sol.has_value()}};
        if (sol)
            out["solution"] = cf::pte_to_json(*sol);
        else
            out["reason"] = reason;
        emit(out);
        if (!sol) {
            std::cerr << "invalid: " << reason << "\n";
            exit_code = kExitVerifiedFalse;
        }
    });
    auto* ptes = pte->add_subcommand("search", "exhaustive search over a window");
    ptes->add_option("--n", pte_n)->required();
    ptes->add_option("--lo", pte_lo)->required();
    ptes->add_option("--hi", pte_hi)->required();
    ptes->add_option("--class", pte_class, "pte0|pte1|general");
    ptes->callback([&] {
        std::optional<cf::PTEClass> filter;
        if (pte_class == "pte0") filter = cf::PTEClass::Pte0;
        else if (pte_class == "pte1") filter = cf::PTEClass::Pte1;
        else if (pte_class == "general") filter = cf::PTEClass::General;
        else if (!pte_class.empty()) throw CLI::ValidationError("--class", "unknown class");
        auto sols = cf::search_pte(pte_n, pte_lo, pte_hi, filter);
        Json arr = Json::array();
        for (const auto& s : sols) arr.push_back(cf::pte_to_json(s));
        emit(Json{{"manifest", manifest("pte search",
                                        {{"n", pte_n}, {"lo", pte_lo}, {"hi", pte_hi}})},
                  {"solutions", arr}});
        if (sols.empty()) exit_code = kExitVerifiedFalse;
    });
    auto* ptetc = pte->add_subcommand("to-chain", "periodic cospectral chain from a solution");
    ptetc->add_option("--file", pte_file)->required();
    ptetc->add_flag("--even", pte_even, "force the even-d branch (prune an interior element)");
    ptetc->callback([&] {
        cf::PTESolution sol = cf::pte_from_json(cf::load_json_file(pte_file));
        cf::Chain c = cf::pte_to_chain(sol, pte_even);
        emit(Json{{"manifest", manifest("pte to-chain", {{"file", pte_file}})},
                  {"chain", cf::chain_to_json(c, true)}});
    });
    auto* ptepst = pte->add_subcommand("to-pst-chain", "transfer chain from a halvable solution");
    ptepst->add_option("--file", pte_file)->required();
    ptepst->callback([&] {
        cf::PTESolution sol = cf::pte_from_json(cf::load_json_file(pte_file));
        cf::Chain c = cf::pte_to_pst_chain(sol);
        auto cert = cf::check_pst(c, 0, sol.n);
        emit(Json{{"manifest", manifest("pte to-pst-chain", {{"file", pte_file}})},
                  {"chain", cf::chain_to_json(c)},
                  {"certificate", pst_cert_json(*cert)}});
    });
    auto* ptefc = pte->add_subcommand("from-chain", "extract the solution behind a chain");
    ptefc->add_option("--chain", pte_chain_file)->required();
    ptefc->add_option("--m", pte_m)->required();
    ptefc->callback([&] {
        cf::Chain c = cf::chain_from_json(cf::load_json_file(pte_chain_file));
        cf::PTESolution sol = cf::chain_to_pte(c, pte_m);
        emit(Json{{"manifest", manifest("pte from-chain", {{"chain", pte_chain_file}})},
                  {"solution", cf::pte_to_json(sol)}});
    });

    // ---- repro ----
    auto* repro = app.add_subcommand("repro", "pinned end-to-end reproductions");
    repro->require_subcommand(1);

    repro->add_subcommand("example-6-1", "3-chain with transfer (0,2)")->callback([&] {
        cf::ExactPolynomial qm{cf::Rational(-5, 2), cf::Rational(0), cf::Rational(1)};
        cf::ExactPolynomial qtop{cf::Rational(4), cf::Rational(0), cf::Rational(-5),
                                 cf::Rational(0), cf::Rational(1)};
        cf::BuildCertificate bc = cf::build_ops(qm, qtop);
        auto cert = cf::check_pst(bc.chain, 0, 2);
        if (!cert) throw cf::Error("expected transfer between 0 and 2");
        emit(Json{{"manifest", manifest("repro example-6-1", {})},
                  {"chain", cf::chain_to_json(bc.chain, true)},
                  {"certificate", pst_cert_json(*cert)}});
        std::cerr << "fidelity " << cert->fidelity << " at t = " << cert->time << "\n";
    });
    repro->add_subcommand("sec-6-1-seven-chain", "7-chain with transfer (0,5)")->callback([&] {
        cf::Chain c = cf::pte_to_pst_chain(pte5_first());
        auto cert = cf::check_pst(c, 0, 5);
        if (!cert) throw cf::Error("expected transfer between 0 and 5");
        emit(Json{{"manifest", manifest("repro sec-6-1-seven-chain", {})},
                  {"chain", cf::chain_to_json(c, true)},
                  {"certificate", pst_cert_json(*cert)}});
    });
    repro->add_subcommand("sec-6-1-six-chain", "6-chain with transfer (0,5)")->callback([&] {
        std::vector<cf::Integer> sp7 = seven_chain_spectrum();
        cf::InterpolantResult ir = cf::pst_interpolant(sp7, 5);
        std::vector<cf::Rational> sp(sp7.begin(), sp7.end());
        std::vector<cf::Rational> reduced = cf::shrink(*ir.p_m, sp, 6);
        cf::BuildCertificate bc = cf::build_ops(*ir.p_m, cf::poly_from_roots(reduced));
        auto cert = cf::check_pst(bc.chain, 0, 5);
        if (!cert) throw cf::Error("expected transfer between 0 and 5 on the 6-chain");
        emit(Json{{"manifest", manifest("repro sec-6-1-six-chain", {})},
                  {"chain", cf::chain_to_json(bc.chain, true)},
                  {"certificate", pst_cert_json(*cert)}});
    });
    repro->add_subcommand("pte5-list", "the two pinned 5-element solutions")->callback([&] {
        auto s1 = cf::verify_pte({-8, -4, 0, 8, 9}, {-7, -6, 2, 6, 10});
        auto s2 = cf::verify_pte({-55, -24, -6, 32, 58}, {-52, -34, 9, 22, 60});
        if (!s1 || !s2) throw cf::Error("pinned solutions failed verification");
        emit(Json{{"manifest", manifest("repro pte5-list", {})},
                  {"solutions", Json::array({cf::pte_to_json(*s1), cf::pte_to_json(*s2)})}});
    });

    // ---- fidelity ----
    auto* fid = app.add_subcommand("fidelity", "CSV of |amplitude|^2 over a time grid");
    std::string fid_chain;
    int fid_l = 0, fid_m = 0, fid_steps = 100;
    double fid_tmax = std::numbers::pi;
    fid->add_option("--chain", fid_chain)->required();
    fid->add_option("--l", fid_l)->required();
    fid->add_option("--m", fid_m)->required();
    fid->add_option("--tmax", fid_tmax);
    fid->add_option("--steps", fid_steps)->check(CLI::Range(2, 1000000));
    fid->callback([&] {
        cf::Chain c = cf::chain_from_json(cf::load_json_file(fid_chain));
        cf::SpectralData sd = cf::eigen(c);
        std::cout << "t,fidelity\n";
        for (int i = 0; i < fid_steps; ++i) {
            double t = fid_tmax * i / (fid_steps - 1);
            double a = std::abs(cf::transition_amplitude(sd, t, fid_l, fid_m));
            std::cout << t << "," << a * a << "\n";
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const cf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
