// hsd: exact computations with iterative (Hasse-Schmidt) derivations on
// F_p(s). Subcommand front end over the header library; every command emits
// either a human-readable summary or a stable one-line JSON report.
//
// Exit codes: 0 value computed / check passed, 1 mathematical check failed,
// 2 input or parse error, 3 precondition violated.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hsd/hsd.hpp"

namespace {

using hsd::json;

struct Outcome {
    json report;
    int exit_code;
};

int exit_for(const hsd::Error& e) {
    switch (e.kind()) {
        case hsd::errc::parse_error:
        case hsd::errc::bad_input:
            return 2;
        default:
            return 3;
    }
}

json error_payload(const hsd::Error& e) {
    json j;
    j["kind"] = hsd::errc_name(e.kind());
    j["message"] = e.what();
    if (e.position() != hsd::Error::npos) j["position"] = e.position();
    return j;
}

/// Every report carries the same keys in the same order so identical
/// requests serialize to identical bytes.
json skeleton(const std::string& command, std::uint64_t p, std::uint32_t order) {
    json j;
    j["command"] = command;
    j["p"] = p == 0 ? json(nullptr) : json(p);
    j["order"] = order;
    j["pass"] = nullptr;
    j["value"] = nullptr;
    j["first_failure"] = nullptr;
    j["error"] = nullptr;
    return j;
}

struct Request {
    std::string command;
    std::uint64_t p = 0;  // 0 = not given
    std::uint32_t order = 16;
    std::string theta, theta2, lambda, witness, element, module_text, vector_text;
    std::uint32_t frob_level = 0;
    std::uint64_t comp_index = 1;
};

void require_p(const Request& r) {
    if (r.p == 0) throw hsd::Error(hsd::errc::bad_input, "--p is required here");
}

bool looks_like_json(const std::string& text) {
    std::size_t at = text.find_first_not_of(" \t");
    return at != std::string::npos && text[at] == '{';
}

/// --theta and --theta2 take either plain series text (with --p, --order
/// drawn from the flags) or a serialized {p, N, g} envelope; an envelope
/// must agree with --p when both are given.
hsd::IterativeDerivation parse_theta(const Request& r, const std::string& text) {
    if (looks_like_json(text)) {
        json j = json::parse(text, nullptr, false);
        if (j.is_discarded()) throw hsd::Error(hsd::errc::bad_input, "derivation envelope is not valid JSON");
        hsd::IterativeDerivation theta = hsd::derivation_from_json(j);
        if (r.p != 0 && r.p != theta.prime())
            throw hsd::Error(hsd::errc::bad_input, "--p disagrees with the derivation envelope");
        return theta;
    }
    require_p(r);
    return hsd::IterativeDerivation(hsd::parse_series(text, r.p, r.order));
}

hsd::Substitution parse_lambda(const Request& r, std::uint64_t p, std::uint32_t order) {
    if (looks_like_json(r.lambda)) {
        json j = json::parse(r.lambda, nullptr, false);
        if (j.is_discarded())
            throw hsd::Error(hsd::errc::bad_input, "substitution envelope is not valid JSON");
        hsd::Substitution lam = hsd::substitution_from_json(j);
        if (lam.prime() != p)
            throw hsd::Error(hsd::errc::bad_input, "substitution envelope is over a different prime");
        return lam;
    }
    return hsd::Substitution(hsd::parse_series(r.lambda, p, order));
}

hsd::IdModule parse_module(const Request& r) {
    std::string text = r.module_text;
    if (!text.empty() && text.front() == '@') {
        std::ifstream in(text.substr(1));
        if (!in) throw hsd::Error(hsd::errc::bad_input, "cannot open module file " + text.substr(1));
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw hsd::Error(hsd::errc::bad_input, "module is not valid JSON");
    return hsd::module_from_json(j);
}

std::vector<hsd::Ratfun> parse_vector(const std::string& text, std::uint64_t p) {
    std::vector<hsd::Ratfun> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        out.push_back(hsd::parse_ratfun(piece, p));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void fill_check(json& report, const hsd::CheckReport& r) {
    report["pass"] = r.pass;
    if (r.first_failure) report["first_failure"] = hsd::to_json(*r.first_failure);
}

Outcome run_request(const Request& r) {
    json report = skeleton(r.command, r.p, r.order);
    auto adopt = [&report](const hsd::IterativeDerivation& theta) {
        report["p"] = theta.prime();
        report["order"] = theta.order();
    };
    try {
        if (r.command == "standard") {
            require_p(r);
            hsd::IterativeDerivation theta = hsd::IterativeDerivation::standard(r.p, r.order);
            report["pass"] = true;
            report["value"] = hsd::to_json(theta);
            return {report, 0};
        }
        if (r.command == "apply") {
            hsd::IterativeDerivation theta = parse_theta(r, r.theta);
            adopt(theta);
            hsd::Ratfun f = hsd::parse_ratfun(r.element, theta.prime());
            report["pass"] = true;
            report["value"] = hsd::to_string(hsd::apply(theta, f));
            return {report, 0};
        }
        if (r.command == "verify") {
            hsd::IterativeDerivation theta = parse_theta(r, r.theta);
            adopt(theta);
            hsd::CheckReport c = hsd::verify_iterativity(theta);
            fill_check(report, c);
            return {report, c.pass ? 0 : 1};
        }
        if (r.command == "level") {
            hsd::IterativeDerivation theta = parse_theta(r, r.theta);
            adopt(theta);
            hsd::Ratfun f = hsd::parse_ratfun(r.element, theta.prime());
            std::optional<std::uint32_t> d = hsd::level(theta, f);
            report["pass"] = true;
            if (d)
                report["value"] = *d;
            else
                report["value"] = "constant";
            return {report, 0};
        }
        if (r.command == "comp-const") {
            report["order"] = nullptr;
            require_p(r);
            hsd::Fp c = hsd::composition_constant(r.comp_index, r.p);
            report["pass"] = true;
            report["value"] = c.value();
            return {report, 0};
        }
        if (r.command == "equiv-apply") {
            hsd::IterativeDerivation theta = parse_theta(r, r.theta);
            adopt(theta);
            hsd::Substitution lam = parse_lambda(r, theta.prime(), theta.order());
            report["pass"] = true;
            report["value"] = hsd::to_json(hsd::apply_substitution(theta, lam));
            return {report, 0};
        }
        if (r.command == "equiv-check") {
            hsd::IterativeDerivation theta_tilde = parse_theta(r, r.theta);
            adopt(theta_tilde);
            hsd::Substitution lam = parse_lambda(r, theta_tilde.prime(), theta_tilde.order());
            hsd::CheckReport c = hsd::check_equivalence_condition(theta_tilde, lam);
            fill_check(report, c);
            return {report, c.pass ? 0 : 1};
        }
        if (r.command == "equiv-recover") {
            hsd::IterativeDerivation theta = parse_theta(r, r.theta);
            adopt(theta);
            hsd::IterativeDerivation theta_tilde = parse_theta(r, r.theta2);
            hsd::Ratfun f = hsd::parse_ratfun(r.element, theta.prime());
            try {
                hsd::Substitution lam = hsd::recover_substitution(theta, theta_tilde, f);
                report["pass"] = true;
                report["value"] = hsd::to_json(lam);
                return {report, 0};
            } catch (const hsd::Error& e) {
                // Failed root extraction or replay is a verdict: the two
                // derivations are not related by any substitution.
                if (e.kind() == hsd::errc::not_a_pth_power || e.kind() == hsd::errc::inconsistent) {
                    report["pass"] = false;
                    report["error"] = error_payload(e);
                    return {report, 1};
                }
                throw;
            }
        }
        if (r.command == "normalize") {
            hsd::IterativeDerivation theta = parse_theta(r, r.theta);
            adopt(theta);
            hsd::Ratfun t = hsd::parse_ratfun(r.witness, theta.prime());
            hsd::Normalization n = hsd::normalize_at(theta, t);
            report["pass"] = true;
            report["value"] = json{{"theta", hsd::to_json(n.derivation)}, {"lambda", hsd::to_json(n.lambda)}};
            return {report, 0};
        }
        if (r.command == "twist") {
            hsd::IterativeDerivation theta = parse_theta(r, r.theta);
            adopt(theta);
            hsd::Substitution frob = hsd::Substitution::frobenius(theta.prime(), theta.order(), r.frob_level);
            report["pass"] = true;
            report["value"] = hsd::to_json(hsd::apply_substitution(theta, frob));
            return {report, 0};
        }
        if (r.command == "compress") {
            hsd::IterativeDerivation theta = parse_theta(r, r.theta);
            adopt(theta);
            hsd::Compression c = hsd::compress(theta);
            report["pass"] = true;
            report["value"] = json{{"theta", hsd::to_json(c.derivation)}, {"d", c.level}};
            return {report, 0};
        }
        if (r.command == "decompress") {
            hsd::IterativeDerivation theta_bar = parse_theta(r, r.theta);
            adopt(theta_bar);
            hsd::IterativeDerivation theta = hsd::decompress(theta_bar, r.frob_level);
            report["pass"] = true;
            report["value"] = hsd::to_json(theta);
            return {report, 0};
        }
        if (r.command == "module-verify") {
            hsd::IdModule m = parse_module(r);
            report["p"] = m.prime();
            report["order"] = m.order();
            hsd::ModuleCheckReport c = hsd::verify_module_iterativity(m);
            report["pass"] = c.pass;
            if (c.first_failure) report["first_failure"] = hsd::to_json(*c.first_failure);
            return {report, c.pass ? 0 : 1};
        }
        if (r.command == "module-transform") {
            hsd::IdModule m = parse_module(r);
            report["p"] = m.prime();
            report["order"] = m.order();
            hsd::Substitution lam = parse_lambda(r, m.prime(), m.order());
            report["pass"] = true;
            report["value"] = hsd::to_json(hsd::transform_module(m, lam));
            return {report, 0};
        }
        if (r.command == "module-constant") {
            hsd::IdModule m = parse_module(r);
            report["p"] = m.prime();
            report["order"] = m.order();
            std::vector<hsd::Ratfun> v = parse_vector(r.vector_text, m.prime());
            bool constant = hsd::is_constant_vector(m, v);
            report["pass"] = constant;
            report["value"] = constant;
            return {report, constant ? 0 : 1};
        }
        throw hsd::Error(hsd::errc::bad_input, "unknown command " + r.command);
    } catch (const hsd::Error& e) {
        report["pass"] = false;
        report["error"] = error_payload(e);
        return {report, exit_for(e)};
    }
}

void print_text(const json& report, std::ostream& os) {
    os << report.at("command").get<std::string>();
    if (!report.at("p").is_null()) os << "  p=" << report.at("p").get<std::uint64_t>();
    if (!report.at("order").is_null()) os << " order=" << report.at("order").get<std::uint64_t>();
    os << "\n";
    if (!report.at("pass").is_null()) os << "  pass: " << (report.at("pass").get<bool>() ? "yes" : "no") << "\n";
    if (!report.at("value").is_null()) os << "  value: " << report.at("value").dump() << "\n";
    if (!report.at("first_failure").is_null())
        os << "  first failure: " << report.at("first_failure").dump() << "\n";
    if (!report.at("error").is_null())
        os << "  error: " << report.at("error").at("kind").get<std::string>() << " "
           << report.at("error").at("message").get<std::string>() << "\n";
}

int emit(const Outcome& out, bool as_json) {
    if (as_json)
        std::cout << out.report.dump() << "\n";
    else
        print_text(out.report, std::cout);
    return out.exit_code;
}

Request request_from_json(const json& j) {
    if (!j.is_object()) throw hsd::Error(hsd::errc::bad_input, "a batch request must be a JSON object");
    Request r;
    if (!j.contains("command") || !j.at("command").is_string())
        throw hsd::Error(hsd::errc::bad_input, "a batch request needs a \"command\" string");
    r.command = j.at("command").get<std::string>();
    auto text = [&](const char* name, std::string& into) {
        if (j.contains(name)) {
            if (!j.at(name).is_string())
                throw hsd::Error(hsd::errc::bad_input, std::string("field \"") + name + "\" must be a string");
            into = j.at(name).get<std::string>();
        }
    };
    if (j.contains("p")) r.p = j.at("p").get<std::uint64_t>();
    if (j.contains("order")) r.order = j.at("order").get<std::uint32_t>();
    text("theta", r.theta);
    text("theta2", r.theta2);
    text("lambda", r.lambda);
    text("t", r.witness);
    text("f", r.element);
    text("module", r.module_text);
    text("vector", r.vector_text);
    if (j.contains("d")) r.frob_level = j.at("d").get<std::uint32_t>();
    if (j.contains("m")) r.comp_index = j.at("m").get<std::uint64_t>();
    return r;
}

int run_batch(const std::string& path, unsigned jobs, bool as_json) {
    std::vector<std::string> lines;
    std::istream* in = &std::cin;
    std::ifstream file;
    if (path != "-") {
        file.open(path);
        if (!file) {
            std::cerr << "cannot open " << path << "\n";
            return 2;
        }
        in = &file;
    }
    for (std::string line; std::getline(*in, line);)
        if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);

    std::vector<Outcome> results(lines.size(), Outcome{json(), 0});
    auto work = [&](std::size_t index) {
        json j = json::parse(lines[index], nullptr, false);
        if (j.is_discarded()) {
            json rep = skeleton("batch", 0, 0);
            rep["pass"] = false;
            rep["error"] = json{{"kind", "BadInput"}, {"message", "request line is not valid JSON"}};
            results[index] = {rep, 2};
            return;
        }
        try {
            results[index] = run_request(request_from_json(j));
        } catch (const hsd::Error& e) {
            json rep = skeleton(j.value("command", "batch"), 0, 0);
            rep["pass"] = false;
            rep["error"] = error_payload(e);
            results[index] = {rep, exit_for(e)};
        }
    };

    if (jobs <= 1) {
        for (std::size_t i = 0; i < lines.size(); ++i) work(i);
    } else {
        // The engine is pure values, so requests parallelize freely.
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < lines.size(); i += jobs) work(i);
            });
        for (auto& th : pool) th.join();
    }

    int worst = 0;
    for (const Outcome& out : results) {
        if (as_json)
            std::cout << out.report.dump() << "\n";
        else
            print_text(out.report, std::cout);
        if (out.exit_code > worst) worst = out.exit_code;
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact iterative-derivation calculus on F_p(s)"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "hsd 0.1.0");

    bool as_json = false;
    app.add_flag("--json", as_json, "emit a one-line JSON report");

    Request r;
    unsigned jobs = 1;
    std::string batch_path;

    auto add_p = [&](CLI::App* cmd) { cmd->add_option("--p", r.p, "prime modulus")->required(); };
    // Commands that read a derivation can take p and N from a {p,N,g}
    // envelope instead of the flags.
    auto add_p_opt = [&](CLI::App* cmd) { cmd->add_option("--p", r.p, "prime modulus"); };
    auto add_order = [&](CLI::App* cmd) {
        cmd->add_option("--order", r.order, "truncation order N (default 16)")
            ->envname("HSD_ORDER")
            ->check(CLI::Range(std::uint32_t(2), std::uint32_t(1u << 20)));
    };
    auto add_theta = [&](CLI::App* cmd) {
        cmd->add_option("--theta", r.theta, "generator image theta(s) as series text or a {p,N,g} envelope")
            ->required();
    };

    CLI::App* standard = app.add_subcommand("standard", "the standard derivation theta(s) = s + T");
    add_p(standard);
    add_order(standard);

    CLI::App* applyc = app.add_subcommand("apply", "expand theta(f) as a series");
    add_p_opt(applyc);
    add_order(applyc);
    add_theta(applyc);
    applyc->add_option("--f", r.element, "rational function to expand")->required();

    CLI::App* verify = app.add_subcommand("verify", "check iterativity of a derivation");
    add_p_opt(verify);
    add_order(verify);
    add_theta(verify);

    CLI::App* levelc = app.add_subcommand("level", "level of f: least d with theta^(p^d)(f) != 0");
    add_p_opt(levelc);
    add_order(levelc);
    add_theta(levelc);
    levelc->add_option("--f", r.element, "witness element")->required();

    CLI::App* compc =
        app.add_subcommand("comp-const", "scalar c with the digit-wise composition = c theta^(m)");
    add_p(compc);
    compc->add_option("--m", r.comp_index, "component index m >= 1")->required();

    CLI::App* eapply = app.add_subcommand("equiv-apply", "twist theta by a substitution lambda");
    add_p_opt(eapply);
    add_order(eapply);
    add_theta(eapply);
    eapply->add_option("--lambda", r.lambda, "parameter P = lambda(T)")->required();

    CLI::App* echeck = app.add_subcommand("equiv-check", "equivalence criterion for (theta~, lambda)");
    add_p_opt(echeck);
    add_order(echeck);
    echeck->add_option("--theta", r.theta, "the twisted derivation theta~ = lambda . theta")->required();
    echeck->add_option("--lambda", r.lambda, "parameter P = lambda(T)")->required();

    CLI::App* erecover = app.add_subcommand("equiv-recover", "recover lambda from theta and theta~");
    add_p_opt(erecover);
    add_order(erecover);
    add_theta(erecover);
    erecover->add_option("--theta2", r.theta2, "the twisted derivation theta~")->required();
    erecover->add_option("--f", r.element, "non-constant witness")->required();

    CLI::App* norm = app.add_subcommand("normalize", "re-coordinate so that theta~(t) = t + T");
    add_p_opt(norm);
    add_order(norm);
    add_theta(norm);
    norm->add_option("--t", r.witness, "element with theta^(1)(t) != 0")->required();

    CLI::App* twist = app.add_subcommand("twist", "Frobenius twist by P = T^{p^d}");
    add_p_opt(twist);
    add_order(twist);
    add_theta(twist);
    twist->add_option("--d", r.frob_level, "Frobenius exponent d")->required();

    CLI::App* compress = app.add_subcommand("compress", "re-index a level-d derivation down to level 0");
    add_p_opt(compress);
    add_order(compress);
    add_theta(compress);

    CLI::App* decompress = app.add_subcommand("decompress", "re-index a derivation up to level d");
    add_p_opt(decompress);
    add_order(decompress);
    add_theta(decompress);
    decompress->add_option("--d", r.frob_level, "target level d")->required();

    CLI::App* mverify = app.add_subcommand("module-verify", "check module iterativity in matrix form");
    mverify->add_option("--module", r.module_text, "module JSON, or @file")->required();

    CLI::App* mtransform = app.add_subcommand("module-transform", "transport a module along lambda");
    mtransform->add_option("--module", r.module_text, "module JSON, or @file")->required();
    mtransform->add_option("--lambda", r.lambda, "parameter P = lambda(T)")->required();

    CLI::App* mconstant = app.add_subcommand("module-constant", "is the vector constant for theta_M?");
    mconstant->add_option("--module", r.module_text, "module JSON, or @file")->required();
    mconstant->add_option("--vector", r.vector_text, "comma-separated coordinates")->required();

    CLI::App* batch = app.add_subcommand("batch", "run JSONL requests from a file ('-' for stdin)");
    batch->add_option("file", batch_path, "requests, one JSON object per line")->required();
    batch->add_option("--jobs", jobs, "worker threads (requests are independent)")
        ->check(CLI::Range(1u, 64u));

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (batch->parsed()) return run_batch(batch_path, jobs, as_json);

    r.command = app.get_subcommands().front()->get_name();
    return emit(run_request(r), as_json);
}
