/**
 * This file is part of the supext project.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// supext <command> [flags]
//
// Exit status: 0 all checks pass, 1 mathematical failure, 2 usage or input error.

#include <supext/verify.hpp>

#include <boost/program_options.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

namespace po = boost::program_options;
using supext::io::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* const usage_text = R"(usage: supext <command> [flags]

commands:
  enumerate --n K [--count-only] [--out FILE]     maximal linked systems on K points
  ghyper    --n K [--count-only] [--out FILE]     inclusion hyperspaces on K points
  eval      --term T.json --f "v0,v1,..."         evaluate a functional term
  axioms    --term T.json [--trials N] [--seed S] [--normalized]
  extend    --generators G.json --phi "v0,v1,..." [--choice midpoint|lower|upper]
  subbase   --check binary|normal --in SB.json
  regular   --validate OP.json
  usco      --from OP.json
  roundtrip OP.json
  verify    --suite NAME --n K [--seed S] [--trials N] [--term T.json]
            suites: eq1 axioms functor-laws subbase-lambda usco-roundtrip counts

common flags:
  --workers W          worker threads (results do not depend on W)
  --format json|csv-summary
  --out FILE           write output to FILE instead of stdout

environment:
  SUPEXT_MAX_N         enumeration cap (default 7)
)";

int max_n_from_env()
{
    const char* v = std::getenv("SUPEXT_MAX_N");
    if (v == nullptr || *v == '\0') {
        return 7;
    }
    try {
        std::size_t used = 0;
        const int n = std::stoi(v, &used);
        if (used != std::string(v).size() || n < 1) {
            throw std::invalid_argument(v);
        }
        return std::min(n, supext::enumeration_hard_cap);
    } catch (const std::exception&) {
        throw UsageError(std::string("SUPEXT_MAX_N must be a positive integer, got '") + v + "'");
    }
}

void emit(const po::variables_map& vm, const std::string& text)
{
    if (vm.count("out")) {
        const auto path = vm["out"].as<std::string>();
        std::ofstream out(path);
        if (!out) {
            throw UsageError("cannot write " + path);
        }
        out << text;
    } else {
        std::cout << text;
    }
}

void emit(const po::variables_map& vm, const json& j) { emit(vm, j.dump(2) + "\n"); }

template <class T>
T required(const po::variables_map& vm, const char* name)
{
    if (!vm.count(name)) {
        throw UsageError(std::string("missing --") + name);
    }
    return vm[name].as<T>();
}

int cmd_enumerate(const po::variables_map& vm, bool hyper)
{
    const int n = required<int>(vm, "n");
    if (n < 1) {
        throw UsageError("--n must be at least 1");
    }
    const supext::GroundSet g(n);
    const bool count_only = vm.count("count-only") > 0;
    if (hyper) {
        const auto hs = supext::enumerate_ih(g);
        if (count_only) {
            emit(vm, json{{"n", n}, {"count", hs.size()}});
        } else {
            emit(vm, supext::io::to_json(g, hs));
        }
        return exit_ok;
    }
    const supext::EnumerateOptions opts{max_n_from_env(), vm["workers"].as<std::size_t>()};
    if (count_only) {
        emit(vm, json{{"n", n}, {"count", supext::count_mls(g, opts)}});
    } else {
        emit(vm, supext::io::to_json(supext::enumerate_mls(g, opts)));
    }
    return exit_ok;
}

int cmd_eval(const po::variables_map& vm)
{
    const auto values = supext::io::parse_values(required<std::string>(vm, "f"));
    const supext::GroundSet g(static_cast<int>(values.size()));
    const auto term = supext::io::term_from_json(supext::io::read_file(required<std::string>(vm, "term")), g);
    const supext::PointFunction f(g, values);
    emit(vm, json{{"f", supext::io::to_json(f)}, {"value", supext::to_string(supext::evaluate(term, f))}});
    return exit_ok;
}

int cmd_axioms(const po::variables_map& vm)
{
    const auto path = required<std::string>(vm, "term");
    const json tj = supext::io::read_file(path);
    int n = 0;
    if (tj.is_object() && tj.contains("n")) {
        n = tj.at("n").get<int>();
    } else if (vm.count("n")) {
        n = vm["n"].as<int>();
    } else {
        throw UsageError("the ground size comes from a top-level \"n\" in the term file or from --n");
    }
    const supext::GroundSet g(n);
    const auto u = supext::io::term_oracle_from_json(tj, g);
    supext::AxiomOptions opts;
    opts.trials = vm["trials"].as<std::size_t>();
    opts.seed = vm["seed"].as<std::uint64_t>();
    opts.normalized = vm.count("normalized") > 0;
    opts.workers = vm["workers"].as<std::size_t>();
    const auto rep = supext::axiom_check(u, g, opts);
    json out{{"n", n}, {"seed", opts.seed}, {"trials", opts.trials}, {"normalized", opts.normalized},
             {"pass", rep.pass()}};
    if (!rep.pass()) {
        out["counterexample"] = supext::detail::counterexample_json(*rep.counterexample);
    }
    emit(vm, out);
    return rep.pass() ? exit_ok : exit_failure;
}

int cmd_extend(const po::variables_map& vm)
{
    const auto b0 = supext::io::generators_from_json(supext::io::read_file(required<std::string>(vm, "generators")));
    const auto values = supext::io::parse_values(required<std::string>(vm, "phi"));
    const supext::PointFunction phi0(b0.ground(), values);
    const auto choice_name = vm["choice"].as<std::string>();
    supext::ExtensionChoice choice{};
    if (choice_name == "midpoint") {
        choice = supext::ExtensionChoice::midpoint;
    } else if (choice_name == "lower") {
        choice = supext::ExtensionChoice::lower;
    } else if (choice_name == "upper") {
        choice = supext::ExtensionChoice::upper;
    } else {
        throw UsageError("--choice must be midpoint, lower or upper");
    }
    const auto ext = supext::extend_one(b0, phi0, choice);
    emit(vm, json{{"lower", supext::to_string(ext.lower)},
                  {"upper", supext::to_string(ext.upper)},
                  {"value", supext::to_string(ext.value)}});
    return exit_ok;
}

int cmd_subbase(const po::variables_map& vm)
{
    const auto check = required<std::string>(vm, "check");
    const auto sb = supext::io::subbase_from_json(supext::io::read_file(required<std::string>(vm, "in")));
    if (check == "binary") {
        const auto r = supext::is_binary(sb);
        json out{{"binary", r.binary}};
        if (!r.binary) {
            out["witness"] = r.witness;
        }
        emit(vm, out);
        return r.binary ? exit_ok : exit_failure;
    }
    if (check == "normal") {
        const auto r = supext::is_normal(sb);
        json out{{"normal", r.normal}};
        if (!r.normal) {
            out["witness"] = json::array({r.witness->first, r.witness->second});
        }
        emit(vm, out);
        return r.normal ? exit_ok : exit_failure;
    }
    throw UsageError("--check must be binary or normal");
}

int cmd_regular(const po::variables_map& vm)
{
    const auto e = supext::io::operator_from_json(supext::io::read_file(required<std::string>(vm, "validate")));
    const auto v = supext::validate_regular(e);
    emit(vm, supext::io::violation_json(v));
    return v ? exit_failure : exit_ok;
}

int cmd_usco(const po::variables_map& vm)
{
    const auto e = supext::io::operator_from_json(supext::io::read_file(required<std::string>(vm, "from")));
    const auto r = supext::usco_from_regular(e, {max_n_from_env(), vm["workers"].as<std::size_t>()});
    emit(vm, supext::io::to_json(r));
    return supext::check_usco(r).ok() ? exit_ok : exit_failure;
}

int cmd_roundtrip(const po::variables_map& vm)
{
    const auto e = supext::io::operator_from_json(supext::io::read_file(required<std::string>(vm, "input")));
    const auto r = supext::usco_from_regular(e, {max_n_from_env(), vm["workers"].as<std::size_t>()});
    const auto back = supext::regular_from_usco(r);
    const auto v = supext::validate_regular(back);
    emit(vm, json{{"usco", supext::io::to_json(r)},
                  {"operator", supext::io::to_json(back)},
                  {"validation", supext::io::violation_json(v)}});
    return v ? exit_failure : exit_ok;
}

int cmd_verify(const po::variables_map& vm)
{
    supext::RunConfig cfg;
    cfg.suite = required<std::string>(vm, "suite");
    cfg.n = required<int>(vm, "n");
    cfg.seed = vm["seed"].as<std::uint64_t>();
    cfg.trials = vm["trials"].as<std::size_t>();
    cfg.workers = vm["workers"].as<std::size_t>();
    cfg.max_n = max_n_from_env();
    if (vm.count("term")) {
        cfg.term = supext::io::read_file(vm["term"].as<std::string>());
    }
    const auto fmt_name = vm["format"].as<std::string>();
    supext::OutputFormat fmt{};
    if (fmt_name == "json") {
        fmt = supext::OutputFormat::json;
    } else if (fmt_name == "csv-summary") {
        fmt = supext::OutputFormat::csv_summary;
    } else {
        throw UsageError("--format must be json or csv-summary");
    }
    const auto rep = supext::run_verify_suite(cfg);
    emit(vm, rep.render(fmt));
    return rep.pass() ? exit_ok : exit_failure;
}

/// Codes that report a property failing on valid input rather than bad input.
bool is_mathematical(supext::errc c)
{
    using supext::errc;
    return c == errc::inconsistent || c == errc::not_usco || c == errc::not_point_fixed ||
           c == errc::invalid_operator || c == errc::not_an_extender || c == errc::not_linked;
}

} // namespace

int main(int argc, char** argv)
{
    po::options_description opts("flags");
    opts.add_options()
        ("help,h", "show usage")
        ("command", po::value<std::string>())
        ("input", po::value<std::string>())
        ("n", po::value<int>())
        ("count-only", "")
        ("out", po::value<std::string>())
        ("workers", po::value<std::size_t>()->default_value(1))
        ("seed", po::value<std::uint64_t>()->default_value(0))
        ("trials", po::value<std::size_t>()->default_value(500))
        ("normalized", "")
        ("format", po::value<std::string>()->default_value("json"))
        ("term", po::value<std::string>())
        ("f", po::value<std::string>())
        ("generators", po::value<std::string>())
        ("phi", po::value<std::string>())
        ("choice", po::value<std::string>()->default_value("midpoint"))
        ("check", po::value<std::string>())
        ("in", po::value<std::string>())
        ("validate", po::value<std::string>())
        ("from", po::value<std::string>())
        ("suite", po::value<std::string>());
    po::positional_options_description pos;
    pos.add("command", 1).add("input", 1);

    po::variables_map vm;
    try {
        po::store(po::command_line_parser(argc, argv).options(opts).positional(pos).run(), vm);
        po::notify(vm);
    } catch (const po::error& e) {
        std::cerr << "supext: " << e.what() << "\n" << usage_text;
        return exit_usage;
    }
    if (vm.count("help") || !vm.count("command")) {
        std::cout << usage_text;
        return vm.count("help") ? exit_ok : exit_usage;
    }
    const auto cmd = vm["command"].as<std::string>();
    if (vm.count("input") && cmd != "roundtrip") {
        std::cerr << "supext: unexpected argument '" << vm["input"].as<std::string>() << "'\n";
        return exit_usage;
    }
    try {
        if (cmd == "enumerate") {
            return cmd_enumerate(vm, false);
        }
        if (cmd == "ghyper") {
            return cmd_enumerate(vm, true);
        }
        if (cmd == "eval") {
            return cmd_eval(vm);
        }
        if (cmd == "axioms") {
            return cmd_axioms(vm);
        }
        if (cmd == "extend") {
            return cmd_extend(vm);
        }
        if (cmd == "subbase") {
            return cmd_subbase(vm);
        }
        if (cmd == "regular") {
            return cmd_regular(vm);
        }
        if (cmd == "usco") {
            return cmd_usco(vm);
        }
        if (cmd == "roundtrip") {
            return cmd_roundtrip(vm);
        }
        if (cmd == "verify") {
            return cmd_verify(vm);
        }
        std::cerr << "supext: unknown command '" << cmd << "'\n" << usage_text;
        return exit_usage;
    } catch (const UsageError& e) {
        std::cerr << "supext: " << e.what() << "\n";
        return exit_usage;
    } catch (const supext::error& e) {
        std::cerr << "supext: " << e.what() << "\n";
        return is_mathematical(e.code()) ? exit_failure : exit_usage;
    } catch (const supext::io::json::exception& e) {
        std::cerr << "supext: ParseError: " << e.what() << "\n";
        return exit_usage;
    }
}
