#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "k1alex/cover.hpp"
#include "k1alex/k1core.hpp"
#include "k1alex/upsilon.hpp"

using namespace k1alex;
using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIndeterminate = 4;

enum class Format { text, json };

struct RunConfig {
    std::string knot;
    std::string presentation_path;
    long cover = 0;
    std::vector<long> covers;
    long precision = kDefaultPrecision;
    Format format = Format::text;
    bool strict = false;
};

/// Thrown for usage problems that CLI11 cannot see (bad env value, unreadable file).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

MeridianPresentation load(const RunConfig& cfg) {
    if (!cfg.presentation_path.empty()) {
        std::ifstream in(cfg.presentation_path);
        if (!in) throw UsageError("cannot read " + cfg.presentation_path);
        std::stringstream buf;
        buf << in.rdbuf();
        auto p = parse_presentation(buf.str());
        if (p.name.empty()) p.name = cfg.presentation_path;
        return p;
    }
    return builtin(cfg.knot);
}

void check_config(const RunConfig& cfg, const std::vector<long>& degrees) {
    if (cfg.precision < 8) throw ValidationError("precision must be at least 8");
    if (degrees.empty()) throw ValidationError("no cover degree given");
    for (long n : degrees)
        if (n < 2) throw ValidationError("cover degree must be at least 2");
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::yes: return "invertible";
        case Verdict::no: return "not-invertible";
        case Verdict::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

json kappa_json(const GroupAut& kappa) {
    const auto& d = kappa.group()->divisors();
    json rows = json::array();
    for (std::size_t i = 0; i < kappa.matrix().size(); ++i) {
        json row = json::array();
        for (long v : kappa.matrix()[i]) {
            v %= d[i];
            if (v < 0) v += d[i];
            if (2 * v > d[i]) v -= d[i];
            row.push_back(v);
        }
        rows.push_back(row);
    }
    return rows;
}

json elem_json(const GroupAlgebraElem& a) {
    json out = json::object();
    for (const auto& [e, c] : a.terms()) out[a.group()->monomial(e)] = rational_to_string(c);
    return out;
}

json orbit_json(const OrbitClass& a) {
    json out = json::object();
    for (const auto& [e, c] : a.totals()) out[a.group()->monomial(e)] = rational_to_string(c);
    return out;
}

json laurent_json(const LaurentPolyGA& p) {
    json out = json::object();
    for (const auto& [d, c] : p.terms()) out[std::to_string(d)] = elem_json(c);
    return out;
}

std::string images_text(const MetaRep& r) {
    std::string s;
    for (std::size_t i = 0; i < r.images.size(); ++i) {
        if (i) s += ", ";
        s += r.group()->monomial(r.images[i]);
    }
    return s;
}

json cover_json(const MeridianPresentation& p, const CoverData& c) {
    json images = json::array();
    for (auto e : c.rep.images) images.push_back(c.rep.group()->monomial(e));
    json factors = json::array();
    for (const auto& f : c.invariant_factors) factors.push_back(f.get_str());
    return json{{"schema_version", kSchemaVersion},
                {"knot", p.name},
                {"N", c.rep.N},
                {"group", c.rep.group()->to_string()},
                {"kappa", kappa_json(*c.rep.kappa)},
                {"images", images},
                {"invariant_factors", factors},
                {"free_rank", c.free_rank}};
}

std::string cover_text(const MeridianPresentation& p, const CoverData& c) {
    std::ostringstream os;
    os << "knot: " << p.name << "\n";
    os << "N: " << c.rep.N << "\n";
    os << "group: " << c.rep.group()->to_string() << "\n";
    os << "kappa: " << c.rep.kappa->to_string() << "\n";
    os << "images: " << images_text(c.rep) << "\n";
    os << "invariant factors:";
    for (const auto& f : c.invariant_factors) os << " " << f.get_str();
    os << "\nfree rank: " << c.free_rank << "\n";
    return os.str();
}

const char* const kDeltaAmbiguity =
    "up to unit monomials q*h*tau^k (q rational, h in H); coefficients of tau^k for k >= precision are unknown";

struct ComputeResult {
    CoverData cover;
    FiberedVerdict verdict;
    LaurentPolyGA poly;
};

ComputeResult run_compute(const MeridianPresentation& p, long N, long precision) {
    auto cover = cover_data(p, N);
    auto verdicts = fibered_obstruction(p, {cover.rep}, precision);
    auto poly = metafinite_polynomial(p, cover.rep);
    return {std::move(cover), std::move(verdicts.front()), std::move(poly)};
}

json compute_json(const MeridianPresentation& p, const ComputeResult& r) {
    json out = cover_json(p, r.cover);
    const auto& rep = r.verdict.report;
    out["precision"] = rep.precision;
    if (rep.delta) {
        out["delta"] = {{"series", rep.delta->to_string()},
                        {"ambiguity", kDeltaAmbiguity},
                        {"witt_unit", rep.witt->unit.to_string()},
                        {"witt_degree", rep.witt->degree},
                        {"witt", rep.witt->witt.to_string()}};
    } else {
        out["delta"] = nullptr;
    }
    json logs = json::object(), coeffs = json::object();
    if (rep.logs)
        for (const auto& [k, c] : rep.logs->entries) {
            logs[std::to_string(k)] = c.to_string();
            coeffs[std::to_string(k)] = orbit_json(c);
        }
    out["logs"] = logs;
    out["log_coefficients"] = coeffs;
    out["metafinite_poly"] = r.poly.to_string();
    out["metafinite_terms"] = laurent_json(r.poly);
    out["invertible"] = verdict_name(r.verdict.invertible);
    return out;
}

std::string compute_text(const MeridianPresentation& p, const ComputeResult& r) {
    std::ostringstream os;
    os << cover_text(p, r.cover);
    const auto& rep = r.verdict.report;
    os << "precision: " << rep.precision << "\n";
    if (rep.delta) {
        os << "delta: " << rep.delta->to_string() << "\n";
        os << "delta ambiguity: " << kDeltaAmbiguity << "\n";
        os << "witt: " << rep.witt->unit.to_string() << " * tau^" << rep.witt->degree << " * ("
           << rep.witt->witt.to_string() << ")\n";
    } else {
        os << "delta: unavailable\n";
    }
    if (rep.logs)
        for (const auto& [k, c] : rep.logs->entries) os << "log" << k << ": " << c.to_string() << "\n";
    os << "metafinite: " << r.poly.to_string() << "\n";
    os << "invertible: " << verdict_name(r.verdict.invertible) << "\n";
    return os.str();
}

int report_error(const std::string& kind, const std::string& what, int code) {
    std::cerr << "k1alex: " << kind << ": " << what << "\n";
    return code;
}

int dispatch(const std::string& command, const RunConfig& cfg, std::string& out) {
    if (command == "list") {
        if (cfg.format == Format::json) {
            json names = json::array();
            for (const auto& n : builtin_names()) names.push_back({{"name", n}, {"genus", builtin(n).genus}});
            out = json{{"schema_version", kSchemaVersion}, {"knots", names}}.dump(2) + "\n";
        } else {
            for (const auto& n : builtin_names()) out += n + " (genus " + std::to_string(builtin(n).genus) + ")\n";
        }
        return 0;
    }

    const auto p = load(cfg);
    std::vector<long> degrees = cfg.covers;
    if (cfg.cover != 0) degrees.insert(degrees.begin(), cfg.cover);
    check_config(cfg, degrees);

    if (command == "cover") {
        std::vector<std::future<CoverData>> jobs;
        for (long n : degrees) jobs.push_back(std::async(std::launch::async, [&p, n] { return cover_data(p, n); }));
        json arr = json::array();
        for (auto& j : jobs) {
            auto c = j.get();
            if (cfg.format == Format::json)
                arr.push_back(cover_json(p, c));
            else
                out += cover_text(p, c);
        }
        if (cfg.format == Format::json) out = (arr.size() == 1 ? arr[0] : arr).dump(2) + "\n";
        return 0;
    }

    if (command == "compute") {
        std::vector<std::future<ComputeResult>> jobs;
        for (long n : degrees)
            jobs.push_back(std::async(std::launch::async, [&p, n, &cfg] { return run_compute(p, n, cfg.precision); }));
        json arr = json::array();
        bool indeterminate = false;
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            auto r = jobs[i].get();
            indeterminate = indeterminate || r.verdict.invertible == Verdict::indeterminate;
            if (cfg.format == Format::json)
                arr.push_back(compute_json(p, r));
            else
                out += (i ? "\n" : "") + compute_text(p, r);
        }
        if (cfg.strict && indeterminate) {
            out.clear();
            return report_error("indeterminate", "invertibility could not be decided", kExitIndeterminate);
        }
        if (cfg.format == Format::json) out = (arr.size() == 1 ? arr[0] : arr).dump(2) + "\n";
        return 0;
    }

    // fibered
    std::vector<std::future<FiberedVerdict>> jobs;
    for (long n : degrees)
        jobs.push_back(std::async(std::launch::async, [&p, n, &cfg] {
            return fibered_obstruction(p, {metabelian_rep(p, n)}, cfg.precision).front();
        }));
    std::vector<FiberedVerdict> verdicts;
    for (auto& j : jobs) verdicts.push_back(j.get());
    const std::string summary = fibered_summary(verdicts);
    const bool indeterminate = std::any_of(verdicts.begin(), verdicts.end(),
                                           [](const auto& v) { return v.invertible == Verdict::indeterminate; });
    if (cfg.strict && indeterminate)
        return report_error("indeterminate", "invertibility could not be decided", kExitIndeterminate);
    if (cfg.format == Format::json) {
        json rows = json::array();
        for (std::size_t i = 0; i < degrees.size(); ++i)
            rows.push_back({{"N", degrees[i]}, {"invertible", verdict_name(verdicts[i].invertible)}});
        out = json{{"schema_version", kSchemaVersion},
                   {"knot", p.name},
                   {"precision", cfg.precision},
                   {"covers", rows},
                   {"summary", summary}}
                  .dump(2) +
              "\n";
    } else {
        out += "knot: " + p.name + "\n";
        for (std::size_t i = 0; i < degrees.size(); ++i)
            out += "N=" + std::to_string(degrees[i]) + ": " + verdict_name(verdicts[i].invertible) + "\n";
        out += "summary: " + summary + "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"K1-valued twisted Alexander invariants of knots"};
    app.require_subcommand(1);
    RunConfig cfg;
    bool precision_given = false;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option_function<std::string>(
               "--format", [&](const std::string& f) { cfg.format = f == "json" ? Format::json : Format::text; },
               "text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };
    auto add_common = [&](CLI::App* sub, bool covers) {
        auto* knot = sub->add_option("--knot", cfg.knot, "built-in knot name");
        auto* file = sub->add_option("--presentation", cfg.presentation_path, "presentation file");
        knot->excludes(file);
        file->excludes(knot);
        sub->add_option("-N,--cover", cfg.cover, "cover degree");
        if (covers) sub->add_option("--covers", cfg.covers, "comma-separated cover degrees")->delimiter(',');
        sub->add_option_function<long>(
            "--precision",
            [&](long k) {
                cfg.precision = k;
                precision_given = true;
            },
            "truncation degree K (default 24)");
        add_format(sub);
        sub->add_flag("--strict", cfg.strict, "exit 4 when invertibility is indeterminate");
        sub->callback([knot, file] {
            if (knot->count() + file->count() == 0)
                throw CLI::RequiredError("--knot or --presentation");
        });
    };
    add_common(app.add_subcommand("compute", "Delta, logs, metafinite polynomial and verdict"), true);
    add_common(app.add_subcommand("fibered", "fiberedness obstruction over several covers"), true);
    add_common(app.add_subcommand("cover", "H, kappa and generator images of a cyclic cover"), true);
    auto* list = app.add_subcommand("list", "built-in knots");
    add_format(list);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    std::string out;
    try {
        if (!precision_given)
            if (const char* env = std::getenv("K1ALEX_PRECISION")) {
                try {
                    std::size_t used = 0;
                    cfg.precision = std::stol(env, &used);
                    if (used != std::string(env).size()) throw std::invalid_argument(env);
                } catch (const std::logic_error&) {
                    throw UsageError(std::string("K1ALEX_PRECISION is not an integer: ") + env);
                }
            }
        const int code = dispatch(app.get_subcommands().front()->get_name(), cfg, out);
        if (code != 0) return code;
    } catch (const ParseError& e) {
        return report_error("parse error", e.what(), kExitParse);
    } catch (const UsageError& e) {
        return report_error("error", e.what(), kExitParse);
    } catch (const ValidationError& e) {
        return report_error("validation error", e.what(), kExitValidation);
    } catch (const AlgebraError& e) {
        return report_error("validation error", e.what(), kExitValidation);
    }
    std::cout << out;
    return 0;
}
