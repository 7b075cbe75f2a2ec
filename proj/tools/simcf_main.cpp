#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "simcf/analysis.hpp"
#include "simcf/parser.hpp"
#include "simcf/table.hpp"

using namespace simcf;
using nlohmann::json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;

struct ElementArgs {
    std::string spec_text;
    std::string p_text = "2";
    std::string root_residue; // optional CLI override
    long max_steps = 1000;
    std::string format = "md";

    mpz_class p() const {
        mpz_class v(p_text);
        return v;
    }
};

void add_element_flags(CLI::App* cmd, ElementArgs& args) {
    cmd->add_option("spec", args.spec_text, "element, e.g. \"(17 + sqrt(37))/10 ; residue 2 mod 7\"")
        ->required();
    cmd->add_option("--p", args.p_text, "embedding prime")->capture_default_str();
    cmd->add_option("--root-residue", args.root_residue,
                    "root selector (mod p for odd p, mod 8 for p = 2)");
    cmd->add_option("--max-steps", args.max_steps, "expansion step budget")->capture_default_str();
    cmd->add_option("--format", args.format, "md, csv, or json")->capture_default_str();
}

// Builds (element, ctx) from the parsed spec, congruence clause, and
// CLI root flag; the congruence wins when both are present.
std::pair<QuadElem, EmbeddingCtx> resolve(const ElementArgs& args) {
    ElementSpec spec = parse(args.spec_text);
    mpz_class p = args.p();
    std::optional<RootSelect> sel = resolve_root_select(spec, p);
    if (!sel && !args.root_residue.empty()) sel = RootSelect{mpz_class(args.root_residue)};
    if (sel && !args.root_residue.empty() && spec.congruence) {
        RootSelect flag{mpz_class(args.root_residue)};
        mpz_class mod = (p == 2) ? mpz_class(8) : p;
        if ((flag.residue - sel->residue) % mod != 0)
            throw UnsatisfiableCongruence(
                "--root-residue conflicts with the spec's residue clause");
    }
    mpz_class d = spec.element.is_rational() ? mpz_class(0) : spec.element.d();
    return {spec.element, EmbeddingCtx(p, d, d == 0 ? std::nullopt : sel)};
}

std::string render_convergents_md(const ConvergentSeq& conv) {
    std::ostringstream os;
    os << "| n | p_n | q_n | p'_n | q'_n |\n|---|---|---|---|---|\n";
    for (long n = 0; n < conv.size(); ++n)
        os << "| " << n << " | " << conv.p[n].get_str() << " | " << conv.q[n].get_str() << " | "
           << conv.p_red[n].get_str() << " | " << conv.q_red[n].get_str() << " |\n";
    return os.str();
}

int cmd_expand(const ElementArgs& args, long convergents_upto) {
    auto [elem, ctx] = resolve(args);
    Expansion exp = expand(elem, ctx, args.max_steps);
    Format f = parse_format(args.format);
    long upto = convergents_upto;
    if (upto < 0) upto = std::min<long>(static_cast<long>(exp.digits.size()) - 1, 8);
    if (!exp.periodic()) // only a period can be unrolled past the digits
        upto = std::min<long>(upto, static_cast<long>(exp.digits.size()) - 1);
    ConvergentSeq conv = convergents(exp, upto);

    if (f == Format::Json) {
        json doc;
        doc["schema"] = "simcf.expand/1";
        doc["input"] = args.spec_text;
        doc["p"] = ctx.p().get_str();
        doc["expansion"] = render_expansion(exp);
        doc["status"] = exp.periodic() ? "periodic" : (exp.finite() ? "finite" : "truncated");
        doc["preperiod"] = exp.preperiod;
        doc["period"] = exp.period;
        doc["digits"] = json::array();
        for (const auto& b : exp.digits) doc["digits"].push_back(b.get_str());
        doc["convergents"] = json::array();
        for (long n = 0; n < conv.size(); ++n) {
            json row;
            row["n"] = n;
            row["p"] = conv.p[n].get_str();
            row["q"] = conv.q[n].get_str();
            row["p_red"] = conv.p_red[n].get_str();
            row["q_red"] = conv.q_red[n].get_str();
            doc["convergents"].push_back(row);
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << render_expansion(exp) << "\n";
        if (f == Format::Md) std::cout << "\n" << render_convergents_md(conv);
    }
    return 0;
}

int cmd_verify(const ElementArgs& args, long steps) {
    auto [elem, ctx] = resolve(args);
    InvariantReport rep = verify_invariants(elem, ctx, steps);
    Format f = parse_format(args.format);
    if (f == Format::Json) {
        json doc;
        doc["schema"] = "simcf.verify/1";
        doc["input"] = args.spec_text;
        doc["p"] = ctx.p().get_str();
        doc["expansion"] = rep.rendered;
        doc["all_pass"] = rep.all_pass();
        doc["checks"] = json::array();
        for (const auto& c : rep.checks) {
            json row;
            row["name"] = c.name;
            row["applicable"] = c.applicable;
            row["pass"] = c.pass;
            if (!c.pass) {
                row["first_fail"] = c.first_fail;
                row["detail"] = c.detail;
            }
            doc["checks"].push_back(row);
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << rep.rendered << "\n";
        for (const auto& c : rep.checks) {
            std::string state = !c.applicable ? "skip" : (c.pass ? "pass" : "FAIL");
            std::cout << state << "  " << c.name;
            if (!c.pass) std::cout << "  (first failure at step " << c.first_fail << ": "
                                   << c.detail << ")";
            std::cout << "\n";
        }
    }
    return rep.all_pass() ? 0 : 1;
}

int cmd_gamma(const ElementArgs& args, long rows) {
    auto [elem, ctx] = resolve(args);
    Expansion exp = expand(elem, ctx, args.max_steps);
    Format f = parse_format(args.format);
    if (exp.finite())
        throw NotPeriodic("finite expansion: the value is rational, no exponent to report");
    if (!exp.periodic()) {
        // No period found: fall back to a least-squares fit of the
        // residual decay.  A data fit, not a theorem-backed exponent.
        EmpiricalFit fit = empirical_exponent_fit(elem, exp, ctx, rows > 0 ? rows : 20);
        if (f == Format::Json) {
            json doc;
            doc["schema"] = "simcf.gamma/1";
            doc["input"] = args.spec_text;
            doc["p"] = ctx.p().get_str();
            doc["expansion"] = render_expansion(exp);
            doc["empirical_fit"] = true;
            doc["gamma_r_fit"] = fit.gamma_real;
            doc["gamma_2_fit"] = fit.gamma_padic;
            doc["points"] = fit.points;
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cout << render_expansion(exp) << "\n"
                      << "no period within " << args.max_steps << " steps\n"
                      << "least-squares fit over " << fit.points
                      << " convergents (empirical, not theorem-backed):\n"
                      << "gamma_r ~ " << fit.gamma_real << "\n"
                      << "gamma_2 ~ " << fit.gamma_padic << "\n";
        }
        return 0;
    }
    QualityReport rep = quality_report(elem, exp, ctx, rows);
    if (f == Format::Json) {
        json doc;
        doc["schema"] = "simcf.gamma/1";
        doc["input"] = args.spec_text;
        doc["p"] = ctx.p().get_str();
        doc["expansion"] = render_expansion(exp);
        if (rep.has_summary) {
            doc["gamma"] = rep.summary.gamma;
            doc["gamma_r"] = rep.summary.gamma_real;
            doc["gamma_2"] = rep.summary.gamma_padic;
            doc["lambda_abs"] = rep.summary.lambda_abs;
            doc["xi"] = rep.summary.xi.get_str();
            doc["trace"] = rep.summary.trace.get_str();
            doc["empirical"] = rep.summary.empirical;
        }
        doc["rows"] = json::array();
        for (const auto& r : rep.rows) {
            json row;
            row["n"] = r.n;
            row["q_red"] = r.q_red.get_str();
            row["residual_vp"] = r.padic_residual_vp;
            row["real_residual"] = r.real_residual_lo;
            doc["rows"].push_back(row);
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << render_expansion(exp) << "\n";
        if (rep.has_summary) {
            std::cout << "gamma   = " << rep.summary.gamma << "\n"
                      << "gamma_r = " << rep.summary.gamma_real << "\n"
                      << "gamma_2 = " << rep.summary.gamma_padic << "\n"
                      << "|lambda| = " << rep.summary.lambda_abs << "\n"
                      << "xi      = " << rep.summary.xi.get_str() << "\n";
            if (rep.summary.empirical)
                std::cout << "(empirical: the exponent theorem covers p = 2 only)\n";
        } else {
            std::cout << "(no exponent summary: imaginary field)\n";
        }
    }
    return 0;
}

struct TableArgs {
    int which = 1;
    std::vector<std::string> p_list;
    std::vector<std::string> range;
    long max_steps = 1000;
    std::string format = "md";
    int jobs = 1;
    bool closed_lo = false;
};

int cmd_table(const TableArgs& args) {
    Format f = parse_format(args.format);
    if (args.which == 3) {
        std::vector<std::string> ps = args.p_list;
        if (ps.empty()) ps = {"3", "5", "7", "11", "13", "17", "19", "23"};
        mpz_class lo = 1, hi = 10000;
        if (args.range.size() == 2) {
            lo = mpz_class(args.range[0]);
            hi = mpz_class(args.range[1]);
        }
        std::vector<SweepCounts> rows;
        for (const auto& ptext : ps)
            rows.push_back(periodicity_sweep(mpz_class(ptext), lo, hi, args.max_steps, args.jobs,
                                             args.closed_lo));
        std::cout << format_sweep_table(rows, f, args.max_steps);
        return 0;
    }
    mpz_class p = args.p_list.empty() ? mpz_class(2) : mpz_class(args.p_list[0]);
    mpz_class lo, hi;
    if (args.range.size() == 2) {
        lo = mpz_class(args.range[0]);
        hi = mpz_class(args.range[1]);
    } else if (args.which == 1) {
        lo = 2;
        hi = 200;
    } else {
        lo = -200;
        hi = -2;
    }
    std::vector<TableRow> rows = sqrt_table(p, lo, hi, args.max_steps, args.jobs);
    std::cout << format_sqrt_table(rows, f, p);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simultaneous real / p-adic continued fractions"};
    app.require_subcommand(1);

    ElementArgs expand_args;
    long conv_upto = -1;
    CLI::App* expand_cmd = app.add_subcommand("expand", "expand one element");
    add_element_flags(expand_cmd, expand_args);
    expand_cmd->add_option("--convergents", conv_upto, "convergent rows to print");

    ElementArgs verify_args;
    long verify_steps = 100;
    CLI::App* verify_cmd = app.add_subcommand("verify", "check the proved invariants");
    add_element_flags(verify_cmd, verify_args);
    verify_cmd->add_option("--steps", verify_steps, "steps to verify")->capture_default_str();

    ElementArgs gamma_args;
    long gamma_rows = 20;
    CLI::App* gamma_cmd = app.add_subcommand("gamma", "approximation exponents");
    add_element_flags(gamma_cmd, gamma_args);
    gamma_cmd->add_option("--rows", gamma_rows, "residual rows to include")->capture_default_str();

    TableArgs table_args;
    CLI::App* table_cmd = app.add_subcommand("table", "reproduce the experiment tables");
    table_cmd->add_option("--which", table_args.which, "1, 2, or 3")->required();
    table_cmd->add_option("--p", table_args.p_list, "prime(s)");
    table_cmd->add_option("--range", table_args.range, "radicand range lo hi")->expected(2);
    table_cmd->add_option("--max-steps", table_args.max_steps, "step budget")
        ->capture_default_str();
    table_cmd->add_option("--format", table_args.format, "md, csv, or json")
        ->capture_default_str();
    table_cmd->add_option("--jobs", table_args.jobs, "worker threads")->capture_default_str();
    table_cmd->add_flag("--closed-lo", table_args.closed_lo,
                        "include the lower endpoint in table 3 sweeps");

    CLI11_PARSE(app, argc, argv);

    try {
        if (expand_cmd->parsed()) return cmd_expand(expand_args, conv_upto);
        if (verify_cmd->parsed()) return cmd_verify(verify_args, verify_steps);
        if (gamma_cmd->parsed()) return cmd_gamma(gamma_args, gamma_rows);
        if (table_cmd->parsed()) return cmd_table(table_args);
    } catch (const SyntaxError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const NotASquare& e) {
        std::cerr << "embedding error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const UnsatisfiableCongruence& e) {
        std::cerr << "embedding error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    }
    return 0;
}
