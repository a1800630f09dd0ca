#pragma once

#include "enumgeom/catalog.hpp"
#include "enumgeom/chern.hpp"
#include "enumgeom/spec_format.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace enumgeom::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kParse = 2, kMath = 3 };

/// Thrown for problems with the invocation itself (unknown model, unreadable file).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// ParseError / SemanticError tagged with where the text came from.
struct SourceError {
    std::string source;
};

struct LoadedBlowup {
    BlowupInput input;
    RingModel base;
    RingModel center;
    std::optional<std::vector<Polynomial>> tangent;  ///< c_1..c_n of the base
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("no built-in model or readable file named '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace detail {

/// Splits a total class 1 + c_1 + ... into c_1..c_count. Components above
/// `count` are an error unless `drop_excess` (they vanish in the ring).
inline std::vector<Polynomial> graded_components(const Polynomial& p, std::size_t count, SourcePos pos,
                                                 const std::string& what, bool drop_excess) {
    std::vector<Polynomial> out(count, Polynomial(p.context()));
    bool unit = false;
    for (auto& [deg, part] : weighted_degree_split(p)) {
        if (deg == 0) {
            unit = part.constant_term().is_one();
            continue;
        }
        if (deg % 2 != 0) throw SemanticError(pos, what + " has a component of odd degree " + std::to_string(deg));
        auto k = static_cast<std::size_t>(deg / 2);
        if (k > count) {
            if (drop_excess) continue;
            throw SemanticError(pos, what + " has a component of degree " + std::to_string(deg) + " beyond " +
                                         std::to_string(2 * count));
        }
        out[k - 1] = part;
    }
    if (!unit) throw SemanticError(pos, what + " must have constant term 1");
    return out;
}

}  // namespace detail

inline LoadedBlowup load_blowup(const BlowupSpecDocument& doc, bool need_classes) {
    if (!doc.has_base) throw SemanticError({1, 1}, "missing 'base' section");
    if (!doc.has_center) throw SemanticError({1, 1}, "missing 'center' section");
    auto base = build_ring(doc.base);
    auto center = build_ring(doc.center);
    BlowupInput input{base.ring, center.ring, {}, std::nullopt, {}, base.ring->zero(), "z"};
    LoadedBlowup out{std::move(input), std::move(base), std::move(center), std::nullopt};
    auto& in = out.input;
    const auto& bctx = in.base->context();
    const auto& cctx = in.center->context();

    in.restriction.assign(bctx->arity(), Polynomial(cctx));
    std::vector<bool> seen(bctx->arity(), false);
    for (const auto& m : doc.maps) {
        auto idx = bctx->index_of(m.name);
        if (!idx) throw SemanticError(m.pos, "'" + m.name + "' is not a base generator");
        if (seen[*idx]) throw SemanticError(m.pos, "map for '" + m.name + "' given twice");
        seen[*idx] = true;
        in.restriction[*idx] = to_polynomial(*m.expr, cctx, out.center.symbols());
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw SemanticError({1, 1}, "no map given for base generator '" + bctx->name(i) + "'");

    if (cctx->arity() == 0) {
        in.section = std::vector<Polynomial>{};
    } else if (!doc.sections.empty()) {
        std::vector<Polynomial> sec(cctx->arity(), Polynomial(bctx));
        std::vector<bool> got(cctx->arity(), false);
        for (const auto& s : doc.sections) {
            auto idx = cctx->index_of(s.name);
            if (!idx) throw SemanticError(s.pos, "'" + s.name + "' is not a center generator");
            if (got[*idx]) throw SemanticError(s.pos, "section for '" + s.name + "' given twice");
            got[*idx] = true;
            sec[*idx] = to_polynomial(*s.expr, bctx, out.base.symbols());
        }
        for (std::size_t i = 0; i < got.size(); ++i)
            if (!got[i]) throw SemanticError({1, 1}, "no section given for center generator '" + cctx->name(i) + "'");
        in.section = std::move(sec);
    }
    if (doc.exceptional) in.exceptional_name = doc.exceptional->name;

    if (!need_classes) return out;
    if (!doc.dual) throw SemanticError({1, 1}, "missing 'dual' statement");
    if (!doc.chern) throw SemanticError({1, 1}, "missing 'chern' statement");
    in.dual_class = to_polynomial(*doc.dual->expr, bctx, out.base.symbols());
    auto deg = in.dual_class.homogeneous_degree();
    if (in.dual_class.is_zero() || !deg || *deg <= 0 || *deg % 2 != 0)
        throw SemanticError(doc.dual->pos, "dual class must be homogeneous of positive even degree");
    auto total = to_polynomial(*doc.chern->expr, cctx, out.center.symbols());
    in.normal_chern = detail::graded_components(total, static_cast<std::size_t>(*deg / 2), doc.chern->pos,
                                                "normal Chern class", false);
    if (doc.tangent) {
        auto t = to_polynomial(*doc.tangent->expr, bctx, out.base.symbols());
        out.tangent = detail::graded_components(t, static_cast<std::size_t>(in.base->top_degree() / 2),
                                                doc.tangent->pos, "tangent Chern class", true);
    }
    return out;
}

class Runner {
public:
    Runner(std::ostream& out, std::ostream& err, bool color) : out_(out), err_(err), color_(color) {}

    int run(const std::vector<std::string>& args) {
        CLI::App app{"Exact intersection numbers and cohomology-ring presentations", "enumgeom"};
        app.require_subcommand(1);
        app.set_help_all_flag("--help-all", "Show help for every command");

        std::string target, expr, file, format = "text", order = "grevlex";
        unsigned power = 0;

        auto* model = app.add_subcommand("model", "Built-in models");
        model->require_subcommand(1);
        auto* model_list = model->add_subcommand("list", "List built-in models");

        auto* chr = app.add_subcommand("char", "Characteristic number of a top-degree expression");
        chr->add_option("target", target, "Built-in model name or ring-spec file")->required();
        chr->add_option("expr", expr, "Polynomial expression")->required();

        auto* table = app.add_subcommand("table", "All nonzero characteristic numbers");
        table->add_option("target", target, "Built-in model name or ring-spec file")->required();
        table->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));

        auto* pow = app.add_subcommand("power", "Characteristic number of a power of a class");
        pow->add_option("target", target, "Built-in model name or ring-spec file")->required();
        pow->add_option("expr", expr, "Degree-2 class")->required();
        pow->add_option("n", power, "Exponent")->required();

        auto* nf = app.add_subcommand("nf", "Normal form of an expression");
        nf->add_option("target", target, "Built-in model name or ring-spec file")->required();
        nf->add_option("expr", expr, "Polynomial expression")->required();

        auto* gb = app.add_subcommand("gb", "Reduced Groebner basis of the relations in a ring-spec file");
        gb->add_option("file", file, "Ring-spec file")->required();
        gb->add_option("--order", order, "Monomial order")->check(CLI::IsMember({"grevlex", "lex"}));

        auto* kernel = app.add_subcommand("kernel", "Kernel of the restriction map in a blow-up spec");
        kernel->add_option("file", file, "Blow-up spec file")->required();

        auto* blow = app.add_subcommand("blowup", "Presentation of the blow-up described by a blow-up spec");
        blow->add_option("file", file, "Blow-up spec file")->required();

        auto* chern = app.add_subcommand("chern", "Total Chern class of the blow-up described by a blow-up spec");
        chern->add_option("file", file, "Blow-up spec file (with a 'tangent' statement)")->required();

        try {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        } catch (const CLI::CallForHelp&) {
            out_ << app.help();
            return kOk;
        } catch (const CLI::CallForAllHelp&) {
            out_ << app.help("", CLI::AppFormatMode::All);
            return kOk;
        } catch (const CLI::ParseError& e) {
            error(e.what());
            err_ << "run with --help for usage\n";
            return kUsage;
        }

        try {
            if (model_list->parsed()) return list_models();
            if (chr->parsed()) return characteristic(target, expr);
            if (table->parsed()) return print_table(target, format);
            if (pow->parsed()) return print_power(target, expr, power);
            if (nf->parsed()) return normal_form_of(target, expr);
            if (gb->parsed()) return print_basis(file, order);
            if (kernel->parsed()) return print_kernel(file);
            if (blow->parsed()) return print_blowup(file);
            if (chern->parsed()) return print_chern(file);
        } catch (const UsageError& e) {
            error(e.what());
            return kUsage;
        } catch (const ParseError& e) {
            error(source_ + ": " + e.what());
            return kParse;
        } catch (const SemanticError& e) {
            error(source_ + ": " + e.what());
            return kMath;
        } catch (const ValidationError& e) {
            error("invalid input");
            for (const auto& f : e.failures()) err_ << "  " << f << "\n";
            return kMath;
        } catch (const std::exception& e) {
            error(e.what());
            return kMath;
        }
        return kUsage;
    }

private:
    void error(const std::string& msg) {
        if (color_) err_ << "\x1b[1;31merror:\x1b[0m " << msg << "\n";
        else err_ << "error: " << msg << "\n";
    }

    SpecDocument parse_file(const std::string& path) {
        auto text = read_file(path);
        source_ = path;
        return parse_spec(text);
    }

    RingModel resolve(const std::string& target) {
        if (is_model_name(target)) return builtin(target).ring_model();
        auto doc = parse_file(target);
        if (auto* r = std::get_if<RingSpecDocument>(&doc)) return build_ring(*r);
        auto loaded = load_blowup(std::get<BlowupSpecDocument>(doc), true);
        return {blowup_presentation(loaded.input), {}};
    }

    Polynomial expression(const RingModel& m, const std::string& text) {
        source_ = "<expression>";
        return parse_polynomial(text, m.ring->context(), m.symbols());
    }

    int list_models() {
        for (const auto& n : model_names()) {
            const auto& m = builtin(n);
            out_ << n << "\ttop " << m.ring->top_degree() << "\tvars";
            for (const auto& v : m.ring->context()->names()) out_ << " " << v;
            if (!m.classes.empty()) {
                out_ << "\tclasses";
                for (const auto& [c, _] : m.classes) out_ << " " << c;
            }
            out_ << "\n";
        }
        return kOk;
    }

    int characteristic(const std::string& target, const std::string& text) {
        auto m = resolve(target);
        out_ << integrate(*m.ring, expression(m, text)) << "\n";
        return kOk;
    }

    int print_power(const std::string& target, const std::string& text, unsigned n) {
        auto m = resolve(target);
        out_ << intersection_power(*m.ring, expression(m, text), n) << "\n";
        return kOk;
    }

    int normal_form_of(const std::string& target, const std::string& text) {
        auto m = resolve(target);
        out_ << nf_in_ring(*m.ring, expression(m, text)).str() << "\n";
        return kOk;
    }

    int print_table(const std::string& target, const std::string& format) {
        auto m = resolve(target);
        auto rows = characteristic_table(*m.ring);
        const auto& ctx = *m.ring->context();
        if (format == "csv") {
            if (ctx.arity() == 3) {
                out_ << "r,s,t,value\n";
            } else {
                for (std::size_t i = 0; i < ctx.arity(); ++i) out_ << "e" << (i + 1) << ",";
                out_ << "value\n";
            }
            for (const auto& r : rows) {
                for (auto e : r.monomial.exponents()) out_ << e << ",";
                out_ << r.value << "\n";
            }
        } else if (format == "json") {
            auto arr = nlohmann::json::array();
            for (const auto& r : rows)
                arr.push_back({{"exponents", r.monomial.exponents()},
                               {"monomial", format_monomial(r.monomial, ctx)},
                               {"value", r.value.str()}});
            out_ << arr.dump(2) << "\n";
        } else {
            for (const auto& r : rows) out_ << format_monomial(r.monomial, ctx) << " = " << r.value << "\n";
        }
        return kOk;
    }

    int print_basis(const std::string& path, const std::string& order_name) {
        auto doc = parse_file(path);
        auto* r = std::get_if<RingSpecDocument>(&doc);
        if (!r) throw UsageError("'gb' needs a ring-spec file, got a blow-up spec");
        auto ctx = context_of(*r);
        std::vector<Polynomial> rels;
        for (const auto& e : r->rels) {
            auto p = to_polynomial(*e, ctx);
            if (!p.is_homogeneous()) throw SemanticError(e->pos, "relation " + p.str() + " is not homogeneous");
            rels.push_back(std::move(p));
        }
        auto order = order_name == "lex" ? MonomialOrder::lex(*ctx) : MonomialOrder::grevlex(*ctx);
        auto basis = buchberger(ctx, rels, order);
        for (const auto& g : basis.elements()) out_ << g.str(order) << "\n";
        return kOk;
    }

    LoadedBlowup blowup_file(const std::string& path, bool need_classes) {
        auto doc = parse_file(path);
        auto* b = std::get_if<BlowupSpecDocument>(&doc);
        if (!b) throw UsageError("'" + path + "' is a ring spec, not a blow-up spec");
        return load_blowup(*b, need_classes);
    }

    int print_kernel(const std::string& path) {
        auto loaded = blowup_file(path, false);
        const auto& in = loaded.input;
        auto failures = RingMap::check(in.base, in.center, in.restriction);
        if (!failures.empty()) throw ValidationError(failures);
        for (const auto& h : ring_map_kernel(in.base, in.center, in.restriction)) out_ << h.str() << "\n";
        return kOk;
    }

    int print_blowup(const std::string& path) {
        auto loaded = blowup_file(path, true);
        out_ << format_ring_spec(*blowup_presentation(loaded.input));
        return kOk;
    }

    int print_chern(const std::string& path) {
        auto loaded = blowup_file(path, true);
        if (!loaded.tangent) throw SemanticError({1, 1}, "missing 'tangent' statement");
        auto result = blowup_chern(loaded.input, *loaded.tangent);
        for (std::size_t k = 0; k < result.chern.length(); ++k)
            out_ << "c" << k << " = " << result.chern[k].str() << "\n";
        return kOk;
    }

    std::ostream& out_;
    std::ostream& err_;
    bool color_;
    std::string source_ = "<input>";
};

/// Entry point shared by the executable and the tests. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color = false) {
    return Runner(out, err, color).run(args);
}

}  // namespace enumgeom::cli
