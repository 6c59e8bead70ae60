#include "zcp2/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "zcp2/classdata.hpp"
#include "zcp2/error.hpp"
#include "zcp2/galois.hpp"
#include "zcp2/genus.hpp"
#include "zcp2/iso.hpp"
#include "zcp2/lattice.hpp"
#include "zcp2/materialize.hpp"

namespace zcp2::cli {

namespace {

struct Options {
    int p = 0;
    std::string classdata;
    bool json = false;
    bool quiet = false;
    bool lenient = false;
    std::uint64_t max_enum = kDefaultEnumerationGuard;
    std::vector<std::string> descriptors;
    std::int64_t k = 1;
    int m = 0;
    std::string group = "p2";
    bool validate = false;
};

class Session {
public:
    Session(const Options& o, std::ostream& out) : o_(o), out_(out) {
        ctx_ = Context::make(o.classdata.empty() ? builtin(o.p) : load_config(o.classdata));
        if (ctx_->p() != o.p)
            throw InvariantViolation("p", "class data is for p = " + std::to_string(ctx_->p()) +
                                              ", not " + std::to_string(o.p));
    }

    LatticeDescriptor arg(std::size_t i) const {
        return parse(o_.descriptors.at(i), ctx_, ParseOptions{o_.lenient});
    }

    void require_args(std::size_t n) const {
        if (o_.descriptors.size() != n)
            throw Error("expected " + std::to_string(n) + " descriptor argument" + (n == 1 ? "" : "s"));
    }

    int emit(const nlohmann::json& j, const std::string& text) const {
        if (o_.quiet) return kExitOk;
        if (o_.json)
            out_ << j.dump(2) << '\n';
        else
            out_ << text << '\n';
        return kExitOk;
    }

    int decision(bool value, const std::string& yes, const std::string& no, nlohmann::json j) const {
        j["result"] = value;
        if (o_.quiet) return value ? kExitOk : kExitFalse;
        emit(j, value ? yes : no);
        return kExitOk;
    }

    const ContextPtr& ctx() const { return ctx_; }

private:
    const Options& o_;
    std::ostream& out_;
    ContextPtr ctx_;
};

std::string join_lines(const std::vector<std::string>& lines) {
    std::string s;
    for (const auto& l : lines) s += (s.empty() ? "" : "\n") + l;
    return s;
}

std::string text_of(const GroupElement& x) { return to_string(x); }

int cmd_check(const Session& s) {
    s.require_args(1);
    const auto d = s.arg(0);
    nlohmann::json j = to_json(d);
    j["rank"] = rank(d);
    j["faithfulness"] = to_string(faithfulness(d));
    j["genus_vector"] = to_json(genus_vector(d));
    return s.emit(j, join_lines({render(d), "rank " + std::to_string(rank(d)),
                                 "action " + std::string(to_string(faithfulness(d)))}));
}

int cmd_invariants(const Session& s) {
    s.require_args(1);
    const auto d = s.arg(0);
    const IsoInvariants inv = invariants_of(d);
    std::vector<std::string> lines{"R class " + text_of(inv.R_class), "S class " + text_of(inv.S_class),
                                   "u0 class " + (inv.u0_class ? inv.u0_class->to_string() : "-"),
                                   "quadratic character " +
                                       (inv.quad_char ? std::to_string(*inv.quad_char) : "-")};
    return s.emit(to_json(inv), join_lines(lines));
}

int cmd_padic(const Session& s) {
    s.require_args(1);
    const PadicDescriptor pd = padic_completion(s.arg(0));
    const nlohmann::json j = to_json(pd);
    std::vector<std::string> lines;
    for (const auto& [key, value] : j.items())
        if (key != "p") lines.push_back(key + " " + value.dump());
    return s.emit(j, join_lines(lines));
}

int cmd_twist(const Session& s, std::int64_t k) {
    s.require_args(1);
    const auto t = twist(s.arg(0), k);
    nlohmann::json j = to_json(t);
    j["k"] = GaloisElement(s.ctx()->p(), k).k();
    return s.emit(j, render(t));
}

int cmd_pair(const Session& s, const std::string& name) {
    s.require_args(2);
    const auto x = s.arg(0), y = s.arg(1);
    nlohmann::json j{{"left", render(x)}, {"right", render(y)}};
    if (name == "iso") return s.decision(isomorphic(x, y), "isomorphic", "not isomorphic", j);
    if (name == "genus-eq") return s.decision(same_genus(x, y), "same genus", "different genus", j);
    const SemidirectDescriptor gx{x}, gy{y};
    if (name == "group-iso") {
        auto k = twisted_isomorphic(x, y);
        if (k) j["twist_k"] = k->k();
        return s.decision(group_isomorphic(gx, gy), "isomorphic", "not isomorphic", j);
    }
    return s.decision(profinite_isomorphic(gx, gy), "isomorphic", "not isomorphic", j);
}

int cmd_genus_count(const Session& s, std::uint64_t guard) {
    s.require_args(1);
    const GenusReport r = genus_report(SemidirectDescriptor{s.arg(0)}, guard);
    std::vector<std::string> lines;
    auto v = r.value();
    lines.push_back(v ? std::to_string(*v) : "unknown");
    if (r.closed_form)
        lines.push_back("case " + std::string(to_string(r.closed_form->tag)) + " (closed form " +
                        std::to_string(r.closed_form->value) + ")");
    if (r.enumeration) lines.push_back("enumeration " + std::to_string(*r.enumeration));
    if (r.bounds)
        lines.push_back("bounds [" + std::to_string(r.bounds->lower) + ", " + std::to_string(r.bounds->upper) +
                        "]" + (r.bounds->holds ? "" : " violated"));
    for (const auto& n : r.notes) lines.push_back("note: " + n);
    nlohmann::json j = to_json(r);
    j["value"] = v ? nlohmann::json(*v) : nlohmann::json();
    return s.emit(j, join_lines(lines));
}

int cmd_um(const Session& s, int m) {
    if (m < 0 || m > s.ctx()->p()) throw Error("--m must lie in [0, p]");
    const UnitQuotient& q = s.ctx()->U(m);
    nlohmann::json reps = nlohmann::json::array();
    std::vector<std::string> names;
    for (const auto& r : q.reps()) {
        reps.push_back(to_json(r));
        names.push_back(r.to_string());
    }
    nlohmann::json j{{"p", s.ctx()->p()}, {"m", m}, {"size", q.size()}, {"reps", reps}};
    j["subgroup_order"] = q.subgroup() ? q.subgroup()->order() : 1;
    std::string text = "U_" + std::to_string(m) + " has order " + std::to_string(q.size());
    if (q.size() == 1) text += " (trivial)";
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    return s.emit(j, text + "\nrepresentatives: " + list);
}

int cmd_orbits(const Session& s, const std::string& group, std::uint64_t guard) {
    const CyclicAction* a = nullptr;
    if (group == "p")
        a = &s.ctx()->class_data().H_p;
    else if (group == "p2")
        a = &s.ctx()->class_data().H_p2;
    else
        throw Error("--group must be p or p2");
    const auto os = orbits(*a, guard);
    nlohmann::json list = nlohmann::json::array();
    std::vector<std::string> lines{std::to_string(os.size()) + " orbits"};
    for (const auto& orbit : os) {
        nlohmann::json o = nlohmann::json::array();
        std::string line;
        for (const auto& x : orbit) {
            o.push_back(x.exps);
            line += (line.empty() ? "{" : ", ") + to_string(x);
        }
        list.push_back(o);
        lines.push_back(line + "}");
    }
    nlohmann::json j{{"p", s.ctx()->p()},
                     {"group", group},
                     {"invariant_factors", a->target().invariant_factors()},
                     {"count", os.size()},
                     {"orbits", list}};
    return s.emit(j, join_lines(lines));
}

int cmd_materialize(const Session& s, bool validate) {
    s.require_args(1);
    const IntegerRep rep = rep_of(s.arg(0));
    nlohmann::json j = to_json(rep);
    std::vector<std::string> lines{"n " + std::to_string(rep.n)};
    for (std::size_t i = 0; i < rep.A.rows(); ++i) {
        std::string row;
        for (std::size_t c = 0; c < rep.A.cols(); ++c) row += (c ? " " : "") + rep.A(i, c).get_str();
        lines.push_back(row);
    }
    int status = kExitOk;
    if (validate) {
        const ValidationReport v = validate_rep(rep);
        j["validation"] = to_json(v);
        for (const auto& c : v.checks)
            lines.push_back((c.passed ? "ok   " : "FAIL ") + c.name + (c.detail.empty() ? "" : ": " + c.detail));
        if (!v.ok()) status = kExitFalse;
    }
    s.emit(j, join_lines(lines));
    return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Z[C_{p^2}]-lattices and the profinite genus of Z^n x| C_{p^2}", "zcp2"};
    app.require_subcommand(1, 1);
    Options o;
    app.add_option("--p", o.p, "prime p")->required();
    app.add_option("--classdata", o.classdata, "class-group data file (JSON)");
    app.add_flag("--json", o.json, "JSON output");
    app.add_flag("--quiet", o.quiet, "no output; decisions report through the exit status");
    app.add_flag("--lenient-units", o.lenient, "canonicalize non-canonical units instead of rejecting them");
    app.add_option("--max-enum", o.max_enum, "enumeration size guard");

    auto add = [&](const std::string& name, const std::string& help, std::size_t nargs) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        if (nargs) sub->add_option("descriptors", o.descriptors, "lattice descriptors")->expected(int(nargs));
        return sub;
    };
    add("check", "parse and normalize a descriptor", 1);
    add("invariants", "isomorphism invariants", 1);
    add("iso", "decide isomorphism of two lattices", 2);
    add("genus-eq", "decide whether two lattices share a genus", 2);
    add("padic", "p-adic completion multiplicities", 1);
    add("twist", "Galois twist by g -> g^k", 1)->add_option("--k", o.k, "twist exponent")->required();
    add("group-iso", "decide isomorphism of the semidirect products", 2);
    add("profinite-iso", "decide isomorphism of the profinite completions", 2);
    add("genus-count", "size of the profinite genus", 1);
    add("um", "unit quotient U_m", 0)->add_option("--m", o.m, "truncation length")->required();
    add("orbits", "Galois orbits on a class group", 0)
        ->add_option("--group", o.group, "p or p2")
        ->check(CLI::IsMember({"p", "p2"}));
    add("materialize", "integer matrix of the generator action", 1)
        ->add_flag("--validate", o.validate, "run the structural checks");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        const Session s(o, out);
        if (name == "check") return cmd_check(s);
        if (name == "invariants") return cmd_invariants(s);
        if (name == "padic") return cmd_padic(s);
        if (name == "twist") return cmd_twist(s, o.k);
        if (name == "iso" || name == "genus-eq" || name == "group-iso" || name == "profinite-iso")
            return cmd_pair(s, name);
        if (name == "genus-count") return cmd_genus_count(s, o.max_enum);
        if (name == "um") return cmd_um(s, o.m);
        if (name == "orbits") return cmd_orbits(s, o.group, o.max_enum);
        return cmd_materialize(s, o.validate);
    } catch (const UnsupportedPrime& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NeedsConfig& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ParseError& e) {
        err << "parse error " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

}  // namespace zcp2::cli
