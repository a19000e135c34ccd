#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "batchsched/errors.hpp"
#include "batchsched/milp.hpp"

namespace bsched::milp {
namespace {

constexpr std::size_t kMaxNameLength = 255;

void write_terms(std::ostream& out, const MilpModel& model, const std::vector<Term>& terms) {
    if (terms.empty()) {
        // LP rows need at least one term.
        out << "0 " << model.variables[static_cast<std::size_t>(model.objective_var)].name;
        return;
    }
    bool first = true;
    for (const Term& t : terms) {
        const auto& name = model.variables[static_cast<std::size_t>(t.var)].name;
        const auto mag = t.coef < 0 ? -t.coef : t.coef;
        if (first) {
            if (t.coef < 0) out << "- ";
        } else {
            out << (t.coef < 0 ? " - " : " + ");
        }
        if (mag != 1) out << mag << ' ';
        out << name;
        first = false;
    }
}

const char* sense_text(Sense s) {
    switch (s) {
        case Sense::LessEqual: return "<=";
        case Sense::Equal: return "=";
        case Sense::GreaterEqual: return ">=";
    }
    return "?";
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

bool parse_int(std::string_view s, std::int64_t& value) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw InputError("LP line " + std::to_string(line) + ": " + what);
}

// x_i_j_k or y_i_k (1-based) into a binary variable descriptor.
Variable binary_from_name(const std::string& name, int line) {
    std::vector<std::int64_t> parts;
    std::size_t pos = 2;
    if (name.size() < 3 || (name[0] != 'x' && name[0] != 'y') || name[1] != '_') fail(line, "bad variable name " + name);
    while (pos <= name.size()) {
        const auto next = name.find('_', pos);
        const auto piece = std::string_view(name).substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        std::int64_t v = 0;
        if (!parse_int(piece, v) || v < 1) fail(line, "bad variable name " + name);
        parts.push_back(v - 1);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    Variable var{name, VarKind::Binary};
    if (name[0] == 'x' && parts.size() == 3) {
        var.i = static_cast<int>(parts[0]);
        var.j = static_cast<int>(parts[1]);
        var.k = static_cast<int>(parts[2]);
    } else if (name[0] == 'y' && parts.size() == 2) {
        var.i = static_cast<int>(parts[0]);
        var.k = static_cast<int>(parts[1]);
    } else {
        fail(line, "bad variable name " + name);
    }
    return var;
}

}  // namespace

std::string export_lp(const MilpModel& model) {
    std::ostringstream out;
    out << "\\ Bm,max batch scheduling: " << model.job_count << " jobs, " << model.machine_count << " machines\n";
    out << "Minimize\n obj: " << model.variables[static_cast<std::size_t>(model.objective_var)].name << "\nSubject To\n";
    for (const Constraint& c : model.constraints) {
        out << ' ' << c.name << ": ";
        write_terms(out, model, c.terms);
        out << ' ' << sense_text(c.sense) << ' ' << c.rhs << '\n';
    }
    out << "Bounds\n";
    for (const Variable& v : model.variables) {
        if (v.kind == VarKind::Continuous) out << ' ' << v.name << " >= 0\n";
    }
    out << "Binaries\n";
    int on_line = 0;
    for (const Variable& v : model.variables) {
        if (v.kind != VarKind::Binary) continue;
        out << ' ' << v.name;
        if (++on_line == 10) {
            out << '\n';
            on_line = 0;
        }
    }
    if (on_line != 0) out << '\n';
    out << "End\n";
    return out.str();
}

MilpModel parse_lp(std::string_view text) {
    enum class Section { None, Objective, Constraints, Bounds, Binaries, Done };
    Section section = Section::None;
    std::string objective_name;
    std::vector<std::string> binary_names;
    struct RawRow {
        std::string name;
        std::vector<std::pair<std::string, std::int64_t>> terms;
        Sense sense;
        std::int64_t rhs;
        int line;
    };
    std::vector<RawRow> raw_rows;

    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto cut = line.find('\\'); cut != std::string::npos) line.erase(cut);
        auto toks = tokens(line);
        if (toks.empty()) continue;
        const auto head = lower(toks[0]);
        if (toks.size() == 1 && (head == "minimize" || head == "minimise" || head == "min")) {
            section = Section::Objective;
            continue;
        }
        if (toks.size() == 2 && head == "subject" && lower(toks[1]) == "to") {
            section = Section::Constraints;
            continue;
        }
        if (toks.size() == 1 && (head == "st" || head == "s.t.")) {
            section = Section::Constraints;
            continue;
        }
        if (toks.size() == 1 && head == "bounds") {
            section = Section::Bounds;
            continue;
        }
        if (toks.size() == 1 && (head == "binaries" || head == "binary" || head == "bin")) {
            section = Section::Binaries;
            continue;
        }
        if (toks.size() == 1 && head == "end") {
            section = Section::Done;
            continue;
        }
        switch (section) {
            case Section::None:
            case Section::Done: fail(lineno, "content outside a section");
            case Section::Objective: {
                if (toks.size() != 2 || toks[0].back() != ':') fail(lineno, "objective must be 'name: variable'");
                objective_name = toks[1];
                break;
            }
            case Section::Constraints: {
                if (toks[0].back() != ':') fail(lineno, "constraint rows must be named");
                RawRow row{toks[0].substr(0, toks[0].size() - 1), {}, Sense::LessEqual, 0, lineno};
                if (row.name.empty() || row.name.size() > kMaxNameLength) fail(lineno, "bad row name");
                std::int64_t sign = 1;
                std::int64_t coef = 1;
                bool have_coef = false;
                std::size_t t = 1;
                for (; t < toks.size(); ++t) {
                    const auto& tok = toks[t];
                    if (tok == "<=" || tok == "=<" || tok == "=" || tok == ">=" || tok == "=>") break;
                    if (tok == "+" || tok == "-") {
                        sign = tok == "-" ? -1 : 1;
                        continue;
                    }
                    std::int64_t value = 0;
                    if (parse_int(tok, value)) {
                        coef = value;
                        have_coef = true;
                        continue;
                    }
                    row.terms.emplace_back(tok, sign * (have_coef ? coef : 1));
                    sign = 1;
                    coef = 1;
                    have_coef = false;
                }
                if (t + 2 != toks.size()) fail(lineno, "expected '<sense> <rhs>' at end of row");
                const auto& s = toks[t];
                row.sense = (s == "<=" || s == "=<") ? Sense::LessEqual : (s == "=" ? Sense::Equal : Sense::GreaterEqual);
                if (!parse_int(toks[t + 1], row.rhs)) fail(lineno, "bad right-hand side " + toks[t + 1]);
                raw_rows.push_back(std::move(row));
                break;
            }
            case Section::Bounds: {
                if (toks.size() != 3 || toks[1] != ">=" || toks[2] != "0") fail(lineno, "only 'v >= 0' bounds are supported");
                if (toks[0] != objective_name) fail(lineno, "bound on unknown continuous variable " + toks[0]);
                break;
            }
            case Section::Binaries: {
                for (auto& name : toks) binary_names.push_back(std::move(name));
                break;
            }
        }
    }
    if (section != Section::Done) fail(lineno, "missing End");
    if (objective_name.empty()) fail(lineno, "missing objective");

    MilpModel model;
    for (const auto& name : binary_names) {
        auto var = binary_from_name(name, lineno);
        model.job_count = std::max({model.job_count, var.i + 1, var.j + 1});
        model.machine_count = std::max(model.machine_count, var.k + 1);
        model.variables.push_back(std::move(var));
    }
    model.objective_var = static_cast<int>(model.variables.size());
    model.variables.push_back({objective_name, VarKind::Continuous});
    for (auto& raw : raw_rows) {
        Constraint c;
        c.name = raw.name;
        if (c.name.size() < 3 || c.name[0] != 'c' || !std::isdigit(static_cast<unsigned char>(c.name[1])) || c.name[2] != '_') {
            fail(raw.line, "row name must look like cF_...");
        }
        c.family = c.name[1] - '0';
        c.sense = raw.sense;
        c.rhs = raw.rhs;
        for (const auto& [name, coef] : raw.terms) {
            if (coef == 0) continue;
            const auto var = model.find(name);
            if (!var) fail(raw.line, "undeclared variable " + name);
            c.terms.push_back({*var, coef});
        }
        model.constraints.push_back(std::move(c));
    }
    return model;
}

}  // namespace bsched::milp
