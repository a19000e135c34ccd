#include "batchsched/milp.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>

#include "batchsched/errors.hpp"

namespace bsched::milp {
namespace {

std::string idx(int v) { return std::to_string(v + 1); }

std::map<std::tuple<int, int, int>, int> index_binaries(const MilpModel& model) {
    std::map<std::tuple<int, int, int>, int> out;
    for (std::size_t v = 0; v < model.variables.size(); ++v) {
        const auto& var = model.variables[v];
        if (var.kind == VarKind::Binary) out[{var.i, var.j, var.k}] = static_cast<int>(v);
    }
    return out;
}

}  // namespace

std::size_t MilpModel::binary_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(variables.begin(), variables.end(), [](const Variable& v) { return v.kind == VarKind::Binary; }));
}

std::size_t MilpModel::continuous_count() const noexcept { return variables.size() - binary_count(); }

std::optional<int> MilpModel::find(std::string_view name) const {
    for (std::size_t v = 0; v < variables.size(); ++v) {
        if (variables[v].name == name) return static_cast<int>(v);
    }
    return std::nullopt;
}

MilpModel build_model(const Instance& inst) {
    if (inst.mode() != BatchMode::Max) throw WrongSubproblem("the MILP model supports max-batch instances only");
    const int n = inst.job_count();
    const int m = inst.machine_count();
    const Duration s = inst.setup();

    MilpModel model;
    model.job_count = n;
    model.machine_count = m;
    auto& vars = model.variables;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < m; ++k)
                vars.push_back({"x_" + idx(i) + "_" + idx(j) + "_" + idx(k), VarKind::Binary, i, j, k});
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < m; ++k) vars.push_back({"y_" + idx(i) + "_" + idx(k), VarKind::Binary, i, -1, k});
    model.objective_var = static_cast<int>(vars.size());
    vars.push_back({"Cmax", VarKind::Continuous});

    const auto lookup = index_binaries(model);
    auto x = [&](int i, int j, int k) { return lookup.at({std::min(i, j), std::max(i, j), k}); };
    auto y = [&](int i, int k) { return lookup.at({i, -1, k}); };

    auto& rows = model.constraints;
    // (1) Pairs are summed over every partner of i, not only j > i, so that a
    // job cannot sit in two pairs or in a pair and a singleton at once.
    for (int i = 0; i < n; ++i) {
        Constraint c{"c1_" + idx(i), 1, {}, Sense::LessEqual, 1};
        for (int j = 0; j < n; ++j)
            if (j != i)
                for (int k = 0; k < m; ++k) c.terms.push_back({x(i, j, k), 1});
        rows.push_back(std::move(c));
    }
    // (2)
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Constraint c{"c2_" + idx(i) + "_" + idx(j), 2, {}, Sense::LessEqual, inst.graph().adjacent(i, j) ? 1 : 0};
            for (int k = 0; k < m; ++k) c.terms.push_back({x(i, j, k), 1});
            rows.push_back(std::move(c));
        }
    }
    // (3)
    for (int i = 0; i < n; ++i) {
        Constraint c{"c3_" + idx(i), 3, {}, Sense::LessEqual, 1};
        for (int k = 0; k < m; ++k) c.terms.push_back({y(i, k), 1});
        rows.push_back(std::move(c));
    }
    // (4) pairs + singletons = 1
    for (int i = 0; i < n; ++i) {
        Constraint c{"c4_" + idx(i), 4, {}, Sense::Equal, 1};
        for (int j = 0; j < n; ++j)
            if (j != i)
                for (int k = 0; k < m; ++k) c.terms.push_back({x(i, j, k), 1});
        for (int k = 0; k < m; ++k) c.terms.push_back({y(i, k), 1});
        rows.push_back(std::move(c));
    }
    // (5) sum pb_ij x + sum p_i y + s (batches - 1) <= Cmax, moved into
    // sum (pb_ij + s) x + sum (p_i + s) y - Cmax <= s.
    for (int k = 0; k < m; ++k) {
        Constraint c{"c5_" + idx(k), 5, {}, Sense::LessEqual, s};
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) c.terms.push_back({x(i, j, k), std::max(inst.proc(i), inst.proc(j)) + s});
        for (int i = 0; i < n; ++i) c.terms.push_back({y(i, k), inst.proc(i) + s});
        c.terms.push_back({model.objective_var, -1});
        rows.push_back(std::move(c));
    }
    return model;
}

std::int64_t row_activity(const MilpModel& model, const Constraint& row, const Assignment& values, Duration cmax) {
    std::int64_t lhs = 0;
    for (const Term& t : row.terms) {
        const auto v = t.var == model.objective_var ? cmax : static_cast<std::int64_t>(values[static_cast<std::size_t>(t.var)]);
        lhs += t.coef * v;
    }
    return lhs;
}

bool row_satisfied(const MilpModel& model, const Constraint& row, const Assignment& values, Duration cmax) {
    const auto lhs = row_activity(model, row, values, cmax);
    switch (row.sense) {
        case Sense::LessEqual: return lhs <= row.rhs;
        case Sense::Equal: return lhs == row.rhs;
        case Sense::GreaterEqual: return lhs >= row.rhs;
    }
    return false;
}

Assignment assignment_from_schedule(const MilpModel& model, const Schedule& sched, const Instance& inst) {
    const auto report = validate(sched, inst);
    if (!report.ok()) throw InfeasibleSchedule(report.violations);
    const auto lookup = index_binaries(model);
    Assignment values(model.variables.size(), 0);
    for (std::size_t k = 0; k < sched.machines.size(); ++k) {
        for (const Batch& b : sched.machines[k]) {
            const int kk = static_cast<int>(k);
            const auto key = b.is_pair() ? std::tuple{b.first(), b.second(), kk} : std::tuple{b.first(), -1, kk};
            values[static_cast<std::size_t>(lookup.at(key))] = 1;
        }
    }
    return values;
}

Schedule schedule_from_assignment(const MilpModel& model, const Assignment& values) {
    Schedule sched(model.machine_count);
    for (std::size_t v = 0; v < model.variables.size(); ++v) {
        const auto& var = model.variables[v];
        if (var.kind != VarKind::Binary || !values[v]) continue;
        auto& seq = sched.machines[static_cast<std::size_t>(var.k)];
        if (var.j >= 0) {
            seq.emplace_back(var.i, var.j);
        } else {
            seq.emplace_back(var.i);
        }
    }
    return sched;
}

namespace {

// Depth-first enumeration over binaries in model order. Each row tracks the
// activity of assigned variables and the largest/smallest contribution the
// unassigned ones can still add, which decides feasibility exactly once all
// of its variables are fixed and prunes hopeless prefixes before that.
class Enumerator {
public:
    explicit Enumerator(const MilpModel& model) : model_(model) {
        for (std::size_t v = 0; v < model.variables.size(); ++v) {
            if (model.variables[v].kind == VarKind::Binary) binaries_.push_back(static_cast<int>(v));
        }
        uses_.resize(model.variables.size());
        rows_.resize(model.constraints.size());
        for (std::size_t r = 0; r < model.constraints.size(); ++r) {
            const auto& row = model.constraints[r];
            auto& st = rows_[r];
            for (const Term& t : row.terms) {
                if (t.var == model.objective_var) {
                    if (t.coef != -1 || row.sense != Sense::LessEqual) {
                        throw InputError("row " + row.name + ": objective variable must appear as '- Cmax <= rhs'");
                    }
                    st.objective = true;
                    continue;
                }
                uses_[static_cast<std::size_t>(t.var)].push_back({static_cast<int>(r), t.coef});
                if (t.coef > 0) st.pos += t.coef; else st.neg += t.coef;
            }
        }
        values_.assign(model.variables.size(), 0);
    }

    std::optional<std::pair<Duration, Assignment>> run() {
        dfs(0);
        if (!found_) return std::nullopt;
        return std::make_pair(best_, best_values_);
    }

private:
    struct RowState {
        std::int64_t sum = 0;
        std::int64_t pos = 0;  // remaining positive coefficients
        std::int64_t neg = 0;  // remaining negative coefficients
        bool objective = false;
    };

    bool row_possible(std::size_t r) const {
        const auto& st = rows_[r];
        if (st.objective) return true;
        const auto lo = st.sum + st.neg;
        const auto hi = st.sum + st.pos;
        const auto rhs = model_.constraints[r].rhs;
        switch (model_.constraints[r].sense) {
            case Sense::LessEqual: return lo <= rhs;
            case Sense::Equal: return lo <= rhs && rhs <= hi;
            case Sense::GreaterEqual: return hi >= rhs;
        }
        return false;
    }

    Duration objective_bound() const {
        Duration lb = 0;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (rows_[r].objective) lb = std::max(lb, rows_[r].sum + rows_[r].neg - model_.constraints[r].rhs);
        }
        return lb;
    }

    void set(int var, int value, int sign) {
        for (const auto& [r, coef] : uses_[static_cast<std::size_t>(var)]) {
            auto& st = rows_[static_cast<std::size_t>(r)];
            if (coef > 0) st.pos -= sign * coef; else st.neg -= sign * coef;
            st.sum += sign * coef * value;
        }
    }

    void dfs(std::size_t depth) {
        if (found_ && objective_bound() >= best_) return;
        if (depth == binaries_.size()) {
            best_ = objective_bound();
            best_values_ = values_;
            found_ = true;
            return;
        }
        const int var = binaries_[depth];
        for (int value : {0, 1}) {
            set(var, value, +1);
            values_[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(value);
            bool ok = true;
            for (const auto& use : uses_[static_cast<std::size_t>(var)]) {
                if (!row_possible(static_cast<std::size_t>(use.first))) {
                    ok = false;
                    break;
                }
            }
            if (ok) dfs(depth + 1);
            set(var, value, -1);
            values_[static_cast<std::size_t>(var)] = 0;
        }
    }

    const MilpModel& model_;
    std::vector<int> binaries_;
    std::vector<std::vector<std::pair<int, std::int64_t>>> uses_;
    std::vector<RowState> rows_;
    Assignment values_;
    Assignment best_values_;
    Duration best_ = std::numeric_limits<Duration>::max();
    bool found_ = false;
};

}  // namespace

EnumerationResult enumerate_milp_optimum(const MilpModel& model, const Instance& inst) {
    if (model.binary_count() > kEnumerationLimit) {
        throw OracleLimit("MILP enumeration is limited to " + std::to_string(kEnumerationLimit) +
                          " binaries, got " + std::to_string(model.binary_count()));
    }
    if (model.job_count != inst.job_count() || model.machine_count != inst.machine_count()) {
        throw InputError("model does not describe this instance");
    }
    auto found = Enumerator(model).run();
    if (!found) throw InternalError("MILP model has no feasible assignment");
    EnumerationResult out;
    out.optimum = found->first;
    out.values = std::move(found->second);
    out.witness = schedule_from_assignment(model, out.values);
    return out;
}

}  // namespace bsched::milp
