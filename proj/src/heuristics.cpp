#include "batchsched/heuristics.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "batchsched/errors.hpp"
#include "batchsched/matching.hpp"
#include "batchsched/rng.hpp"

namespace bsched::heuristics {
namespace {

// Working schedule with cached per-machine spans.
class State {
public:
    State(Schedule sched, const Instance& inst) : sched_(std::move(sched)), inst_(&inst) {
        span_.resize(sched_.machines.size());
        for (std::size_t k = 0; k < span_.size(); ++k) refresh(k);
    }

    const Schedule& schedule() const { return sched_; }
    MachineSequence& machine(std::size_t k) { return sched_.machines[k]; }
    Duration span(std::size_t k) const { return span_[k]; }
    std::size_t machine_count() const { return span_.size(); }
    void refresh(std::size_t k) { span_[k] = machine_span(sched_.machines[k], *inst_); }
    Duration cmax() const { return span_.empty() ? 0 : *std::max_element(span_.begin(), span_.end()); }

private:
    Schedule sched_;
    const Instance* inst_;
    std::vector<Duration> span_;
};

// Best schedule seen so far plus the trace of its value.
struct Incumbent {
    Schedule schedule;
    Duration value = 0;
    std::vector<Duration> trace;

    void offer(const State& st) {
        const auto c = st.cmax();
        if (c < value) {
            value = c;
            schedule = st.schedule();
        }
        trace.push_back(value);
    }
};

void check_config(const HeuristicConfig& cfg) {
    if (cfg.iterations < 1) throw InputError("iterations must be at least 1");
}

Duration end_if_appended(const State& st, std::size_t k, Duration d, Duration s) {
    return st.span(k) == 0 ? d : st.span(k) + s + d;
}

// Job 1 is the shorter member of a pair (lower index on ties), job 2 the longer.
std::pair<int, int> short_long(const Batch& b, const Instance& inst) {
    const int a = b.first();
    const int c = b.second();
    return inst.proc(c) < inst.proc(a) ? std::pair{c, a} : std::pair{a, c};
}

struct Recombination {
    int keep_pair_a;  // J_i^2
    int keep_pair_b;  // J_j^2
    int stay;         // longer of J_i^1, J_j^1
    int move;         // shorter of J_i^1, J_j^1
};

std::optional<Recombination> recombination(const Batch& bi, const Batch& bj, const Instance& inst) {
    if (!bi.is_pair() || !bj.is_pair()) return std::nullopt;
    const auto [i1, i2] = short_long(bi, inst);
    const auto [j1, j2] = short_long(bj, inst);
    if (!(inst.proc(i1) < inst.proc(j2) && inst.proc(j1) < inst.proc(i2))) return std::nullopt;
    if (!inst.graph().adjacent(i2, j2)) return std::nullopt;
    const bool i_longer = inst.proc(i1) > inst.proc(j1) || (inst.proc(i1) == inst.proc(j1) && i1 < j1);
    return Recombination{i2, j2, i_longer ? i1 : j1, i_longer ? j1 : i1};
}

// First machine other than `skip` that can take a singleton of duration d
// without exceeding `limit`.
std::optional<std::size_t> receiving_machine(const State& st, std::size_t skip, Duration d, Duration s, Duration limit) {
    for (std::size_t l = 0; l < st.machine_count(); ++l) {
        if (l != skip && end_if_appended(st, l, d, s) <= limit) return l;
    }
    return std::nullopt;
}

// Phase (a). Each applied move turns two pairs into one pair and two
// singletons, so the loop ends after at most n/2 moves.
void recombine_critical(State& st, const Instance& inst, Incumbent& best) {
    const Duration s = inst.setup();
    bool moved = true;
    while (moved) {
        moved = false;
        const Duration cmax = st.cmax();
        for (std::size_t k = 0; k < st.machine_count() && !moved; ++k) {
            if (st.span(k) != cmax) continue;
            auto& seq = st.machine(k);
            // Two batches on the critical machine itself.
            for (std::size_t a = 0; a < seq.size() && !moved; ++a) {
                for (std::size_t b = a + 1; b < seq.size() && !moved; ++b) {
                    const auto rec = recombination(seq[a], seq[b], inst);
                    if (!rec) continue;
                    const auto l = receiving_machine(st, k, inst.proc(rec->move), s, cmax);
                    if (!l) continue;
                    seq[a] = Batch(rec->keep_pair_a, rec->keep_pair_b);
                    seq[b] = Batch(rec->stay);
                    st.machine(*l).emplace_back(rec->move);
                    st.refresh(k);
                    st.refresh(*l);
                    best.offer(st);
                    moved = true;
                }
            }
            // One batch here, one on a machine with slack.
            for (std::size_t r = 0; r < st.machine_count() && !moved; ++r) {
                if (r == k || st.span(r) >= cmax) continue;
                auto& other = st.machine(r);
                for (std::size_t a = 0; a < seq.size() && !moved; ++a) {
                    for (std::size_t b = 0; b < other.size() && !moved; ++b) {
                        const auto rec = recombination(seq[a], other[b], inst);
                        if (!rec) continue;
                        const auto l = receiving_machine(st, k, inst.proc(rec->move), s, cmax);
                        if (!l) continue;
                        State trial = st;
                        trial.machine(k)[a] = Batch(rec->stay);
                        trial.machine(r)[b] = Batch(rec->keep_pair_a, rec->keep_pair_b);
                        trial.machine(*l).emplace_back(rec->move);
                        trial.refresh(k);
                        trial.refresh(r);
                        trial.refresh(*l);
                        if (trial.cmax() > cmax) continue;
                        st = std::move(trial);
                        best.offer(st);
                        moved = true;
                    }
                }
            }
        }
    }
}

// Phase (b): one sweep of random job exchanges over all unordered machine
// pairs. An exchange is kept when it does not increase the makespan.
void exchange_sweep(State& st, const Instance& inst, Rng& rng, Incumbent& best) {
    const auto& g = inst.graph();
    const std::size_t m = st.machine_count();
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t l = k + 1; l < m; ++l) {
            if (st.machine(k).empty() || st.machine(l).empty()) continue;
            const auto bi = rng.below(st.machine(k).size());
            const auto bj = rng.below(st.machine(l).size());
            const Batch from_k = st.machine(k)[bi];
            const Batch from_l = st.machine(l)[bj];
            const int a = from_k.jobs()[rng.below(from_k.jobs().size())];
            const int b = from_l.jobs()[rng.below(from_l.jobs().size())];
            if (!g.adjacent(a, b)) continue;
            const bool pair_on_k = rng.below(2) == 0;

            std::vector<int> rest;
            for (int j : from_k.jobs())
                if (j != a) rest.push_back(j);
            for (int j : from_l.jobs())
                if (j != b) rest.push_back(j);

            State trial = st;
            auto& tk = trial.machine(k);
            auto& tl = trial.machine(l);
            tk.erase(tk.begin() + static_cast<std::ptrdiff_t>(bi));
            tl.erase(tl.begin() + static_cast<std::ptrdiff_t>(bj));
            auto& with_pair = pair_on_k ? tk : tl;
            auto& with_rest = pair_on_k ? tl : tk;
            with_pair.emplace_back(a, b);
            if (rest.size() == 2 && g.adjacent(rest[0], rest[1])) {
                with_rest.emplace_back(rest[0], rest[1]);
            } else {
                for (int j : rest) with_rest.emplace_back(j);
            }
            trial.refresh(k);
            trial.refresh(l);
            if (trial.cmax() <= st.cmax()) st = std::move(trial);
            best.offer(st);
        }
    }
}

// Random batch swaps between two distinct machines; the walk keeps every
// swap and the incumbent remembers the best state visited.
void swap_walk(State& st, int iterations, Rng& rng, Incumbent& best) {
    const auto m = st.machine_count();
    for (int it = 0; it < iterations; ++it) {
        if (m < 2) {
            best.offer(st);
            continue;
        }
        const auto k = rng.below(m);
        auto l = rng.below(m - 1);
        if (l >= k) ++l;
        auto& mk = st.machine(k);
        auto& ml = st.machine(l);
        if (mk.empty() || ml.empty()) {
            best.offer(st);
            continue;
        }
        const auto a = rng.below(mk.size());
        const auto b = rng.below(ml.size());
        std::swap(mk[a], ml[b]);
        st.refresh(k);
        st.refresh(l);
        best.offer(st);
    }
}

void require_max(const Instance& inst, const char* who) {
    if (inst.mode() != BatchMode::Max) throw WrongSubproblem(std::string(who) + " handles max-batch instances only");
}

}  // namespace

std::vector<Batch> greedy_batches(const Instance& inst) {
    const int n = inst.job_count();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return inst.proc(a) > inst.proc(b); });
    std::vector<Batch> batches;
    for (int j : order) {
        auto open = std::find_if(batches.begin(), batches.end(),
                                 [&](const Batch& b) { return !b.is_pair() && inst.graph().adjacent(b.first(), j); });
        if (open != batches.end()) {
            *open = Batch(open->first(), j);
        } else {
            batches.emplace_back(j);
        }
    }
    return batches;
}

Schedule lpt_schedule(std::vector<Batch> batches, const Instance& inst) {
    std::vector<Duration> dur;
    dur.reserve(batches.size());
    for (const auto& b : batches) dur.push_back(batch_time(b, inst));
    std::vector<std::size_t> order(batches.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dur[a] > dur[b]; });
    std::vector<Batch> sorted;
    sorted.reserve(batches.size());
    for (auto i : order) sorted.push_back(batches[i]);
    return list_schedule(sorted, inst);
}

HeuristicResult h1(const Instance& inst, const HeuristicConfig& cfg) {
    require_max(inst, "H1");
    if (inst.machine_count() < 2) throw WrongSubproblem("H1 needs at least two machines");
    check_config(cfg);
    const Duration s = inst.setup();
    Rng rng(cfg.seed);

    const WeightedGraph weighted(inst.graph(), [&](const Edge& e) {
        return static_cast<Weight>(std::min(inst.proc(e.u), inst.proc(e.v)) + s);
    });
    const auto matching = max_weighted_matching(weighted);
    State st(lpt_schedule(batches_from_pairs(matching.edges, inst.job_count()), inst), inst);

    HeuristicResult out;
    out.initial = st.cmax();
    Incumbent best{st.schedule(), st.cmax(), {st.cmax()}};

    recombine_critical(st, inst, best);
    for (int sweep = 0; sweep < cfg.iterations; ++sweep) exchange_sweep(st, inst, rng, best);

    State rebuilt(lpt_schedule(greedy_batches(inst), inst), inst);
    best.offer(rebuilt);
    swap_walk(rebuilt, cfg.iterations, rng, best);

    out.schedule = std::move(best.schedule);
    out.makespan = best.value;
    out.trace = std::move(best.trace);
    return out;
}

HeuristicResult h2(const Instance& inst, const HeuristicConfig& cfg) {
    require_max(inst, "H2");
    check_config(cfg);
    Rng rng(cfg.seed);
    State st(lpt_schedule(greedy_batches(inst), inst), inst);

    HeuristicResult out;
    out.initial = st.cmax();
    Incumbent best{st.schedule(), st.cmax(), {st.cmax()}};
    swap_walk(st, cfg.iterations, rng, best);

    out.schedule = std::move(best.schedule);
    out.makespan = best.value;
    out.trace = std::move(best.trace);
    return out;
}

double gap(Duration cmax, Duration best) {
    if (best <= 0) throw InputError("gap is undefined for a best value of " + std::to_string(best));
    return static_cast<double>(cmax - best) / static_cast<double>(best);
}

}  // namespace bsched::heuristics
