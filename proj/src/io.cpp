#include "batchsched/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

#include "batchsched/errors.hpp"

namespace bsched::io {
namespace {

struct Token {
    std::string_view text;
    int column;  // 1-based
};

std::vector<Token> split(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

[[noreturn]] void fail(int line, int column, const std::string& what) {
    throw InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

std::int64_t to_int(const Token& tok, int line, const char* what) {
    std::int64_t value = 0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        fail(line, tok.column, std::string("expected integer ") + what + ", got '" + std::string(tok.text) + "'");
    }
    return value;
}

bool blank_or_comment(std::string_view line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Instance parse_instance(std::istream& in) {
    std::string line;
    int lineno = 0;
    auto next_content = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!blank_or_comment(line)) return true;
        }
        return false;
    };

    if (!next_content()) throw InputError("line 1, column 1: empty instance");
    auto header = split(line);
    if (header.size() != 4) fail(lineno, 1, "header must be 'n m s mode'");
    const auto n = to_int(header[0], lineno, "job count");
    const auto m = to_int(header[1], lineno, "machine count");
    const auto s = to_int(header[2], lineno, "setup time");
    if (n < 1) fail(lineno, header[0].column, "job count must be positive");
    if (m < 1) fail(lineno, header[1].column, "machine count must be positive");
    if (s < 0) fail(lineno, header[2].column, "setup time must be nonnegative");
    BatchMode mode{};
    if (header[3].text == "max") {
        mode = BatchMode::Max;
    } else if (header[3].text == "sum") {
        mode = BatchMode::Sum;
    } else {
        fail(lineno, header[3].column, "mode must be 'max' or 'sum'");
    }

    if (!next_content()) fail(lineno + 1, 1, "missing processing times");
    auto ptoks = split(line);
    if (static_cast<std::int64_t>(ptoks.size()) != n) {
        fail(lineno, 1, "expected " + std::to_string(n) + " processing times, got " + std::to_string(ptoks.size()));
    }
    std::vector<Duration> proc;
    proc.reserve(ptoks.size());
    for (const auto& t : ptoks) {
        const auto p = to_int(t, lineno, "processing time");
        if (p <= 0) fail(lineno, t.column, "processing time must be positive");
        proc.push_back(p);
    }

    std::vector<Edge> edges;
    std::vector<char> seen(static_cast<std::size_t>(n * n), 0);
    while (next_content()) {
        auto toks = split(line);
        if (toks.size() != 2) fail(lineno, 1, "edge line must be 'i j'");
        const auto i = to_int(toks[0], lineno, "job index");
        const auto j = to_int(toks[1], lineno, "job index");
        if (i < 1 || i > n) fail(lineno, toks[0].column, "job index " + std::to_string(i) + " out of range");
        if (j < 1 || j > n) fail(lineno, toks[1].column, "job index " + std::to_string(j) + " out of range");
        if (i == j) fail(lineno, toks[0].column, "self-loop on job " + std::to_string(i));
        auto& cell = seen[static_cast<std::size_t>(std::min(i, j) - 1) * static_cast<std::size_t>(n) +
                          static_cast<std::size_t>(std::max(i, j) - 1)];
        if (cell) fail(lineno, toks[0].column, "duplicate edge " + std::to_string(i) + " " + std::to_string(j));
        cell = 1;
        edges.push_back({static_cast<int>(i - 1), static_cast<int>(j - 1)});
    }
    return Instance(std::move(proc), static_cast<int>(m), s, mode, CompatGraph(static_cast<int>(n), edges));
}

Instance parse_instance(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_instance(in);
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open instance file '" + path + "'");
    return parse_instance(in);
}

std::string format_instance(const Instance& inst) {
    std::ostringstream out;
    out << inst.job_count() << ' ' << inst.machine_count() << ' ' << inst.setup() << ' ' << to_string(inst.mode())
        << '\n';
    for (int j = 0; j < inst.job_count(); ++j) out << (j ? " " : "") << inst.proc(j);
    out << '\n';
    for (const Edge& e : inst.graph().edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
    return out.str();
}

ParsedSchedule parse_schedule(std::istream& in) {
    ParsedSchedule result;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view(line);
        auto toks = split(view);
        if (!toks.empty() && toks[0].text == "Cmax") {
            if (toks.size() != 2) fail(lineno, toks[0].column, "expected 'Cmax <value>'");
            result.cmax = to_int(toks[1], lineno, "makespan");
            break;
        }
        MachineSequence seq;
        for (const auto& tok : toks) {
            const auto t = tok.text;
            if (t.size() < 3 || t.front() != '[' || t.back() != ']') {
                fail(lineno, tok.column, "batch must look like [i] or [i,j], got '" + std::string(t) + "'");
            }
            const auto inner = t.substr(1, t.size() - 2);
            const auto comma = inner.find(',');
            auto job = [&](std::string_view s, int col) {
                const auto v = to_int(Token{s, col}, lineno, "job index");
                if (v < 1) fail(lineno, col, "job index must be positive");
                return static_cast<int>(v - 1);
            };
            if (comma == std::string_view::npos) {
                seq.emplace_back(job(inner, tok.column + 1));
            } else {
                const int a = job(inner.substr(0, comma), tok.column + 1);
                const int b = job(inner.substr(comma + 1), tok.column + 2 + static_cast<int>(comma));
                if (a == b) fail(lineno, tok.column, "batch repeats job " + std::to_string(a + 1));
                seq.emplace_back(a, b);
            }
        }
        result.schedule.machines.push_back(std::move(seq));
    }
    return result;
}

ParsedSchedule parse_schedule(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_schedule(in);
}

std::string format_schedule(const Schedule& sched, Duration cmax) {
    std::ostringstream out;
    for (const auto& seq : sched.machines) {
        bool first = true;
        for (const Batch& b : seq) {
            out << (first ? "" : " ") << '[' << b.first() + 1;
            if (b.is_pair()) out << ',' << b.second() + 1;
            out << ']';
            first = false;
        }
        out << '\n';
    }
    out << "Cmax " << cmax << '\n';
    return out.str();
}

}  // namespace bsched::io
