#include "domkit/finite.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "domkit/error.hpp"

namespace domkit {

namespace {

std::vector<std::string> content_lines(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(line);
    }
    return out;
}

std::vector<long> parse_ints(const std::string& line) {
    std::vector<long> out;
    std::stringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw ParseError("bad table entry '" + tok + "'");
        if (tok.size() > 6) throw ParseError("table entry '" + tok + "' too large");
        out.push_back(std::stol(tok));
    }
    return out;
}

}  // namespace

FiniteDomTable parse_table(const std::string& text) {
    auto lines = content_lines(text);
    if (lines.empty()) throw ParseError("empty table");
    auto head = parse_ints(lines[0]);
    if (head.empty() || head.size() > 2) throw ParseError("header must be 'n' or 'n z'");
    if (head[0] < 1) throw ParseError("table size must be positive");
    FiniteDomTable t;
    t.n = static_cast<std::size_t>(head[0]);
    t.zero = head.size() == 2 ? static_cast<std::size_t>(head[1]) : FiniteDomTable::default_zero(t.n);
    if (t.zero >= t.n) throw ParseError("zero index out of range");
    if (lines.size() != t.n + 1)
        throw ParseError("expected " + std::to_string(t.n) + " rows, got " + std::to_string(lines.size() - 1));
    for (std::size_t i = 0; i < t.n; ++i) {
        auto row = parse_ints(lines[i + 1]);
        if (row.size() != t.n) throw ParseError("row " + std::to_string(i) + " has " + std::to_string(row.size()) + " entries");
        std::vector<std::size_t> r;
        for (long v : row) {
            if (v >= static_cast<long>(t.n)) throw ParseError("entry " + std::to_string(v) + " out of range");
            r.push_back(static_cast<std::size_t>(v));
        }
        t.plus.push_back(std::move(r));
    }
    return t;
}

std::string serialize_table(const FiniteDomTable& t) {
    std::string s = std::to_string(t.n);
    if (t.zero != FiniteDomTable::default_zero(t.n)) s += " " + std::to_string(t.zero);
    s += "\n";
    for (const auto& row : t.plus) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) s += " ";
            s += std::to_string(row[j]);
        }
        s += "\n";
    }
    return s;
}

FiniteDomTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_table(ss.str());
}

FiniteDom::FiniteDom(FiniteDomTable t, std::string name) : t_(std::move(t)), name_(std::move(name)) {
    if (t_.plus.size() != t_.n) throw PreconditionError("table has the wrong number of rows");
    for (const auto& r : t_.plus)
        if (r.size() != t_.n) throw PreconditionError("ragged table");
}

std::string FiniteDom::name() const { return name_.empty() ? "finite(" + std::to_string(t_.n) + ")" : name_; }

std::size_t FiniteDom::idx(const Element& x) const {
    long i = x.as_index();
    if (i < 0 || static_cast<std::size_t>(i) >= t_.n) throw TypeError("index " + std::to_string(i) + " outside " + name());
    return static_cast<std::size_t>(i);
}

Element FiniteDom::add(const Element& x, const Element& y) const {
    return Element::index(static_cast<long>(t_.at(idx(x), idx(y))));
}

Element FiniteDom::neg(const Element& x) const { return Element::index(static_cast<long>(t_.neg(idx(x)))); }

std::strong_ordering FiniteDom::compare(const Element& x, const Element& y) const { return idx(x) <=> idx(y); }

bool FiniteDom::contains(const Element& x) const {
    return x.is_index() && x.as_index() >= 0 && static_cast<std::size_t>(x.as_index()) < t_.n;
}

Element FiniteDom::parse(const std::string& text) const {
    auto v = parse_ints(text);
    if (v.size() != 1) throw ParseError("expected an index, got '" + text + "'");
    Element e = Element::index(v[0]);
    if (!contains(e)) throw TypeError("index " + text + " outside " + name());
    return e;
}

std::optional<std::vector<Element>> FiniteDom::elements() const {
    std::vector<Element> out;
    for (std::size_t i = 0; i < t_.n; ++i) out.push_back(Element::index(static_cast<long>(i)));
    return out;
}

DomPtr make_finite(FiniteDomTable t, std::string name) { return std::make_shared<FiniteDom>(std::move(t), std::move(name)); }

AxiomReport validate(const FiniteDomTable& t, const std::vector<Axiom>& axioms) {
    FiniteDom d(t);
    CheckOptions opt;
    opt.exhaustive_limit = t.n;
    return check_axioms(d, axioms, opt);
}

FiniteDomTable tabulate(const Dom& d) {
    auto all = d.elements();
    if (!all) throw PreconditionError(d.name() + " is not finite");
    const auto& xs = *all;
    auto index_of = [&](const Element& x) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (d.eq(xs[i], x)) return i;
        throw PreconditionError(d.name() + " is not closed: " + d.format(x));
    };
    FiniteDomTable t;
    t.n = xs.size();
    t.zero = index_of(d.zero());
    for (std::size_t i = 0; i < t.n; ++i) {
        if (index_of(d.neg(xs[i])) != t.n - 1 - i) throw PreconditionError(d.name() + ": minus is not the order reversal");
        std::vector<std::size_t> row;
        for (std::size_t j = 0; j < t.n; ++j) row.push_back(index_of(d.add(xs[i], xs[j])));
        t.plus.push_back(std::move(row));
    }
    return t;
}

FiniteDomTable trivial_dom(std::size_t n) {
    if (n == 0) throw PreconditionError("trivial dom needs n >= 1");
    FiniteDomTable t;
    t.n = n;
    t.zero = FiniteDomTable::default_zero(n);
    auto mag = [&](std::size_t x) { return std::max(x, n - 1 - x); };
    t.plus.assign(n, std::vector<std::size_t>(n));
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (mag(x) > mag(y))
                t.plus[x][y] = x;
            else if (mag(x) < mag(y))
                t.plus[x][y] = y;
            else
                t.plus[x][y] = std::min(x, y);
        }
    }
    return t;
}

// ---------- enumeration ----------

namespace {

constexpr int kUnset = -1;

struct Search {
    std::size_t n;
    std::size_t z;
    std::size_t dl;  // delta index
    bool assoc, mca, mcb, mcprime;
    std::vector<std::pair<std::size_t, std::size_t>> cells;  // free cells, i <= j
    std::vector<int> e;                                      // n*n, kUnset when open
    std::vector<FiniteDomTable> found;

    int& at(std::size_t i, std::size_t j) { return e[i * n + j]; }
    int get(std::size_t i, std::size_t j) const { return e[i * n + j]; }

    bool assoc_ok() const {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                int ab = get(a, b);
                if (ab == kUnset) continue;
                for (std::size_t c = 0; c < n; ++c) {
                    int l = get(static_cast<std::size_t>(ab), c);
                    if (l == kUnset) continue;
                    int bc = get(b, c);
                    if (bc == kUnset) continue;
                    int r = get(a, static_cast<std::size_t>(bc));
                    if (r == kUnset) continue;
                    if (l != r) return false;
                }
            }
        }
        return true;
    }

    bool mcprime_ok() const {
        // (x+y)-z >= x+(y-z), with u - v = -((-u)+v)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t w = 0; w < n; ++w) {
                    std::size_t xy = static_cast<std::size_t>(get(x, y));
                    std::size_t lhs = n - 1 - static_cast<std::size_t>(get(n - 1 - xy, w));
                    std::size_t yw = n - 1 - static_cast<std::size_t>(get(n - 1 - y, w));
                    std::size_t rhs = static_cast<std::size_t>(get(x, yw));
                    if (lhs < rhs) return false;
                }
        return true;
    }

    // x + b > delta iff x + b > n-1, split into its two implications
    bool mc_entry_ok(std::size_t i, std::size_t j, std::size_t v) const {
        bool big = i + j > n - 1;
        bool above = v > dl;
        if (mca && big && !above) return false;
        if (mcb && above && !big) return false;
        return true;
    }

    void run(std::size_t k) {
        if (k == cells.size()) {
            if (mcprime && !mcprime_ok()) return;
            FiniteDomTable t;
            t.n = n;
            t.zero = z;
            t.plus.assign(n, std::vector<std::size_t>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) t.plus[i][j] = static_cast<std::size_t>(get(i, j));
            found.push_back(std::move(t));
            return;
        }
        auto [i, j] = cells[k];
        int lo = 0;
        if (j > 0) lo = std::max(lo, get(i, j - 1));
        if (i > 0) lo = std::max(lo, get(i - 1, j));
        int hi = static_cast<int>(n) - 1;
        if (j + 1 < n && get(i, j + 1) != kUnset) hi = std::min(hi, get(i, j + 1));
        if (i + 1 < n && get(i + 1, j) != kUnset) hi = std::min(hi, get(i + 1, j));
        for (int v = lo; v <= hi; ++v) {
            if (!mc_entry_ok(i, j, static_cast<std::size_t>(v))) continue;
            at(i, j) = v;
            at(j, i) = v;
            if (!assoc || assoc_ok()) run(k + 1);
            at(i, j) = kUnset;
            at(j, i) = kUnset;
        }
    }
};

bool has(const std::vector<Axiom>& v, Axiom a) { return std::find(v.begin(), v.end(), a) != v.end(); }

bool zero_ok(std::size_t n, std::size_t z, bool ma, bool mb) {
    std::size_t dl = n - 1 - z;
    if (ma && dl > z) return false;
    if (mb) {
        for (std::size_t x = 0; x < n; ++x)
            if (std::max(x, n - 1 - x) < z) return false;
    }
    return true;
}

}  // namespace

std::vector<FiniteDomTable> enumerate(std::size_t n, const std::vector<Axiom>& axioms, const EnumerateOptions& opt) {
    if (n == 0) throw PreconditionError("enumerate needs n >= 1");
    if (n > opt.bound) throw PreconditionError("n = " + std::to_string(n) + " exceeds the enumeration bound " + std::to_string(opt.bound));
    bool ma = has(axioms, Axiom::MA), mb = has(axioms, Axiom::MB);

    struct Job {
        Search s;
        std::size_t start;
    };
    std::vector<Job> jobs;
    for (std::size_t z = 0; z < n; ++z) {
        if (!zero_ok(n, z, ma, mb)) continue;
        Search base;
        base.n = n;
        base.z = z;
        base.dl = n - 1 - z;
        base.assoc = has(axioms, Axiom::Associativity);
        base.mca = has(axioms, Axiom::MCa);
        base.mcb = has(axioms, Axiom::MCb);
        base.mcprime = has(axioms, Axiom::MCprime);
        base.e.assign(n * n, kUnset);
        for (std::size_t i = 0; i < n; ++i) {
            base.at(z, i) = static_cast<int>(i);
            base.at(i, z) = static_cast<int>(i);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                if (i != z && j != z) base.cells.emplace_back(i, j);
        bool consistent = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (base.get(i, j) != kUnset && !base.mc_entry_ok(i, j, static_cast<std::size_t>(base.get(i, j)))) consistent = false;
        if (!consistent || (base.assoc && !base.assoc_ok())) continue;
        if (base.cells.empty()) {
            jobs.push_back({base, 0});
            continue;
        }
        // split on the value of the first free cell
        auto [i, j] = base.cells[0];
        for (std::size_t v = 0; v < n; ++v) {
            Search s = base;
            int lo = 0;
            if (j > 0) lo = std::max(lo, s.get(i, j - 1));
            if (i > 0) lo = std::max(lo, s.get(i - 1, j));
            int hi = static_cast<int>(n) - 1;
            if (j + 1 < n && s.get(i, j + 1) != kUnset) hi = std::min(hi, s.get(i, j + 1));
            if (i + 1 < n && s.get(i + 1, j) != kUnset) hi = std::min(hi, s.get(i + 1, j));
            int iv = static_cast<int>(v);
            if (iv < lo || iv > hi || !s.mc_entry_ok(i, j, v)) continue;
            s.at(i, j) = iv;
            s.at(j, i) = iv;
            if (s.assoc && !s.assoc_ok()) continue;
            jobs.push_back({std::move(s), 1});
        }
    }

    unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::vector<FiniteDomTable>> results(jobs.size());
    std::size_t next = 0;
    std::mutex m;
    auto worker = [&] {
        for (;;) {
            std::size_t k;
            {
                std::lock_guard<std::mutex> lock(m);
                if (next == jobs.size()) return;
                k = next++;
            }
            Search s = jobs[k].s;
            s.run(jobs[k].start);
            results[k] = std::move(s.found);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, jobs.size()); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::vector<FiniteDomTable> out;
    for (auto& r : results)
        for (auto& t : r) out.push_back(std::move(t));
    std::sort(out.begin(), out.end(), [](const FiniteDomTable& a, const FiniteDomTable& b) {
        return std::tie(a.zero, a.plus) < std::tie(b.zero, b.plus);
    });
    return out;
}

}  // namespace domkit
