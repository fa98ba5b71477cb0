#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "domkit/dom.hpp"

namespace domkit {

// n-element chain 0 < 1 < ... < n-1 with -i = (n-1)-i.
struct FiniteDomTable {
    std::size_t n = 0;
    std::size_t zero = 0;
    std::vector<std::vector<std::size_t>> plus;

    static std::size_t default_zero(std::size_t n) { return n / 2; }
    std::size_t neg(std::size_t i) const { return n - 1 - i; }
    std::size_t at(std::size_t i, std::size_t j) const { return plus[i][j]; }
    friend bool operator==(const FiniteDomTable&, const FiniteDomTable&) = default;
};

// Line 1: "n" or "n z"; then n rows of n indices. '#' starts a comment.
FiniteDomTable parse_table(const std::string& text);
std::string serialize_table(const FiniteDomTable& t);
FiniteDomTable load_table(const std::string& path);

class FiniteDom : public Dom {
public:
    explicit FiniteDom(FiniteDomTable t, std::string name = "");
    const FiniteDomTable& table() const { return t_; }

    std::string name() const override;
    Element zero() const override { return Element::index(static_cast<long>(t_.zero)); }
    Element add(const Element& x, const Element& y) const override;
    Element neg(const Element& x) const override;
    std::strong_ordering compare(const Element& x, const Element& y) const override;
    bool contains(const Element& x) const override;
    std::string format(const Element& x) const override { return std::to_string(x.as_index()); }
    Element parse(const std::string& text) const override;
    std::optional<std::vector<Element>> elements() const override;

private:
    std::size_t idx(const Element& x) const;
    FiniteDomTable t_;
    std::string name_;
};

DomPtr make_finite(FiniteDomTable t, std::string name = "");

AxiomReport validate(const FiniteDomTable& t, const std::vector<Axiom>& axioms = all_axioms());

// Table of a finite dom, indexed along its order. The minus must be the order reversal.
FiniteDomTable tabulate(const Dom& d);

FiniteDomTable trivial_dom(std::size_t n);

struct EnumerateOptions {
    std::size_t bound = 7;
    unsigned threads = 0;  // 0: hardware concurrency
};

// Commutative, monotone tables with a neutral zero satisfying `axioms`, in lexicographic order
// of (zero, rows). Zero positions other than floor(n/2) appear only when MA or MB is not required.
std::vector<FiniteDomTable> enumerate(std::size_t n, const std::vector<Axiom>& axioms, const EnumerateOptions& opt = {});

}  // namespace domkit
