#include "rmtheta/relation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "rmtheta/error.hpp"

namespace rmtheta {

std::string VarRef::to_string() const {
    return std::string(family == Family::A ? "a" : "b") + "(" + std::to_string(index.i) + "," +
           std::to_string(index.j) + ")";
}

// ---------------------------------------------------------------- Monomial

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (auto e : exps_)
        d += e;
    return d;
}

unsigned Monomial::degree_in(Family f) const {
    unsigned d = 0;
    int base = 16 * static_cast<int>(f);
    for (int k = 0; k < 16; ++k)
        d += exps_[base + k];
    return d;
}

std::vector<VarRef> Monomial::factors() const {
    std::vector<VarRef> out;
    for (int k = 0; k < kVarCount; ++k)
        for (unsigned e = 0; e < exps_[k]; ++e)
            out.push_back(VarRef::from_ordinal(k));
    return out;
}

Monomial operator*(const Monomial &a, const Monomial &b) {
    Monomial m;
    for (int k = 0; k < kVarCount; ++k)
        m.exps_[k] = static_cast<std::uint8_t>(a.exps_[k] + b.exps_[k]);
    return m;
}

bool Monomial::precedes(const Monomial &a, const Monomial &b) {
    unsigned da = a.degree(), db = b.degree();
    if (da != db)
        return da > db;
    for (int k = kVarCount; k-- > 0;)
        if (a.exps_[k] != b.exps_[k])
            return a.exps_[k] < b.exps_[k];
    return false;
}

std::string Monomial::to_string() const {
    std::string out;
    for (int k = 0; k < kVarCount; ++k) {
        if (exps_[k] == 0)
            continue;
        if (!out.empty())
            out += '*';
        out += VarRef::from_ordinal(k).to_string();
        if (exps_[k] > 1)
            out += "^" + std::to_string(exps_[k]);
    }
    return out;
}

// ---------------------------------------------------------------- Relation

Relation Relation::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term &x, const Term &y) { return Monomial::precedes(x.monomial, y.monomial); });
    std::vector<Term> merged;
    for (auto &t : terms) {
        if (!merged.empty() && merged.back().monomial == t.monomial)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const Term &t) { return t.coeff == 0; });
    return Relation(std::move(merged));
}

Relation Relation::variable(VarRef v) { return Relation({Term{Monomial(v), 1}}); }

Relation Relation::constant(const mpz_class &c) {
    if (c == 0)
        return Relation();
    return Relation({Term{Monomial(), c}});
}

unsigned Relation::degree() const {
    unsigned d = 0;
    for (const auto &t : terms_)
        d = std::max(d, t.monomial.degree());
    return d;
}

bool Relation::is_homogeneous() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const Term &t) { return t.monomial.degree() == terms_.front().monomial.degree(); });
}

std::vector<VarRef> Relation::variables() const {
    std::array<bool, kVarCount> used{};
    for (const auto &t : terms_)
        for (int k = 0; k < kVarCount; ++k)
            used[k] = used[k] || t.monomial.exponent(k) > 0;
    std::vector<VarRef> out;
    for (int k = 0; k < kVarCount; ++k)
        if (used[k])
            out.push_back(VarRef::from_ordinal(k));
    return out;
}

Relation operator+(const Relation &a, const Relation &b) {
    std::vector<Term> t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return Relation::from_terms(std::move(t));
}

Relation Relation::operator-() const {
    std::vector<Term> t = terms_;
    for (auto &x : t)
        x.coeff = -x.coeff;
    return Relation(std::move(t));
}

Relation operator-(const Relation &a, const Relation &b) { return a + (-b); }

Relation operator*(const Relation &a, const Relation &b) {
    std::vector<Term> t;
    t.reserve(a.terms_.size() * b.terms_.size());
    for (const auto &x : a.terms_)
        for (const auto &y : b.terms_)
            t.push_back(Term{x.monomial * y.monomial, x.coeff * y.coeff});
    return Relation::from_terms(std::move(t));
}

Relation operator*(long c, const Relation &a) {
    if (c == 0)
        return Relation();
    std::vector<Term> t = a.terms_;
    for (auto &x : t)
        x.coeff *= c;
    return Relation(std::move(t));
}

Relation Relation::normalized() const {
    Relation r = from_terms(terms_);
    r.id_ = id_;
    if (r.terms_.empty())
        return r;
    mpz_class g = 0;
    for (const auto &t : r.terms_)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (r.terms_.front().coeff < 0)
        g = -g;
    for (auto &t : r.terms_)
        mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
    return r;
}

Relation Relation::substitute(const std::function<VarRef(VarRef)> &f) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto &t : terms_) {
        Monomial m;
        for (VarRef v : t.monomial.factors())
            m = m * Monomial(f(v));
        out.push_back(Term{m, t.coeff});
    }
    return from_terms(std::move(out));
}

bool Relation::same_polynomial(const Relation &o) const {
    if (terms_.size() != o.terms_.size())
        return false;
    for (std::size_t k = 0; k < terms_.size(); ++k)
        if (!(terms_[k].monomial == o.terms_[k].monomial) || terms_[k].coeff != o.terms_[k].coeff)
            return false;
    return true;
}

std::string Relation::body_string() const {
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto &t : terms_) {
        if (!out.empty())
            out += ' ';
        out += t.coeff < 0 ? "-" : "+";
        mpz_class mag = abs(t.coeff);
        out += mag.get_str();
        std::string m = t.monomial.to_string();
        if (!m.empty())
            out += "*" + m;
    }
    return out;
}

std::string Relation::serialize() const { return "rel " + id_ + ": " + body_string(); }

// ---------------------------------------------------------------- RelationSet

std::string_view to_string(Provenance p) {
    switch (p) {
    case Provenance::Mumford: return "mumford";
    case Provenance::RMBilinear: return "rm-bilinear";
    case Provenance::RM: return "rm";
    case Provenance::SplitProduct: return "split-product";
    case Provenance::SplitSquare: return "split-square";
    }
    return "unknown";
}

bool RelationSet::contains(const Relation &r) const {
    Relation n = r.normalized();
    return std::any_of(relations_.begin(), relations_.end(),
                       [&](const Relation &x) { return x.same_polynomial(n); });
}

bool RelationSet::add(const Relation &r) {
    Relation n = r.normalized();
    if (n.is_zero() || contains(n))
        return false;
    relations_.push_back(std::move(n));
    return true;
}

std::string RelationSet::serialize() const {
    std::string out;
    for (const auto &r : relations_)
        out += r.serialize() + "\n";
    return out;
}

// ---------------------------------------------------------------- parsing

namespace {

class BodyParser {
public:
    explicit BodyParser(std::string_view s) : s_(s) {}

    Relation parse() {
        skip_ws();
        if (s_.substr(pos_) == "0")
            return Relation();
        std::vector<Term> terms;
        while (true) {
            skip_ws();
            if (pos_ == s_.size())
                break;
            terms.push_back(term());
        }
        if (terms.empty())
            fail("empty relation");
        Relation r;
        for (auto &t : terms) {
            Relation m = Relation::constant(t.coeff);
            for (VarRef v : t.monomial.factors())
                m = m * Relation::variable(v);
            r = r + m;
        }
        return r;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const {
        throw Error(Errc::SyntaxError, msg + " at column " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string digits() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected digits");
        return std::string(s_.substr(start, pos_ - start));
    }

    int small_digit() {
        std::string d = digits();
        if (d.size() != 1 || d[0] > '3')
            fail("index out of range");
        return d[0] - '0';
    }

    Term term() {
        bool neg = false;
        if (eat('-'))
            neg = true;
        else if (!eat('+'))
            fail("expected sign");
        mpz_class c(digits(), 10);
        if (neg)
            c = -c;
        Monomial m;
        while (eat('*')) {
            Family f;
            if (eat('a'))
                f = Family::A;
            else if (eat('b'))
                f = Family::B;
            else
                fail("expected variable");
            if (!eat('('))
                fail("expected '('");
            int i = small_digit();
            if (!eat(','))
                fail("expected ','");
            int j = small_digit();
            if (!eat(')'))
                fail("expected ')'");
            unsigned e = 1;
            if (eat('^')) {
                std::string d = digits();
                if (d.size() > 2)
                    fail("exponent too large");
                e = static_cast<unsigned>(std::stoi(d));
                if (e == 0)
                    fail("zero exponent");
            }
            m = m * Monomial(VarRef{f, Index(i, j)}, e);
        }
        if (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])))
            fail("unexpected character");
        return Term{m, c};
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

Relation parse_relation_body(std::string_view body) { return BodyParser(body).parse(); }

RelationSet parse_relations(std::string_view text, Provenance tag) {
    RelationSet out(tag);
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::string_view v = line;
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front())))
            v.remove_prefix(1);
        if (v.empty())
            continue;
        if (v.substr(0, 4) != "rel ")
            throw Error(Errc::SyntaxError, "line " + std::to_string(lineno) + ": expected 'rel'");
        v.remove_prefix(4);
        auto colon = v.find(':');
        if (colon == std::string_view::npos)
            throw Error(Errc::SyntaxError, "line " + std::to_string(lineno) + ": missing ':'");
        std::string id(v.substr(0, colon));
        std::erase_if(id, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
        if (id.empty())
            throw Error(Errc::SyntaxError, "line " + std::to_string(lineno) + ": empty id");
        Relation r = parse_relation_body(v.substr(colon + 1));
        r.set_id(id);
        if (!out.add(r))
            throw Error(Errc::SyntaxError, "line " + std::to_string(lineno) + ": zero or duplicate relation");
        if (!out.relations().back().same_polynomial(r))
            throw Error(Errc::SyntaxError, "line " + std::to_string(lineno) + ": relation is not in canonical form");
    }
    return out;
}

// ---------------------------------------------------------------- span

namespace {

struct MonomialLess {
    bool operator()(const Monomial &a, const Monomial &b) const { return Monomial::precedes(a, b); }
};

// Row-reduces `rows` in place; returns rank.
std::size_t eliminate(std::vector<std::vector<mpq_class>> &rows, std::size_t cols) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0)
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0)
                continue;
            mpq_class factor = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k)
                rows[r][k] -= factor * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<mpq_class>> coefficient_rows(const std::vector<const Relation *> &rels) {
    std::map<Monomial, std::size_t, MonomialLess> basis;
    for (const auto *r : rels)
        for (const auto &t : r->terms())
            basis.emplace(t.monomial, 0);
    std::size_t k = 0;
    for (auto &[m, col] : basis)
        col = k++;
    std::vector<std::vector<mpq_class>> rows;
    for (const auto *r : rels) {
        std::vector<mpq_class> row(basis.size(), 0);
        for (const auto &t : r->terms())
            row[basis.at(t.monomial)] = t.coeff;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::size_t rational_rank(const RelationSet &rs) {
    std::vector<const Relation *> rels;
    for (const auto &r : rs)
        rels.push_back(&r);
    auto rows = coefficient_rows(rels);
    return eliminate(rows, rows.empty() ? 0 : rows.front().size());
}

bool span_contains(const Relation &target, const RelationSet &rs) {
    if (!target.is_homogeneous())
        throw Error(Errc::DegreeMismatch, "target is not homogeneous");
    const unsigned d = target.degree();
    for (const auto &r : rs)
        if (!r.is_homogeneous() || r.degree() != d)
            throw Error(Errc::DegreeMismatch, "relation " + r.id() + " has degree " + std::to_string(r.degree()) +
                                                  ", target has degree " + std::to_string(d));
    if (target.is_zero())
        return true;
    std::vector<const Relation *> rels;
    for (const auto &r : rs)
        rels.push_back(&r);
    rels.push_back(&target);
    auto rows = coefficient_rows(rels);
    const std::size_t cols = rows.front().size();
    auto base = std::vector<std::vector<mpq_class>>(rows.begin(), rows.end() - 1);
    std::size_t r0 = eliminate(base, cols);
    std::size_t r1 = eliminate(rows, cols);
    return r0 == r1;
}

} // namespace rmtheta
