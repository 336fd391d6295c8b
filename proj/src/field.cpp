#include "rmtheta/field.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace rmtheta {

std::string_view to_string(Errc code) {
    switch (code) {
    case Errc::CompositeCharacteristic: return "CompositeCharacteristic";
    case Errc::EvenCharacteristic: return "EvenCharacteristic";
    case Errc::NotMonic: return "NotMonic";
    case Errc::InvalidModulus: return "InvalidModulus";
    case Errc::TowerTooDeep: return "TowerTooDeep";
    case Errc::Reducible: return "Reducible";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::CoefficientCountMismatch: return "CoefficientCountMismatch";
    case Errc::MissingVariable: return "MissingVariable";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::RepeatedBranchPoint: return "RepeatedBranchPoint";
    case Errc::NoSquareRoots: return "NoSquareRoots";
    case Errc::NotAThetaNullPoint: return "NotAThetaNullPoint";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::AllZero: return "AllZero";
    case Errc::NoLift: return "NoLift";
    case Errc::DegenerateThetaPoint: return "DegenerateThetaPoint";
    case Errc::NoSolutionInField: return "NoSolutionInField";
    case Errc::InvalidCurve: return "InvalidCurve";
    case Errc::CharacteristicDividesSix: return "CharacteristicDividesSix";
    case Errc::FieldTooSmall: return "FieldTooSmall";
    case Errc::NotEllipticThetaNull: return "NotEllipticThetaNull";
    case Errc::UnknownSet: return "UnknownSet";
    case Errc::Io: return "Io";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

using Coeffs = std::vector<mpz_class>;

namespace {

// ---- polynomials over F_p, low degree first, used for inversion and the
// irreducibility test.

void trim(Coeffs &a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

// r <- a mod m, q <- a div m (m nonzero, trimmed).
void poly_divmod(Coeffs a, const Coeffs &m, const mpz_class &p, Coeffs &q, Coeffs &r) {
    trim(a);
    q.clear();
    if (a.size() < m.size()) {
        r = std::move(a);
        return;
    }
    mpz_class lead_inv;
    mpz_invert(lead_inv.get_mpz_t(), m.back().get_mpz_t(), p.get_mpz_t());
    q.assign(a.size() - m.size() + 1, 0);
    for (std::size_t k = a.size(); k-- >= m.size();) {
        mpz_class c = a[k] * lead_inv;
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
        std::size_t shift = k - (m.size() - 1);
        q[shift] = c;
        if (c != 0) {
            for (std::size_t i = 0; i < m.size(); ++i) {
                mpz_submul(a[shift + i].get_mpz_t(), c.get_mpz_t(), m[i].get_mpz_t());
                mpz_fdiv_r(a[shift + i].get_mpz_t(), a[shift + i].get_mpz_t(), p.get_mpz_t());
            }
        }
        if (k == 0)
            break;
    }
    a.resize(m.size() - 1);
    trim(a);
    r = std::move(a);
}

Coeffs poly_mul(const Coeffs &a, const Coeffs &b, const mpz_class &p) {
    if (a.empty() || b.empty())
        return {};
    Coeffs out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    for (auto &c : out)
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
    trim(out);
    return out;
}

Coeffs poly_sub(const Coeffs &a, const Coeffs &b, const mpz_class &p) {
    Coeffs out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) {
        out[i] -= b[i];
        mpz_fdiv_r(out[i].get_mpz_t(), out[i].get_mpz_t(), p.get_mpz_t());
    }
    trim(out);
    return out;
}

Coeffs poly_gcd(Coeffs a, Coeffs b, const mpz_class &p) {
    trim(a);
    trim(b);
    Coeffs q, r;
    while (!b.empty()) {
        poly_divmod(a, b, p, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool parse_integer(std::string_view s, mpz_class &out) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    if (s.empty())
        return false;
    std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (start == s.size())
        return false;
    for (std::size_t i = start; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    std::string digits(s.substr(start));
    out.set_str(digits, 10);
    if (s.front() == '-')
        out = -out;
    return true;
}

} // namespace

namespace detail {

struct FieldImpl {
    mpz_class p;
    std::size_t n = 1;
    mpz_class q;
    std::string name;
    Coeffs modulus;                                 // c0..cn, empty for prime fields
    std::vector<std::pair<std::size_t, mpz_class>> fold; // x^n = sum fold_i x^i
    std::vector<Coeffs> frob;                       // frob[j] = x^(j*p) mod f

    // square roots
    bool q_3mod4 = false;
    mpz_class sqrt_exp;       // (q+1)/4, or (Q-1)/2 for Tonelli-Shanks
    unsigned long two_adicity = 0;
    bool have_non_residue = false;
    Coeffs non_residue;
    Coeffs non_residue_odd;   // non_residue^Q

    void reduce_coeff(mpz_class &c) const { mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t()); }

    // Reduces an unreduced product buffer of length 2n-1 into out (length n).
    void fold_down(Coeffs &buf, Coeffs &out) const {
        for (std::size_t k = buf.size(); k-- > n;) {
            reduce_coeff(buf[k]);
            if (buf[k] == 0)
                continue;
            for (const auto &[i, c] : fold)
                mpz_addmul(buf[k - n + i].get_mpz_t(), buf[k].get_mpz_t(), c.get_mpz_t());
        }
        out.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            mpz_fdiv_r(out[i].get_mpz_t(), buf[i].get_mpz_t(), p.get_mpz_t());
    }

    void mul(const Coeffs &a, const Coeffs &b, Coeffs &out) const {
        if (n == 1) {
            mpz_class t = a[0] * b[0];
            out.resize(1);
            mpz_fdiv_r(out[0].get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
            return;
        }
        Coeffs buf(2 * n - 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                mpz_addmul(buf[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
        fold_down(buf, out);
    }

    void sqr(const Coeffs &a, Coeffs &out) const {
        if (n == 1) {
            mpz_class t = a[0] * a[0];
            out.resize(1);
            mpz_fdiv_r(out[0].get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
            return;
        }
        Coeffs buf(2 * n - 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = i + 1; j < n; ++j)
                mpz_addmul(buf[i + j].get_mpz_t(), a[i].get_mpz_t(), a[j].get_mpz_t());
        }
        for (auto &c : buf)
            mpz_mul_2exp(c.get_mpz_t(), c.get_mpz_t(), 1);
        for (std::size_t i = 0; i < n; ++i)
            mpz_addmul(buf[2 * i].get_mpz_t(), a[i].get_mpz_t(), a[i].get_mpz_t());
        fold_down(buf, out);
    }

    Coeffs one() const {
        Coeffs c(n, 0);
        c[0] = 1;
        return c;
    }

    bool is_one(const Coeffs &a) const {
        if (a[0] != 1)
            return false;
        for (std::size_t i = 1; i < n; ++i)
            if (a[i] != 0)
                return false;
        return true;
    }

    // Fixed 4-bit window exponentiation.
    Coeffs pow(const Coeffs &a, const mpz_class &e) const {
        if (e == 0)
            return one();
        if (n == 1) {
            Coeffs out(1);
            mpz_powm(out[0].get_mpz_t(), a[0].get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
            return out;
        }
        constexpr unsigned kWindow = 4;
        std::vector<Coeffs> table(1u << kWindow);
        table[1] = a;
        for (unsigned k = 2; k < table.size(); ++k)
            mul(table[k - 1], a, table[k]);
        std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        std::size_t chunks = (bits + kWindow - 1) / kWindow;
        Coeffs acc;
        Coeffs tmp;
        bool started = false;
        for (std::size_t c = chunks; c-- > 0;) {
            unsigned digit = 0;
            for (unsigned b = kWindow; b-- > 0;)
                digit = (digit << 1) | static_cast<unsigned>(mpz_tstbit(e.get_mpz_t(), c * kWindow + b));
            if (started) {
                for (unsigned s = 0; s < kWindow; ++s) {
                    sqr(acc, tmp);
                    std::swap(acc, tmp);
                }
                if (digit != 0) {
                    mul(acc, table[digit], tmp);
                    std::swap(acc, tmp);
                }
            } else if (digit != 0) {
                acc = table[digit];
                started = true;
            }
        }
        return acc;
    }

    Coeffs frobenius(const Coeffs &a) const {
        if (n == 1)
            return a;
        Coeffs out(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            if (a[j] == 0)
                continue;
            for (std::size_t i = 0; i < n; ++i)
                mpz_addmul(out[i].get_mpz_t(), a[j].get_mpz_t(), frob[j][i].get_mpz_t());
        }
        for (auto &c : out)
            reduce_coeff(c);
        return out;
    }

    mpz_class norm(const Coeffs &a) const {
        if (n == 1)
            return a[0];
        Coeffs acc = a;
        Coeffs conj = a;
        Coeffs tmp;
        for (std::size_t i = 1; i < n; ++i) {
            conj = frobenius(conj);
            mul(acc, conj, tmp);
            std::swap(acc, tmp);
        }
        return acc[0];
    }

    bool is_square(const Coeffs &a) const {
        mpz_class nm = norm(a);
        if (nm == 0)
            return true;
        return mpz_legendre(nm.get_mpz_t(), p.get_mpz_t()) == 1;
    }

    Coeffs from_index(mpz_class index) const {
        Coeffs c(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            mpz_fdiv_qr(index.get_mpz_t(), c[i].get_mpz_t(), index.get_mpz_t(), p.get_mpz_t());
        }
        return c;
    }

    void build_frobenius() {
        frob.assign(n, Coeffs{});
        frob[0] = one();
        if (n == 1)
            return;
        Coeffs x(n, 0);
        x[1] = 1;
        Coeffs xp = pow(x, p);
        for (std::size_t j = 1; j < n; ++j)
            mul(frob[j - 1], xp, frob[j]);
    }

    void build_sqrt_data() {
        mpz_class r4 = q % 4;
        if (r4 == 3) {
            q_3mod4 = true;
            sqrt_exp = (q + 1) / 4;
            return;
        }
        mpz_class odd = q - 1;
        two_adicity = mpz_scan1(odd.get_mpz_t(), 0);
        mpz_fdiv_q_2exp(odd.get_mpz_t(), odd.get_mpz_t(), two_adicity);
        sqrt_exp = (odd - 1) / 2;

        auto accept = [&](const Coeffs &c) {
            if (is_square(c))
                return false;
            non_residue = c;
            non_residue_odd = pow(c, odd);
            have_non_residue = true;
            return true;
        };
        // Constants first (useless when n is even: all of F_p is square there),
        // then generator powers, then the canonical enumeration.
        if (n % 2 == 1) {
            mpz_class limit = p < 256 ? p : mpz_class(256);
            for (mpz_class c = 2; c < limit; ++c)
                if (accept(from_index(c)))
                    return;
        }
        if (n > 1) {
            Coeffs x(n, 0);
            x[1] = 1;
            Coeffs xk = x;
            Coeffs tmp;
            for (std::size_t k = 1; k <= 2 * n; ++k) {
                if (accept(xk))
                    return;
                mul(xk, x, tmp);
                std::swap(xk, tmp);
            }
        }
        for (mpz_class idx = p; idx < p + 20000 && idx < q; ++idx)
            if (accept(from_index(idx)))
                return;
    }

    Coeffs sqrt_unchecked(const Coeffs &a) const {
        if (q_3mod4)
            return pow(a, sqrt_exp);
        if (!have_non_residue)
            throw Error(Errc::Reducible, "no quadratic non-residue found; the modulus is probably reducible");
        // Tonelli-Shanks
        Coeffs w = pow(a, sqrt_exp);
        Coeffs r, t, tmp;
        mul(w, a, r);
        mul(w, r, t);
        Coeffs c = non_residue_odd;
        unsigned long m = two_adicity;
        while (!is_one(t)) {
            unsigned long i = 0;
            Coeffs tt = t;
            while (!is_one(tt)) {
                sqr(tt, tmp);
                std::swap(tt, tmp);
                if (++i == m)
                    throw Error(Errc::Reducible, "square-root iteration did not terminate; the modulus is probably reducible");
            }
            Coeffs b = c;
            for (unsigned long k = 0; k + i + 1 < m; ++k) {
                sqr(b, tmp);
                std::swap(b, tmp);
            }
            mul(r, b, tmp);
            std::swap(r, tmp);
            sqr(b, c);
            mul(t, c, tmp);
            std::swap(t, tmp);
            m = i;
        }
        return r;
    }

    Coeffs inverse(const Coeffs &a) const {
        if (n == 1) {
            Coeffs out(1);
            if (a[0] == 0 || mpz_invert(out[0].get_mpz_t(), a[0].get_mpz_t(), p.get_mpz_t()) == 0)
                throw Error(Errc::DivisionByZero, "inverse of zero");
            return out;
        }
        Coeffs r0 = modulus, r1 = a, s0, s1{1}, qt, rem;
        trim(r1);
        if (r1.empty())
            throw Error(Errc::DivisionByZero, "inverse of zero");
        while (!r1.empty()) {
            poly_divmod(r0, r1, p, qt, rem);
            Coeffs s2 = poly_sub(s0, poly_mul(qt, s1, p), p);
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r0.size() != 1)
            throw Error(Errc::DivisionByZero, "element shares a factor with a reducible modulus");
        mpz_class g;
        mpz_invert(g.get_mpz_t(), r0[0].get_mpz_t(), p.get_mpz_t());
        Coeffs out(n, 0);
        for (std::size_t i = 0; i < s0.size() && i < n; ++i) {
            out[i] = s0[i] * g;
            reduce_coeff(out[i]);
        }
        return out;
    }
};

} // namespace detail

// ---------------------------------------------------------------- Field

namespace {

std::shared_ptr<detail::FieldImpl> make_impl(const mpz_class &p, Coeffs modulus, std::string name) {
    auto impl = std::make_shared<detail::FieldImpl>();
    impl->p = p;
    impl->name = std::move(name);
    if (modulus.empty()) {
        impl->n = 1;
    } else {
        impl->n = modulus.size() - 1;
        for (std::size_t i = 0; i < impl->n; ++i) {
            mpz_class c = -modulus[i];
            impl->reduce_coeff(c);
            if (c != 0)
                impl->fold.emplace_back(i, c);
        }
        impl->modulus = std::move(modulus);
    }
    mpz_pow_ui(impl->q.get_mpz_t(), p.get_mpz_t(), impl->n);
    impl->build_frobenius();
    return impl;
}

Coeffs reduce_modulus(const mpz_class &p, std::vector<mpz_class> modulus) {
    if (modulus.size() < 3)
        throw Error(Errc::InvalidModulus, "extension modulus must have degree at least 2");
    for (auto &c : modulus)
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
    if (modulus.back() != 1)
        throw Error(Errc::NotMonic, "leading coefficient of the modulus must be 1");
    return modulus;
}

} // namespace

Field Field::prime(const mpz_class &p) {
    if (mpz_even_p(p.get_mpz_t()))
        throw Error(Errc::EvenCharacteristic, "characteristic " + p.get_str() + " is even");
    if (p < 3 || mpz_probab_prime_p(p.get_mpz_t(), kPrimalityRounds) == 0)
        throw Error(Errc::CompositeCharacteristic, "characteristic " + p.get_str() + " is not prime");
    auto impl = make_impl(p, {}, "");
    impl->build_sqrt_data();
    return Field(std::move(impl));
}

Field Field::extend(std::vector<mpz_class> modulus, std::string name, bool check_irreducible) const {
    if (is_extension())
        throw Error(Errc::TowerTooDeep, "only prime fields can be extended");
    Coeffs f = reduce_modulus(impl_->p, std::move(modulus));
    if (check_irreducible && !is_irreducible(impl_->p, f))
        throw Error(Errc::Reducible, "modulus is reducible over F_" + impl_->p.get_str());
    auto impl = make_impl(impl_->p, std::move(f), std::move(name));
    impl->build_sqrt_data();
    return Field(std::move(impl));
}

bool Field::is_irreducible(const mpz_class &p, const std::vector<mpz_class> &modulus) {
    Coeffs f = reduce_modulus(p, modulus);
    auto impl = make_impl(p, f, "x");
    const std::size_t n = impl->n;
    Coeffs x(n, 0);
    x[1] = 1;
    Coeffs h = x;
    for (std::size_t i = 1; i <= n / 2; ++i) {
        h = impl->frobenius(h);
        Coeffs diff = poly_sub(h, x, p);
        Coeffs g = poly_gcd(f, diff, p);
        if (g.size() != 1)
            return false;
    }
    return true;
}

const mpz_class &Field::characteristic() const { return impl_->p; }
std::size_t Field::degree() const { return impl_->n; }
const mpz_class &Field::cardinality() const { return impl_->q; }
bool Field::is_extension() const { return impl_->n > 1; }
const std::string &Field::generator_name() const { return impl_->name; }
const std::vector<mpz_class> &Field::modulus() const { return impl_->modulus; }

Element Field::zero() const { return Element(impl_, Coeffs(impl_->n, 0)); }
Element Field::one() const { return Element(impl_, impl_->one()); }
Element Field::constant(long c) const { return constant(mpz_class(c)); }

Element Field::constant(const mpz_class &c) const {
    Coeffs v(impl_->n, 0);
    v[0] = c;
    impl_->reduce_coeff(v[0]);
    return Element(impl_, std::move(v));
}

Element Field::generator() const {
    if (!is_extension())
        throw Error(Errc::FieldMismatch, "prime field has no generator");
    Coeffs v(impl_->n, 0);
    v[1] = 1;
    return Element(impl_, std::move(v));
}

Element Field::from_coefficients(std::vector<mpz_class> coeffs) const {
    if (coeffs.size() != impl_->n)
        throw Error(Errc::CoefficientCountMismatch,
                    "expected " + std::to_string(impl_->n) + " coefficients, got " + std::to_string(coeffs.size()));
    for (auto &c : coeffs)
        impl_->reduce_coeff(c);
    return Element(impl_, std::move(coeffs));
}

Element Field::element_at(const mpz_class &index) const { return Element(impl_, impl_->from_index(index)); }

Element Field::non_residue() const {
    if (impl_->q_3mod4)
        return -one();
    if (!impl_->have_non_residue)
        throw Error(Errc::Reducible, "no quadratic non-residue found");
    return Element(impl_, impl_->non_residue);
}

Element Field::parse(std::string_view text) const {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    if (text.empty())
        throw Error(Errc::SyntaxError, "empty element");
    if (text.front() != '[') {
        mpz_class c;
        if (!parse_integer(text, c))
            throw Error(Errc::SyntaxError, "bad residue '" + std::string(text) + "'");
        return constant(c);
    }
    if (text.back() != ']')
        throw Error(Errc::SyntaxError, "missing ']' in '" + std::string(text) + "'");
    std::string_view body = text.substr(1, text.size() - 2);
    Coeffs coeffs;
    while (true) {
        std::size_t comma = body.find(',');
        std::string_view tok = body.substr(0, comma);
        mpz_class c;
        if (!parse_integer(tok, c))
            throw Error(Errc::SyntaxError, "bad coefficient '" + std::string(tok) + "'");
        coeffs.push_back(c);
        if (comma == std::string_view::npos)
            break;
        body.remove_prefix(comma + 1);
    }
    return from_coefficients(std::move(coeffs));
}

std::string Field::format(const Element &a) const {
    if (!a.bound() || !(a.field() == *this))
        throw Error(Errc::FieldMismatch, "element does not belong to this field");
    if (!is_extension())
        return a.coeffs_[0].get_str();
    std::string out = "[";
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (i)
            out += ',';
        out += a.coeffs_[i].get_str();
    }
    out += ']';
    return out;
}

bool Field::operator==(const Field &other) const {
    if (impl_ == other.impl_)
        return true;
    return impl_->p == other.impl_->p && impl_->modulus == other.impl_->modulus;
}

// ---------------------------------------------------------------- Element

Field Element::field() const {
    if (!impl_)
        throw Error(Errc::FieldMismatch, "unbound element");
    return Field(impl_);
}

const detail::FieldImpl &Element::same_field(const Element &b) const {
    if (!impl_ || !b.impl_)
        throw Error(Errc::FieldMismatch, "unbound element");
    if (impl_ != b.impl_ && !(impl_->p == b.impl_->p && impl_->modulus == b.impl_->modulus))
        throw Error(Errc::FieldMismatch, "operands belong to different fields");
    return *impl_;
}

bool Element::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpz_class &c) { return c == 0; });
}

bool Element::is_one() const { return impl_ && impl_->is_one(coeffs_); }

Element Element::operator-() const {
    if (!impl_)
        throw Error(Errc::FieldMismatch, "unbound element");
    Element r = *this;
    for (auto &c : r.coeffs_)
        if (c != 0)
            c = impl_->p - c;
    return r;
}

Element &Element::operator+=(const Element &b) {
    const auto &f = same_field(b);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] += b.coeffs_[i];
        if (coeffs_[i] >= f.p)
            coeffs_[i] -= f.p;
    }
    return *this;
}

Element &Element::operator-=(const Element &b) {
    const auto &f = same_field(b);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] -= b.coeffs_[i];
        if (coeffs_[i] < 0)
            coeffs_[i] += f.p;
    }
    return *this;
}

Element operator*(const Element &a, const Element &b) {
    const auto &f = a.same_field(b);
    Coeffs out;
    f.mul(a.coeffs_, b.coeffs_, out);
    return Element(a.impl_, std::move(out));
}

Element &Element::operator*=(const Element &b) {
    const auto &f = same_field(b);
    Coeffs out;
    f.mul(coeffs_, b.coeffs_, out);
    coeffs_ = std::move(out);
    return *this;
}

Element &Element::operator*=(long c) {
    if (!impl_)
        throw Error(Errc::FieldMismatch, "unbound element");
    for (auto &x : coeffs_) {
        x *= c;
        impl_->reduce_coeff(x);
    }
    return *this;
}

Element Element::square() const {
    if (!impl_)
        throw Error(Errc::FieldMismatch, "unbound element");
    Coeffs out;
    impl_->sqr(coeffs_, out);
    return Element(impl_, std::move(out));
}

Element Element::inverse() const {
    if (!impl_)
        throw Error(Errc::FieldMismatch, "unbound element");
    if (is_zero())
        throw Error(Errc::DivisionByZero, "inverse of zero");
    return Element(impl_, impl_->inverse(coeffs_));
}

Element Element::pow(const mpz_class &e) const {
    if (!impl_)
        throw Error(Errc::FieldMismatch, "unbound element");
    if (e < 0)
        return inverse().pow(mpz_class(-e));
    return Element(impl_, impl_->pow(coeffs_, e));
}

Element Element::frobenius() const {
    if (!impl_)
        throw Error(Errc::FieldMismatch, "unbound element");
    return Element(impl_, impl_->frobenius(coeffs_));
}

mpz_class Element::norm() const {
    if (!impl_)
        throw Error(Errc::FieldMismatch, "unbound element");
    return impl_->norm(coeffs_);
}

bool Element::operator==(const Element &b) const {
    same_field(b);
    return coeffs_ == b.coeffs_;
}

bool Element::operator<(const Element &b) const {
    same_field(b);
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] != b.coeffs_[i])
            return coeffs_[i] < b.coeffs_[i];
    }
    return false;
}

std::string Element::to_string() const { return field().format(*this); }

bool is_square(const Element &a) {
    if (a.is_zero())
        return true;
    return a.field().impl_->is_square(Coeffs(a.coefficients().begin(), a.coefficients().end()));
}

std::optional<Element> sqrt(const Element &a) {
    if (a.is_zero())
        return a;
    if (!is_square(a))
        return std::nullopt;
    Field f = a.field();
    Coeffs raw(a.coefficients().begin(), a.coefficients().end());
    Element r = f.from_coefficients(f.impl_->sqrt_unchecked(raw));
    if (r.square() != a)
        throw Error(Errc::Reducible, "square root check failed; the modulus is probably reducible");
    Element neg = -r;
    return neg < r ? neg : r;
}

Element map_by_generator(const Element &a, const Field &target, const Element &generator_image) {
    Field src = a.field();
    if (src.characteristic() != target.characteristic())
        throw Error(Errc::FieldMismatch, "characteristics differ");
    auto coeffs = a.coefficients();
    if (!src.is_extension())
        return target.constant(coeffs[0]);
    // Horner in the image of the generator.
    Element acc = target.zero();
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = acc * generator_image + target.constant(coeffs[i]);
    return acc;
}

Element lift_constant(const Element &a, const Field &target) {
    Field src = a.field();
    if (src.is_extension())
        throw Error(Errc::FieldMismatch, "not a prime-field element");
    if (src.characteristic() != target.characteristic())
        throw Error(Errc::FieldMismatch, "characteristics differ");
    return target.constant(a.coefficients()[0]);
}

} // namespace rmtheta
