#include "dc/scalars.hpp"

#include <algorithm>
#include <cctype>

namespace dc {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    auto digits = [](const std::string& t, size_t from) {
        if (from >= t.size()) return false;
        for (size_t i = from; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits(num, num.size() > 0 && num[0] == '-' ? 1 : 0) || !digits(den, 0))
        throw ParseError("not a rational number: '" + raw + "'");
    Rational q;
    q.get_num() = mpz_class(num);
    q.get_den() = mpz_class(den);
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + raw + "'");
    q.canonicalize();
    return q;
}

GQ GQ::inv() const {
    Rational d = norm2();
    if (sgn(d) == 0) throw Error("division by zero");
    return GQ(re / d, -im / d);
}

GQ& GQ::operator+=(const GQ& o) {
    re += o.re;
    im += o.im;
    return *this;
}

GQ& GQ::operator-=(const GQ& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

GQ& GQ::operator*=(const GQ& o) {
    if (sgn(im) == 0 && sgn(o.im) == 0) {
        re *= o.re;
        return *this;
    }
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
}

std::string to_string(const GQ& z) {
    if (sgn(z.im) == 0) return to_string(z.re);
    std::string ims;
    if (z.im == 1)
        ims = "i";
    else if (z.im == -1)
        ims = "-i";
    else
        ims = to_string(z.im) + "*i";
    if (sgn(z.re) == 0) return ims;
    return to_string(z.re) + (sgn(z.im) > 0 ? "+" : "") + ims;
}

GQ parse_gq(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty scalar");
    if (s.back() != 'i') return GQ(parse_rational(s));
    size_t split = std::string::npos;
    for (size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
            split = k;
            break;
        }
    Rational re(0);
    std::string imag = s;
    if (split != std::string::npos) {
        re = parse_rational(s.substr(0, split));
        imag = s.substr(split);
    }
    imag.pop_back();
    if (!imag.empty() && imag.back() == '*') imag.pop_back();
    Rational im;
    if (imag.empty() || imag == "+")
        im = 1;
    else if (imag == "-")
        im = -1;
    else
        im = parse_rational(imag);
    return GQ(re, im);
}

int PolyRing::index_of(const std::string& name) const {
    for (int i = 0; i < nvars(); ++i)
        if (names[i] == name) return i;
    return -1;
}

std::string PolyRing::var_name(int v) const {
    if (v < nvars()) return names[v];
    return "conj(" + names[v - nvars()] + ")";
}

RingPtr make_ring(std::vector<std::string> names, int order) {
    auto r = std::make_shared<PolyRing>();
    r->names = std::move(names);
    r->order = order;
    return r;
}

RingPtr with_order(const RingPtr& ring, int order) { return make_ring(ring ? ring->names : std::vector<std::string>{}, order); }

int total_degree(const Exponent& e) {
    int d = 0;
    for (auto& [v, k] : e) d += k;
    return d;
}

static Exponent merge(const Exponent& a, const Exponent& b) {
    Exponent out;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
            out.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first)
            out.push_back(b[j++]);
        else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        }
    }
    return out;
}

ParamPoly::ParamPoly(const GQ& c) {
    if (!c.is_zero()) terms_[{}] = c;
}

ParamPoly::ParamPoly(RingPtr ring, const GQ& c) : ring_(std::move(ring)) {
    if (!c.is_zero()) terms_[{}] = c;
}

ParamPoly ParamPoly::variable(RingPtr ring, const std::string& name, bool conjugate) {
    int v = ring->index_of(name);
    if (v < 0) throw Error("unknown parameter '" + name + "'");
    if (conjugate) v += ring->nvars();
    return monomial(std::move(ring), {{v, 1}}, GQ(1));
}

ParamPoly ParamPoly::monomial(RingPtr ring, Exponent e, GQ c) {
    ParamPoly p(std::move(ring), GQ(0));
    std::sort(e.begin(), e.end());
    p.add_term(e, c);
    return p;
}

bool ParamPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

GQ ParamPoly::constant_term() const {
    auto it = terms_.find({});
    return it == terms_.end() ? GQ(0) : it->second;
}

int ParamPoly::degree() const {
    int d = -1;
    for (auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
}

bool ParamPoly::holomorphic() const {
    int r = ring_ ? ring_->nvars() : 0;
    for (auto& [e, c] : terms_)
        for (auto& [v, k] : e)
            if (v >= r) return false;
    return true;
}

ParamPoly ParamPoly::homogeneous_part(int k) const {
    ParamPoly out(ring_, GQ(0));
    for (auto& [e, c] : terms_)
        if (total_degree(e) == k) out.terms_[e] = c;
    return out;
}

ParamPoly ParamPoly::conj() const {
    ParamPoly out(ring_, GQ(0));
    int r = ring_ ? ring_->nvars() : 0;
    for (auto& [e, c] : terms_) {
        Exponent f;
        for (auto [v, k] : e) f.emplace_back(v < r ? v + r : v - r, k);
        std::sort(f.begin(), f.end());
        out.terms_[f] = c.conj();
    }
    return out;
}

ParamPoly ParamPoly::rebase(RingPtr ring) const {
    if (ring_ && ring && ring_->names != ring->names) throw Error("parameter rings differ");
    ParamPoly out(std::move(ring), GQ(0));
    for (auto& [e, c] : terms_) out.add_term(e, c);
    return out;
}

GQ ParamPoly::eval(const std::map<std::string, GQ>& point) const {
    GQ total(0);
    int r = ring_ ? ring_->nvars() : 0;
    for (auto& [e, c] : terms_) {
        GQ m = c;
        for (auto [v, k] : e) {
            const std::string& name = ring_->names[v % r];
            auto it = point.find(name);
            if (it == point.end()) throw Error("no value given for parameter '" + name + "'");
            GQ z = v < r ? it->second : it->second.conj();
            for (int i = 0; i < k; ++i) m *= z;
        }
        total += m;
    }
    return total;
}

ParamPoly ParamPoly::substitute(const std::map<std::string, ParamPoly>& images, RingPtr target) const {
    ParamPoly out(target, GQ(0));
    int r = ring_ ? ring_->nvars() : 0;
    for (auto& [e, c] : terms_) {
        ParamPoly m(target, c);
        for (auto [v, k] : e) {
            const std::string& name = ring_->names[v % r];
            auto it = images.find(name);
            if (it == images.end()) throw Error("no substitution given for parameter '" + name + "'");
            ParamPoly img = (v < r ? it->second : it->second.conj()).rebase(target);
            for (int i = 0; i < k; ++i) m *= img;
        }
        out += m;
    }
    return out;
}

void ParamPoly::adopt(const ParamPoly& o) {
    if (!o.ring_ || o.ring_ == ring_) return;
    if (!ring_) {
        ring_ = o.ring_;
    } else {
        if (ring_->names != o.ring_->names) throw Error("parameter rings differ");
        if (o.ring_->order >= ring_->order) return;
        ring_ = o.ring_;
    }
    for (auto it = terms_.begin(); it != terms_.end();)
        it = total_degree(it->first) > limit() ? terms_.erase(it) : std::next(it);
}

void ParamPoly::add_term(const Exponent& e, const GQ& c) {
    if (c.is_zero() || total_degree(e) > limit()) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
    adopt(o);
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
    adopt(o);
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

ParamPoly& ParamPoly::operator*=(const GQ& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

ParamPoly& ParamPoly::operator*=(const ParamPoly& o) {
    adopt(o);
    std::map<Exponent, GQ> a;
    a.swap(terms_);
    for (auto& [e1, c1] : a)
        for (auto& [e2, c2] : o.terms_)
            if (total_degree(e1) + total_degree(e2) <= limit()) add_term(merge(e1, e2), c1 * c2);
    return *this;
}

std::string to_string(const ParamPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (auto& [e, c] : p.terms()) {
        std::string coeff = to_string(c);
        bool compound = sgn(c.re) != 0 && sgn(c.im) != 0;
        if (compound) coeff = "(" + coeff + ")";
        std::string mono;
        for (auto [v, k] : e) {
            if (!mono.empty()) mono += "*";
            mono += p.ring()->var_name(v);
            if (k > 1) mono += "^" + std::to_string(k);
        }
        std::string term;
        if (mono.empty())
            term = coeff;
        else if (c == GQ(1))
            term = mono;
        else if (c == GQ(-1))
            term = "-" + mono;
        else
            term = coeff + "*" + mono;
        if (!out.empty()) out += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
        else out = term;
    }
    return out;
}

namespace {

struct PolyParser {
    const std::string& s;
    const RingPtr& ring;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ParseError("cannot parse polynomial '" + s + "': " + what + " at offset " + std::to_string(pos));
    }

    ParamPoly expr() {
        ParamPoly acc(ring, GQ(0));
        bool first = true;
        for (;;) {
            skip();
            int sign = 1;
            if (eat('+')) {
            } else if (eat('-')) {
                sign = -1;
            } else if (!first) {
                break;
            }
            ParamPoly t = term();
            acc += sign > 0 ? t : -t;
            first = false;
        }
        return acc;
    }
    ParamPoly term() {
        ParamPoly acc = factor();
        while (eat('*')) acc *= factor();
        return acc;
    }
    ParamPoly factor() {
        ParamPoly base = primary();
        if (eat('^')) {
            skip();
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (start == pos) fail("expected exponent");
            int k = std::stoi(s.substr(start, pos - start));
            ParamPoly out(ring, GQ(1));
            for (int i = 0; i < k; ++i) out *= base;
            return out;
        }
        return base;
    }
    ParamPoly primary() {
        skip();
        if (pos >= s.size()) fail("unexpected end");
        if (eat('(')) {
            ParamPoly e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (eat('-')) return -factor();
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
            return ParamPoly(ring, GQ(parse_rational(s.substr(start, pos - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
            std::string id = s.substr(start, pos - start);
            if (id == "conj") {
                if (!eat('(')) fail("expected '(' after conj");
                ParamPoly e = expr();
                if (!eat(')')) fail("expected ')'");
                return e.conj();
            }
            if (ring && ring->index_of(id) >= 0) return ParamPoly::variable(ring, id);
            if (id == "i") return ParamPoly(ring, I_UNIT);
            fail("unknown symbol '" + id + "'");
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

}  // namespace

ParamPoly parse_poly(const std::string& s, const RingPtr& ring) {
    PolyParser p{s, ring};
    ParamPoly out = p.expr();
    p.skip();
    if (p.pos != s.size()) p.fail("trailing input");
    return out;
}

}  // namespace dc
