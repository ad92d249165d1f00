#include "dc/presentation.hpp"

#include <algorithm>
#include <bit>
#include <fstream>

namespace dc {

using nlohmann::json;

bool operator<(const Key& a, const Key& b) {
    if (a.w != b.w) return a.w < b.w;
    if (a.slots == b.slots) return false;
    // Lexicographic on the sorted slot lists: the lowest differing slot decides, a proper prefix sorts first.
    std::uint32_t diff = a.slots ^ b.slots;
    std::uint32_t low = diff & (~diff + 1);
    std::uint32_t from_low = ~(low - 1);
    if (a.slots & low) return (b.slots & from_low) != 0;
    return (a.slots & from_low) == 0;
}

std::string to_string(const Bidegree& b) { return "{" + std::to_string(b.p) + "," + std::to_string(b.q) + "}"; }

namespace {

int popcount(std::uint32_t x) { return std::popcount(x); }

// Sign of moving the slots of b past those of a: number of pairs (i in a, j in b) with i > j.
int merge_sign(std::uint32_t a, std::uint32_t b) {
    int inversions = 0;
    while (b) {
        std::uint32_t low = b & (~b + 1);
        inversions += popcount(a & ~((low << 1) - 1));
        b ^= low;
    }
    return inversions % 2 ? -1 : 1;
}

std::vector<int> wsum(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out(a);
    for (size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

std::vector<int> read_weight(const json& j, int r, const std::string& where) {
    if (j.is_null()) return std::vector<int>(r, 0);
    auto w = j.get<std::vector<int>>();
    if (static_cast<int>(w.size()) != r) throw ParseError(where + ": weight has wrong length");
    return w;
}

std::string scalar_text(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long>());
    if (j.is_object()) {
        GQ z(parse_rational(scalar_text(j.at("re"))), parse_rational(scalar_text(j.value("im", json("0")))));
        return to_string(z);
    }
    throw ParseError("scalar must be a string, integer or {re, im} object");
}

}  // namespace

GQ json_scalar(const json& j) { return parse_gq(scalar_text(j)); }

Presentation Presentation::from_json(const json& j) {
    Presentation P;
    try {
        P.name = j.value("name", std::string("unnamed"));
        P.n = j.at("dimension").get<int>();
        P.r = j.value("weights_rank", 0);
        if (P.n < 1 || P.n > 15) throw ParseError("dimension must lie in 1..15");

        struct Gen {
            std::string name, conj;
            int p, q;
            std::vector<int> w;
            Rational norm;
        };
        std::vector<Gen> gens;
        for (auto& g : j.at("generators")) {
            auto bd = g.at("bidegree").get<std::vector<int>>();
            if (bd.size() != 2 || bd[0] + bd[1] != 1 || bd[0] < 0 || bd[1] < 0)
                throw ParseError("generator " + g.at("name").get<std::string>() + ": bidegree must be [1,0] or [0,1]");
            gens.push_back({g.at("name").get<std::string>(), g.at("conjugate").get<std::string>(), bd[0], bd[1],
                            read_weight(g.value("weight", json()), P.r, "generator"),
                            parse_rational(scalar_text(g.value("norm", json("1"))))});
            if (sgn(gens.back().norm) <= 0) throw ParseError("generator " + gens.back().name + ": norm must be positive");
        }
        auto find = [&](const std::string& nm) -> const Gen& {
            for (auto& g : gens)
                if (g.name == nm) return g;
            throw ParseError("unknown generator '" + nm + "'");
        };
        std::vector<const Gen*> holo;
        for (auto& g : gens)
            if (g.p == 1) holo.push_back(&g);
        if (static_cast<int>(holo.size()) != P.n || static_cast<int>(gens.size()) != 2 * P.n)
            throw ParseError("expected " + std::to_string(P.n) + " generators of each bidegree");
        for (auto* g : holo) P.gen_names.push_back(g->name);
        for (auto* g : holo) {
            const Gen& c = find(g->conj);
            if (c.q != 1 || c.conj != g->name)
                throw ParseError("generator " + g->name + ": conjugate pairing is not symmetric");
            P.gen_names.push_back(c.name);
        }
        for (auto& nm : P.gen_names) {
            P.gen_weight.push_back(find(nm).w);
            P.gen_norm.push_back(find(nm).norm);
        }

        P.wconj.assign(P.r, std::vector<int>(P.r, 0));
        if (j.contains("weight_conjugation")) {
            auto m = j.at("weight_conjugation").get<std::vector<std::vector<int>>>();
            if (static_cast<int>(m.size()) != P.r) throw ParseError("weight_conjugation has wrong shape");
            for (auto& row : m)
                if (static_cast<int>(row.size()) != P.r) throw ParseError("weight_conjugation has wrong shape");
            P.wconj = m;
        } else {
            for (int i = 0; i < P.r; ++i) P.wconj[i][i] = 1;
        }

        auto terms = [&](const json& arr) {
            Expansion e;
            for (auto& t : arr) {
                int sign = 1;
                Key k = P.key(read_weight(t.value("weight", json()), P.r, "term"),
                              t.at("monomial").get<std::vector<std::string>>(), &sign);
                if (sign == 0) continue;
                GQ c = parse_gq(scalar_text(t.value("coeff", json("1"))));
                accumulate(e, k, sign > 0 ? c : -c);
            }
            return e;
        };

        P.char_partial.assign(P.r, {});
        P.char_dbar.assign(P.r, {});
        if (j.contains("characters")) {
            auto& ch = j.at("characters");
            if (static_cast<int>(ch.size()) != P.r) throw ParseError("need one character entry per weight coordinate");
            for (int k = 0; k < P.r; ++k) {
                P.char_partial[k] = terms(ch[k].value("partial", json::array()));
                P.char_dbar[k] = terms(ch[k].value("dbar", json::array()));
            }
        }

        P.d_partial.assign(2 * P.n, {});
        P.d_dbar.assign(2 * P.n, {});
        std::vector<bool> given(2 * P.n, false);
        for (auto& d : j.value("d", json::array())) {
            int s = P.slot_of(d.at("gen").get<std::string>());
            if (s < 0) throw ParseError("d entry for unknown generator '" + d.at("gen").get<std::string>() + "'");
            P.d_partial[s] = terms(d.value("partial", json::array()));
            P.d_dbar[s] = terms(d.value("dbar", json::array()));
            given[s] = true;
        }
        // A missing conjugate entry is filled in by conjugation: d'(conj g) = conj(dbar g).
        for (int s = 0; s < 2 * P.n; ++s) {
            int c = s < P.n ? s + P.n : s - P.n;
            if (given[s] || !given[c]) continue;
            P.d_partial[s] = conj_form(P, P.d_dbar[c]);
            P.d_dbar[s] = conj_form(P, P.d_partial[c]);
        }

        P.vectors = j.value("vectors", std::vector<std::string>{});
        P.contraction.assign(P.vectors.size(), std::vector<GQ>(2 * P.n, GQ(0)));
        for (auto& c : j.value("contraction", json::array())) {
            int v = P.vector_of(c.at("vector").get<std::string>());
            int s = P.slot_of(c.at("gen").get<std::string>());
            if (v < 0) throw ParseError("contraction with unknown vector '" + c.at("vector").get<std::string>() + "'");
            if (s < 0) throw ParseError("contraction with unknown generator '" + c.at("gen").get<std::string>() + "'");
            P.contraction[v][s] = parse_gq(scalar_text(c.value("scalar", json("1"))));
        }

        std::vector<Key> keys;
        const json& b = j.contains("basis") ? j.at("basis") : json("exterior");
        if (b.is_string()) {
            if (b.get<std::string>() != "exterior") throw ParseError("basis must be \"exterior\" or a list");
            for (std::uint32_t m = 0; m < (1u << (2 * P.n)); ++m) keys.push_back(Key{P.zero_weight(), m});
        } else {
            for (auto& e : b) {
                int sign = 1;
                Key k = P.key(read_weight(e.value("weight", json()), P.r, "basis"),
                              e.at("monomial").get<std::vector<std::string>>(), &sign);
                if (sign == 0) throw ParseError("basis element with a repeated generator");
                keys.push_back(k);
            }
        }
        P.set_basis(keys);
    } catch (const json::exception& e) {
        throw ParseError(std::string("presentation file: ") + e.what());
    }
    return P;
}

Presentation Presentation::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return from_json(j);
}

int Presentation::slot_of(const std::string& gen) const {
    for (int s = 0; s < static_cast<int>(gen_names.size()); ++s)
        if (gen_names[s] == gen) return s;
    return -1;
}

int Presentation::vector_of(const std::string& vec) const {
    for (int v = 0; v < static_cast<int>(vectors.size()); ++v)
        if (vectors[v] == vec) return v;
    return -1;
}

Bidegree Presentation::bidegree(const Key& k) const {
    std::uint32_t holo = (1u << n) - 1;
    int p = popcount(k.slots & holo);
    return {p, popcount(k.slots) - p};
}

Key Presentation::key(std::vector<int> w, const std::vector<std::string>& gens, int* sign) const {
    Key k{std::move(w), 0};
    int s = 1;
    for (auto& g : gens) {
        int slot = slot_of(g);
        if (slot < 0) throw ParseError("unknown generator '" + g + "'");
        std::uint32_t bit = 1u << slot;
        if (k.slots & bit) {
            s = 0;
            break;
        }
        if (popcount(k.slots & ~((bit << 1) - 1)) % 2) s = -s;
        k.slots |= bit;
    }
    if (sign) *sign = s;
    return k;
}

std::string Presentation::key_name(const Key& k) const {
    std::string out;
    bool weighted = std::any_of(k.w.begin(), k.w.end(), [](int x) { return x != 0; });
    if (weighted) {
        out = "e[";
        for (size_t i = 0; i < k.w.size(); ++i) out += (i ? "," : "") + std::to_string(k.w[i]);
        out += "]";
    }
    std::string mono;
    for (int s = 0; s < 2 * n; ++s)
        if (k.slots & (1u << s)) mono += (mono.empty() ? "" : "^") + gen_names[s];
    if (mono.empty()) return weighted ? out : "1";
    return weighted ? out + "*" + mono : mono;
}

std::vector<int> Presentation::total_weight(const Key& k) const {
    std::vector<int> w = k.w;
    for (int s = 0; s < 2 * n; ++s)
        if (k.slots & (1u << s)) w = wsum(w, gen_weight[s]);
    return w;
}

const std::vector<Key>& Presentation::basis(int p, int q) const {
    static const std::vector<Key> empty;
    auto it = basis_.find({p, q});
    return it == basis_.end() ? empty : it->second;
}

int Presentation::index(int p, int q, const Key& k) const {
    auto it = index_.find({p, q});
    if (it == index_.end()) return -1;
    auto jt = it->second.find(k);
    return jt == it->second.end() ? -1 : jt->second;
}

Rational Presentation::norm(const Key& k) const {
    Rational out(1);
    for (int s = 0; s < 2 * n; ++s)
        if (k.slots & (1u << s)) out *= gen_norm[s];
    return out;
}

int Presentation::total_dim() const {
    int t = 0;
    for (auto& [b, v] : basis_) t += static_cast<int>(v.size());
    return t;
}

void Presentation::set_basis(const std::vector<Key>& keys) {
    basis_.clear();
    index_.clear();
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) basis_[{p, q}];
    for (auto& k : keys) basis_[bidegree(k)].push_back(k);
    for (auto& [b, v] : basis_) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        for (int i = 0; i < static_cast<int>(v.size()); ++i) index_[b][v[i]] = i;
    }
}

std::pair<Key, int> Presentation::wedge(const Key& a, const Key& b) {
    if (a.slots & b.slots) return {Key{}, 0};
    return {Key{wsum(a.w, b.w), a.slots | b.slots}, merge_sign(a.slots, b.slots)};
}

Expansion Presentation::derivative(const Key& k, bool holo) const {
    Expansion out;
    const auto& chars = holo ? char_partial : char_dbar;
    const auto& images = holo ? d_partial : d_dbar;
    Key bare{k.w, k.slots};
    for (int c = 0; c < r; ++c) {
        if (k.w[c] == 0) continue;
        for (auto& [ck, cc] : chars[c]) {
            auto [m, s] = wedge(ck, bare);
            if (s) accumulate(out, m, GQ(cc * GQ(long(s) * k.w[c])));
        }
    }
    // Graded Leibniz over the slots in increasing order.
    int position = 0;
    for (int s = 0; s < 2 * n; ++s) {
        std::uint32_t bit = 1u << s;
        if (!(k.slots & bit)) continue;
        Key before{zero_weight(), k.slots & (bit - 1)};
        Key after{k.w, k.slots & ~((bit << 1) - 1)};
        for (auto& [ik, ic] : images[s]) {
            auto [m1, s1] = wedge(before, ik);
            if (!s1) continue;
            auto [m2, s2] = wedge(m1, after);
            if (!s2) continue;
            long sign = long(s1) * s2 * (position % 2 ? -1 : 1);
            accumulate(out, m2, GQ(ic * GQ(sign)));
        }
        ++position;
    }
    return out;
}

Expansion Presentation::partial(const Key& k) const { return derivative(k, true); }
Expansion Presentation::dbar(const Key& k) const { return derivative(k, false); }

Expansion Presentation::contract(int vec, const Key& k) const {
    Expansion out;
    if (vec < 0 || vec >= static_cast<int>(vectors.size())) throw Error("unknown vector index");
    int position = 0;
    for (int s = 0; s < 2 * n; ++s) {
        std::uint32_t bit = 1u << s;
        if (!(k.slots & bit)) continue;
        const GQ& c = contraction[vec][s];
        if (!c.is_zero()) accumulate(out, Key{k.w, k.slots & ~bit}, position % 2 ? -c : c);
        ++position;
    }
    return out;
}

std::pair<Key, int> Presentation::conj(const Key& k) const {
    std::vector<int> w(r, 0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) w[i] += wconj[i][j] * k.w[j];
    // Conjugation maps slot s to s +- n; holomorphic slots (listed first) become the trailing block.
    std::uint32_t holo = k.slots & ((1u << n) - 1);
    std::uint32_t anti = k.slots >> n;
    std::uint32_t image = (holo << n) | anti;
    // In original order the image reads (conj of holo slots) then (conj of anti slots) = (high block, low block).
    int sign = merge_sign(holo << n, anti);
    return {Key{w, image}, sign};
}

GQ Presentation::integral(const Expansion& top) const {
    // vol = i^n (-1)^{n(n-1)/2} g^{1..n 1bar..nbar} / sqrt(norm); the integral of vol is 1.
    GQ factor(1);
    for (int i = 0; i < n; ++i) factor *= I_UNIT;
    if ((n * (n - 1) / 2) % 2) factor = -factor;
    std::uint32_t full = (2 * n == 32) ? ~0u : ((1u << (2 * n)) - 1);
    Rational nrm(1);
    for (auto& x : gen_norm) nrm *= x;
    mpz_class num = nrm.get_num(), den = nrm.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        throw Error("volume normalization needs a rational square root of the top norm");
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational root(rn, rd);
    root.canonicalize();
    GQ total(0);
    std::vector<int> zw = zero_weight();
    for (auto& [k, c] : top)
        if (k.slots == full && total_weight(k) == zw) total += c;
    return total * GQ(root) / factor;
}

ValidationReport validate(const Presentation& P) {
    ValidationReport rep;
    const int n = P.n;
    auto name = [&](int s) { return P.gen_names[s]; };

    for (int s = 0; s < 2 * n; ++s) {
        Bidegree g = s < n ? Bidegree{1, 0} : Bidegree{0, 1};
        for (auto& [k, c] : P.d_partial[s])
            if (!(P.bidegree(k) == Bidegree{g.p + 1, g.q})) {
                rep.fail("d' of generator " + name(s) + " has a term " + P.key_name(k) + " of wrong bidegree");
                break;
            }
        for (auto& [k, c] : P.d_dbar[s])
            if (!(P.bidegree(k) == Bidegree{g.p, g.q + 1})) {
                rep.fail("dbar of generator " + name(s) + " has a term " + P.key_name(k) + " of wrong bidegree");
                break;
            }
        if (s >= n)
            for (size_t v = 0; v < P.vectors.size(); ++v)
                if (!P.contraction[v][s].is_zero())
                    rep.fail("vector " + P.vectors[v] + " contracts nontrivially with the (0,1) generator " + name(s));
        std::vector<int> expect(P.r, 0);
        const auto& w = P.gen_weight[s];
        for (int i = 0; i < P.r; ++i)
            for (int j = 0; j < P.r; ++j) expect[i] += P.wconj[i][j] * w[j];
        int c = s < n ? s + n : s - n;
        if (P.gen_weight[c] != expect) rep.fail("weight of " + name(c) + " is not the conjugate weight of " + name(s));
    }
    for (int c = 0; c < P.r; ++c) {
        for (auto& [k, v] : P.char_partial[c])
            if (!(P.bidegree(k) == Bidegree{1, 0})) rep.fail("character " + std::to_string(c) + ": d' image is not a (1,0)-form");
        for (auto& [k, v] : P.char_dbar[c])
            if (!(P.bidegree(k) == Bidegree{0, 1})) rep.fail("character " + std::to_string(c) + ": dbar image is not a (0,1)-form");
    }
    if (!rep.ok) return rep;

    auto D1 = [&](const Expansion& x) { return apply_linear(x, [&](const Key& k) { return P.partial(k); }); };
    auto D2 = [&](const Expansion& x) { return apply_linear(x, [&](const Key& k) { return P.dbar(k); }); };
    auto check_key = [&](const Key& k, bool closure) {
        Expansion x{{k, GQ(1)}};
        Expansion a = D1(x), b = D2(x);
        std::string nm = P.key_name(k);
        if (!D1(a).empty()) return rep.fail("d'^2 != 0 on " + nm), false;
        if (!D2(b).empty()) return rep.fail("dbar^2 != 0 on " + nm), false;
        Expansion anti = D1(b);
        for (auto& [kk, cc] : D2(a)) accumulate(anti, kk, cc);
        if (!anti.empty()) return rep.fail("d'dbar + dbar d' != 0 on " + nm), false;
        Expansion lhs = conj_form(P, D1(x)), rhs = D2(conj_form(P, x));
        for (auto& [kk, cc] : rhs) accumulate(lhs, kk, GQ(-cc));
        if (!lhs.empty()) return rep.fail("conj d' != dbar conj on " + nm), false;
        if (!closure) return true;
        auto inside = [&](const Expansion& e, const char* what) {
            for (auto& [kk, cc] : e) {
                Bidegree b2 = P.bidegree(kk);
                if (P.index(b2.p, b2.q, kk) < 0) {
                    rep.fail(std::string(what) + " of " + nm + " leaves the presented basis (term " + P.key_name(kk) + ")");
                    return false;
                }
            }
            return true;
        };
        if (!inside(a, "d'") || !inside(b, "dbar") || !inside(conj_form(P, x), "conjugate")) return false;
        return true;
    };
    for (int s = 0; s < 2 * n; ++s)
        if (!check_key(Key{P.zero_weight(), 1u << s}, false)) return rep;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
            for (auto& k : P.basis(p, q))
                if (!check_key(k, true)) return rep;

    // The wedge pairing A^{p,q} x A^{n-p,n-q} -> C must be nondegenerate for the star operator.
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            const auto& a = P.basis(p, q);
            const auto& c = P.basis(n - p, n - q);
            if (a.size() != c.size()) {
                rep.fail("A^" + to_string(Bidegree{p, q}) + " and A^" + to_string(Bidegree{n - p, n - q}) +
                         " differ in dimension; no star operator");
                return rep;
            }
            Mat m(static_cast<int>(a.size()), static_cast<int>(c.size()));
            for (int i = 0; i < m.rows; ++i)
                for (int k = 0; k < m.cols; ++k) {
                    auto [w, s] = Presentation::wedge(a[i], c[k]);
                    if (s) m(i, k) = P.integral(Expansion{{w, GQ(long(s))}});
                }
            if (rank(m) != m.rows) {
                rep.fail("wedge pairing on A^" + to_string(Bidegree{p, q}) + " is degenerate");
                return rep;
            }
        }
    rep.notes.push_back("total dimension " + std::to_string(P.total_dim()));
    return rep;
}

}  // namespace dc
