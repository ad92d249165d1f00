#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "dc/linalg.hpp"

namespace dc {

// A weighted wedge monomial: character exponent vector w and a set of generator slots.
// Slots 0..n-1 are the (1,0) generators, n..2n-1 their conjugates in the same order.
struct Key {
    std::vector<int> w;
    std::uint32_t slots = 0;

    friend bool operator==(const Key& a, const Key& b) { return a.slots == b.slots && a.w == b.w; }
    friend bool operator!=(const Key& a, const Key& b) { return !(a == b); }
    friend bool operator<(const Key& a, const Key& b);
};

template <class S>
using Form = std::map<Key, S>;
using Expansion = Form<GQ>;

template <class S>
void accumulate(Form<S>& f, const Key& k, const S& c) {
    if (is_zero(c)) return;
    auto [it, fresh] = f.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (is_zero(it->second)) f.erase(it);
    }
}

struct Bidegree {
    int p = 0, q = 0;
    friend bool operator<(const Bidegree& a, const Bidegree& b) { return a.p != b.p ? a.p < b.p : a.q < b.q; }
    friend bool operator==(const Bidegree& a, const Bidegree& b) { return a.p == b.p && a.q == b.q; }
};
std::string to_string(const Bidegree& b);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    void fail(const std::string& m) {
        ok = false;
        failures.push_back(m);
    }
};

class Presentation {
public:
    static Presentation from_json(const nlohmann::json& j);
    static Presentation load(const std::string& path);

    std::string name;
    int n = 0;
    int r = 0;
    std::vector<std::string> gen_names;   // by slot
    std::vector<std::vector<int>> gen_weight;
    std::vector<Rational> gen_norm;
    std::vector<std::vector<int>> wconj;  // r x r
    std::vector<Expansion> char_partial, char_dbar;
    std::vector<Expansion> d_partial, d_dbar;  // by slot
    std::vector<std::string> vectors;
    std::vector<std::vector<GQ>> contraction;  // [vector][slot]

    int slot_of(const std::string& gen) const;
    int vector_of(const std::string& vec) const;
    Bidegree bidegree(const Key& k) const;
    Key key(std::vector<int> w, const std::vector<std::string>& gens, int* sign = nullptr) const;
    std::string key_name(const Key& k) const;
    std::vector<int> zero_weight() const { return std::vector<int>(r, 0); }
    std::vector<int> total_weight(const Key& k) const;

    const std::vector<Key>& basis(int p, int q) const;
    int dim(int p, int q) const { return static_cast<int>(basis(p, q).size()); }
    int index(int p, int q, const Key& k) const;  // -1 if absent
    Rational norm(const Key& k) const;
    int total_dim() const;

    Expansion partial(const Key& k) const;
    Expansion dbar(const Key& k) const;
    Expansion contract(int vec, const Key& k) const;
    std::pair<Key, int> conj(const Key& k) const;
    static std::pair<Key, int> wedge(const Key& a, const Key& b);
    GQ integral(const Expansion& top) const;

    void set_basis(const std::vector<Key>& keys);

private:
    Expansion derivative(const Key& k, bool holo) const;
    std::map<Bidegree, std::vector<Key>> basis_;
    std::map<Bidegree, std::map<Key, int>> index_;
};

// Linear extension of a monomial operator to forms over any scalar ring.
template <class S, class Op>
Form<S> apply_linear(const Form<S>& x, Op&& op) {
    Form<S> out;
    for (auto& [k, c] : x)
        for (auto& [k2, c2] : op(k)) accumulate(out, k2, S(c * c2));
    return out;
}

template <class S>
Form<S> wedge(const Form<S>& x, const Expansion& y) {
    Form<S> out;
    for (auto& [k1, c1] : x)
        for (auto& [k2, c2] : y) {
            auto [k, s] = Presentation::wedge(k1, k2);
            if (s) accumulate(out, k, S(c1 * (s > 0 ? c2 : -c2)));
        }
    return out;
}

template <class S>
Form<S> conj_form(const Presentation& P, const Form<S>& x) {
    Form<S> out;
    for (auto& [k, c] : x) {
        auto [k2, s] = P.conj(k);
        accumulate(out, k2, S(s > 0 ? conj(c) : -conj(c)));
    }
    return out;
}

// Coordinates in the presented basis of A^{p,q}; a term outside it is a closure failure.
template <class S>
std::vector<S> coords(const Presentation& P, const Form<S>& x, int p, int q) {
    std::vector<S> v(P.dim(p, q));
    for (auto& [k, c] : x) {
        int i = P.index(p, q, k);
        if (i < 0)
            throw ValidationError("result " + P.key_name(k) + " lies outside the presented basis of A^" +
                                  to_string(Bidegree{p, q}));
        v[i] = c;
    }
    return v;
}

template <class S>
Form<S> form_of(const Presentation& P, const std::vector<S>& v, int p, int q) {
    Form<S> out;
    const auto& b = P.basis(p, q);
    for (size_t i = 0; i < v.size(); ++i)
        if (!is_zero(v[i])) out[b[i]] = v[i];
    return out;
}

// Matrix of a linear operator A^{src} -> A^{dst}, columns indexed by the source basis.
template <class S>
Matrix<S> matrix_of(const Presentation& P, const std::function<Form<S>(const Key&)>& op, Bidegree src,
                    Bidegree dst) {
    Matrix<S> m(P.dim(dst.p, dst.q), P.dim(src.p, src.q));
    const auto& b = P.basis(src.p, src.q);
    for (int j = 0; j < m.cols; ++j) {
        Form<S> y = op(b[j]);
        if (m.rows == 0) {
            if (!y.empty())
                throw ValidationError("result of " + P.key_name(b[j]) + " lies outside the presented complex");
            continue;
        }
        m.set_col(j, coords(P, y, dst.p, dst.q));
    }
    return m;
}

ValidationReport validate(const Presentation& P);

// Scalar written as "a/b", an integer, or {re, im}.
GQ json_scalar(const nlohmann::json& j);

}  // namespace dc
