#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nflin {

/// Exponent vector mu = (mu_1, ..., mu_n), all entries >= 0.
class Multiindex {
public:
    Multiindex() = default;
    explicit Multiindex(std::size_t n) : exps_(n, 0) {}
    Multiindex(std::initializer_list<int> exps) : Multiindex(std::vector<int>(exps)) {}
    explicit Multiindex(std::vector<int> exps) : exps_(std::move(exps))
    {
        if (std::any_of(exps_.begin(), exps_.end(), [](int e) { return e < 0; }))
            throw std::invalid_argument("negative exponent in multiindex");
    }

    /// nu(i): a single 1 in slot i (0-based).
    static Multiindex unit(std::size_t n, std::size_t i)
    {
        Multiindex m(n);
        m.exps_.at(i) = 1;
        return m;
    }

    std::size_t size() const noexcept { return exps_.size(); }
    int operator[](std::size_t i) const { return exps_[i]; }
    const std::vector<int>& exponents() const noexcept { return exps_; }

    int degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }
    bool is_zero() const
    {
        return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
    }

    void set(std::size_t i, int e)
    {
        if (e < 0)
            throw std::invalid_argument("negative exponent in multiindex");
        exps_.at(i) = e;
    }

    Multiindex operator+(const Multiindex& o) const
    {
        Multiindex r(*this);
        for (std::size_t i = 0; i < size(); ++i)
            r.exps_[i] += o.exps_.at(i);
        return r;
    }

    /// this - o, or nullopt when some entry would go negative.
    std::optional<Multiindex> minus(const Multiindex& o) const
    {
        Multiindex r(*this);
        for (std::size_t i = 0; i < size(); ++i) {
            r.exps_[i] -= o.exps_.at(i);
            if (r.exps_[i] < 0)
                return std::nullopt;
        }
        return r;
    }

    friend bool operator==(const Multiindex&, const Multiindex&) = default;

    /// Plain lexicographic order on the exponent vector.
    friend std::strong_ordering operator<=>(const Multiindex& a, const Multiindex& b)
    {
        return a.exps_ <=> b.exps_;
    }

    /// "(2,0,1)"
    std::string str() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            if (i)
                s += ",";
            s += std::to_string(exps_[i]);
        }
        return s + ")";
    }

private:
    std::vector<int> exps_;
};

/// Graded lexicographic, descending: higher degree first, then larger exponent in the
/// earliest slot first. Iteration order of every term map in the library.
struct GrlexDescending {
    bool operator()(const Multiindex& a, const Multiindex& b) const
    {
        int da = a.degree(), db = b.degree();
        if (da != db)
            return da > db;
        return a > b;
    }
};

/// Calls fn(mu) for every multiindex of length n and total degree d, in descending lex order.
template <typename Fn>
void for_each_composition(std::size_t n, int d, Fn&& fn)
{
    if (n == 0) {
        if (d == 0)
            fn(Multiindex());
        return;
    }
    std::vector<int> e(n, 0);
    auto rec = [&](auto& self, std::size_t slot, int remaining) -> void {
        if (slot + 1 == n) {
            e[slot] = remaining;
            fn(Multiindex(e));
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            e[slot] = k;
            self(self, slot + 1, remaining - k);
        }
    };
    rec(rec, 0, d);
}

} // namespace nflin
