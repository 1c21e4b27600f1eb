#include "ihf/grading.hpp"

#include <stdexcept>

namespace ihf {

Grading Grading::integral(std::initializer_list<std::int64_t> values) {
    Grading g;
    for (auto v : values) g.twice.push_back(2 * v);
    return g;
}

Grading Grading::zero(Mode mode) { return Grading(std::vector<std::int64_t>(grading_dim(mode), 0)); }

Grading& Grading::operator+=(const Grading& o) {
    if (o.size() != size()) throw std::invalid_argument("grading dimension mismatch");
    for (std::size_t i = 0; i < size(); ++i) twice[i] += o.twice[i];
    return *this;
}

Grading& Grading::operator-=(const Grading& o) {
    if (o.size() != size()) throw std::invalid_argument("grading dimension mismatch");
    for (std::size_t i = 0; i < size(); ++i) twice[i] -= o.twice[i];
    return *this;
}

Grading Grading::operator-() const {
    Grading g = *this;
    for (auto& x : g.twice) x = -x;
    return g;
}

std::string format_half(std::int64_t twice) {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    std::string s = twice < 0 ? "-" : "";
    auto a = twice < 0 ? -twice : twice;
    return s + std::to_string(a / 2) + ".5";
}

std::string Grading::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < size(); ++i) {
        if (i) s += ", ";
        s += format_half(twice[i]);
    }
    return s + ")";
}

int grading_dim(Mode mode) {
    if (!mode.two_variable()) return 1;
    return mode.components == 1 ? 2 : 2 + mode.components;
}

Grading shift_of(Mode mode, const Monomial& m) {
    Grading g = Grading::zero(mode);
    if (!mode.two_variable()) {
        g.twice[0] = -4 * static_cast<std::int64_t>(m.exp[0]) - 2 * m.q;
        return g;
    }
    for (int i = 0; i < mode.components; ++i) {
        std::int64_t a = m.exp[2 * i], b = m.exp[2 * i + 1];
        g.twice[0] -= 4 * a;
        g.twice[1] -= 4 * b;
        if (mode.components > 1) g.twice[2 + i] += 2 * (b - a);
    }
    return g;
}

Grading conj_grading(Mode mode, const Grading& g) {
    if (!mode.two_variable()) return g;
    Grading r = g;
    std::swap(r.twice[0], r.twice[1]);
    for (std::size_t i = 2; i < r.size(); ++i) r.twice[i] = -r.twice[i];
    return r;
}

Grading differential_degree(Mode mode) {
    Grading g = Grading::zero(mode);
    g.twice[0] = -2;
    if (mode.two_variable()) g.twice[1] = -2;
    return g;
}

std::int64_t alexander_twice(Mode mode, const Grading& g, int component) {
    if (!mode.two_variable()) throw std::invalid_argument("Alexander grading needs a UV mode");
    if (mode.components == 1) return (g.twice[0] - g.twice[1]) / 2;
    return g.twice[2 + component];
}

std::vector<Monomial> monomials_with_shift(Mode mode, const Grading& delta) {
    std::vector<Monomial> out;
    if (static_cast<int>(delta.size()) != grading_dim(mode)) return out;
    if (!mode.two_variable()) {
        // -4a - 2q = delta
        for (int q = 0; q <= (mode.has_q() ? 1 : 0); ++q) {
            auto rest = -delta.twice[0] - 2 * q;
            if (rest < 0 || rest % 4) continue;
            Monomial m = Monomial::u_power(static_cast<std::uint32_t>(rest / 4));
            m.q = static_cast<std::uint8_t>(q);
            out.push_back(m);
        }
        return out;
    }
    auto du = -delta.twice[0], dv = -delta.twice[1];
    if (du < 0 || dv < 0 || du % 4 || dv % 4) return out;
    std::int64_t total_a = du / 4, total_b = dv / 4;
    int l = mode.components;
    if (l == 1) {
        out.push_back(Monomial::uv(static_cast<std::uint32_t>(total_a), static_cast<std::uint32_t>(total_b)));
        return out;
    }
    // Split total_a among the U_i; each V_i exponent is then forced by A_i.
    std::vector<std::int64_t> a(l, 0);
    auto emit = [&]() {
        Monomial m;
        std::int64_t sb = 0;
        for (int i = 0; i < l; ++i) {
            auto twice_diff = delta.twice[2 + i];  // 2(b_i - a_i)
            if (twice_diff % 2) return;
            auto b = a[i] + twice_diff / 2;
            if (b < 0) return;
            m.exp[2 * i] = static_cast<std::uint32_t>(a[i]);
            m.exp[2 * i + 1] = static_cast<std::uint32_t>(b);
            sb += b;
        }
        if (sb == total_b) out.push_back(m);
    };
    auto rec = [&](auto&& self, int i, std::int64_t left) -> void {
        if (i == l - 1) {
            a[i] = left;
            emit();
            return;
        }
        for (std::int64_t x = 0; x <= left; ++x) {
            a[i] = x;
            self(self, i + 1, left - x);
        }
    };
    rec(rec, 0, total_a);
    return out;
}

}  // namespace ihf
