#include "ihf/ring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace ihf {

std::string Mode::name() const {
    switch (kind) {
        case RingKind::U: return "U";
        case RingKind::UQ: return "UQ";
        case RingKind::UV:
            return components == 1 ? "UV" : "UV:" + std::to_string(components);
    }
    return "?";
}

Mode Mode::parse(std::string_view s) {
    if (s == "U") return kModeU;
    if (s == "UQ") return kModeUQ;
    if (s == "UV") return kModeUV;
    if (s.starts_with("UV:")) {
        int l = 0;
        auto sub = s.substr(3);
        auto [p, ec] = std::from_chars(sub.data(), sub.data() + sub.size(), l);
        if (ec == std::errc{} && p == sub.data() + sub.size() && l >= 1 && l <= kMaxComponents)
            return mode_link(l);
    }
    throw RingError("unknown ring mode '" + std::string(s) + "'");
}

bool Monomial::is_one() const {
    if (q) return false;
    for (auto e : exp)
        if (e) return false;
    return true;
}

bool multiply(const Monomial& a, const Monomial& b, Monomial& out) {
    if (a.q + b.q > 1) return false;
    out.q = static_cast<std::uint8_t>(a.q + b.q);
    for (int i = 0; i < Monomial::kMaxVars; ++i) out.exp[i] = a.exp[i] + b.exp[i];
    return true;
}

Monomial conjugate(Mode mode, const Monomial& m) {
    if (!mode.two_variable()) return m;
    Monomial r = m;
    for (int i = 0; i < mode.components; ++i) std::swap(r.exp[2 * i], r.exp[2 * i + 1]);
    return r;
}

Coefficient Coefficient::one(Mode mode) {
    Coefficient c(mode);
    c.terms_.push_back(Monomial{});
    return c;
}

Coefficient Coefficient::of(Mode mode, const Monomial& m) {
    Coefficient c(mode);
    c.terms_.push_back(m);
    return c;
}

void Coefficient::toggle(const Monomial& m) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m);
    if (it != terms_.end() && *it == m)
        terms_.erase(it);
    else
        terms_.insert(it, m);
}

static void check_same(Mode a, Mode b) {
    if (!(a == b)) throw RingError("ring mode mismatch: " + a.name() + " vs " + b.name());
}

Coefficient& Coefficient::operator+=(const Coefficient& o) {
    check_same(mode_, o.mode_);
    if (o.terms_.empty()) return *this;
    std::vector<Monomial> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
                                  std::back_inserter(out));
    terms_ = std::move(out);
    return *this;
}

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    check_same(a.mode_, b.mode_);
    Coefficient r(a.mode_);
    if (a.is_zero() || b.is_zero()) return r;
    std::vector<Monomial> prods;
    prods.reserve(a.terms_.size() * b.terms_.size());
    Monomial p;
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_)
            if (multiply(x, y, p)) prods.push_back(p);
    std::sort(prods.begin(), prods.end());
    for (std::size_t i = 0; i < prods.size();) {
        std::size_t j = i;
        while (j < prods.size() && prods[j] == prods[i]) ++j;
        if ((j - i) % 2) r.terms_.push_back(prods[i]);
        i = j;
    }
    return r;
}

Coefficient coeff_add(const Coefficient& a, const Coefficient& b) { return a + b; }
Coefficient coeff_mul(const Coefficient& a, const Coefficient& b) { return a * b; }

Coefficient conjugate(const Coefficient& c) {
    if (!c.mode().two_variable()) return c;
    Coefficient r(c.mode());
    for (const auto& m : c.terms()) r.toggle(conjugate(c.mode(), m));
    return r;
}

Coefficient derivative(const Coefficient& c, int var) {
    if (var < 0 || var >= c.mode().num_vars()) throw RingError("derivative: variable out of range");
    Coefficient r(c.mode());
    for (auto m : c.terms()) {
        if (m.exp[var] % 2 == 0) continue;
        m.exp[var] -= 1;
        r.toggle(m);
    }
    return r;
}

std::vector<CollapsedTerm> collapse_uv_graded(const Coefficient& c) {
    if (c.mode() != kModeUV) throw RingError("collapse_uv: expects a single-component UV coefficient");
    std::vector<CollapsedTerm> out;
    for (const auto& m : c.terms()) {
        auto lo = std::min(m.exp[0], m.exp[1]);
        out.push_back({lo, m.exp[0] - lo, m.exp[1] - lo});
    }
    return out;
}

Coefficient collapse_uv(const Coefficient& c) {
    Coefficient r(kModeU);
    for (const auto& t : collapse_uv_graded(c)) {
        if (t.extra_u || t.extra_v)
            throw RingError("collapse_uv: off-diagonal term " + to_string(c.mode(), Monomial::uv(t.u_power + t.extra_u, t.u_power + t.extra_v)));
        r.toggle(Monomial::u_power(t.u_power));
    }
    return r;
}

namespace {

std::string var_name(Mode mode, int var) {
    if (!mode.two_variable()) return "U";
    std::string base = var % 2 == 0 ? "u" : "v";
    if (mode.components == 1) return base;
    return base + std::to_string(var / 2 + 1);
}

}  // namespace

std::string to_string(Mode mode, const Monomial& m) {
    std::string out;
    auto push = [&](const std::string& f) {
        if (!out.empty()) out += '*';
        out += f;
    };
    for (int v = 0; v < mode.num_vars(); ++v) {
        if (!m.exp[v]) continue;
        auto n = var_name(mode, v);
        push(m.exp[v] == 1 ? n : n + "^" + std::to_string(m.exp[v]));
    }
    if (m.q) push("Q");
    return out.empty() ? "1" : out;
}

std::string to_string(const Coefficient& c) {
    if (c.is_zero()) return "0";
    std::string out;
    for (const auto& m : c.terms()) {
        if (!out.empty()) out += " + ";
        out += to_string(c.mode(), m);
    }
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    return out;
}

}  // namespace

Coefficient parse_coefficient(std::string_view text, Mode mode) {
    auto fail = [&](const std::string& why) -> RingError {
        return RingError("cannot parse coefficient '" + std::string(text) + "': " + why);
    };
    Coefficient out(mode);
    auto body = trim(text);
    if (body == "0") return out;
    if (body.empty()) throw fail("empty");
    for (auto term : split(body, '+')) {
        if (term.empty()) throw fail("empty term");
        Monomial m;
        for (auto factor : split(term, '*')) {
            if (factor.empty()) throw fail("empty factor");
            if (factor == "1") continue;
            std::string_view name = factor;
            std::uint32_t power = 1;
            if (auto caret = factor.find('^'); caret != std::string_view::npos) {
                name = trim(factor.substr(0, caret));
                auto digits = trim(factor.substr(caret + 1));
                auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), power);
                if (ec != std::errc{} || p != digits.data() + digits.size()) throw fail("bad exponent");
            }
            if (name == "Q") {
                if (!mode.has_q()) throw fail("Q not in ring " + mode.name());
                if (m.q + power > 1) {
                    m.q = 2;  // dies
                } else {
                    m.q = static_cast<std::uint8_t>(m.q + power);
                }
                continue;
            }
            int var = -1;
            for (int v = 0; v < mode.num_vars(); ++v)
                if (var_name(mode, v) == name) var = v;
            if (var < 0) throw fail("unknown variable '" + std::string(name) + "'");
            m.exp[var] += power;
        }
        if (m.q > 1) continue;
        out.toggle(m);
    }
    return out;
}

}  // namespace ihf
