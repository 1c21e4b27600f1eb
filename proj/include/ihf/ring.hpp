#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ihf {

// F[U], F[U,Q]/(Q^2), or F[U_1,V_1,...,U_l,V_l]; always over F_2.
enum class RingKind : std::uint8_t { U, UQ, UV };

inline constexpr int kMaxComponents = 4;

struct Mode {
    RingKind kind = RingKind::U;
    int components = 1;  // only meaningful for UV

    bool operator==(const Mode&) const = default;
    bool two_variable() const { return kind == RingKind::UV; }
    bool has_q() const { return kind == RingKind::UQ; }
    int num_vars() const { return kind == RingKind::UV ? 2 * components : 1; }
    std::string name() const;
    static Mode parse(std::string_view s);
};

inline constexpr Mode kModeU{RingKind::U, 1};
inline constexpr Mode kModeUQ{RingKind::UQ, 1};
inline constexpr Mode kModeUV{RingKind::UV, 1};
inline Mode mode_link(int components) { return Mode{RingKind::UV, components}; }

class RingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Exponent layout: U modes use exp[0]; UV uses exp[2i] for U_i and exp[2i+1] for V_i.
struct Monomial {
    static constexpr int kMaxVars = 2 * kMaxComponents;
    std::uint8_t q = 0;
    std::array<std::uint32_t, kMaxVars> exp{};

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;

    std::uint32_t u_exp() const { return exp[0]; }
    std::uint32_t v_exp() const { return exp[1]; }
    bool is_one() const;

    static Monomial u_power(std::uint32_t a) {
        Monomial m;
        m.exp[0] = a;
        return m;
    }
    static Monomial uv(std::uint32_t a, std::uint32_t b) {
        Monomial m;
        m.exp[0] = a;
        m.exp[1] = b;
        return m;
    }
    static Monomial q_power(std::uint32_t a) {
        Monomial m = u_power(a);
        m.q = 1;
        return m;
    }
};

// Product; returns false when the result dies (Q^2 = 0).
bool multiply(const Monomial& a, const Monomial& b, Monomial& out);
Monomial conjugate(Mode mode, const Monomial& m);

class Coefficient {
  public:
    Coefficient() = default;
    explicit Coefficient(Mode mode) : mode_(mode) {}

    static Coefficient one(Mode mode);
    static Coefficient of(Mode mode, const Monomial& m);

    Mode mode() const { return mode_; }
    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }

    void toggle(const Monomial& m);
    Coefficient& operator+=(const Coefficient& o);
    friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
    friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
    bool operator==(const Coefficient&) const = default;

  private:
    Mode mode_{};
    std::vector<Monomial> terms_;  // sorted, distinct
};

Coefficient coeff_add(const Coefficient& a, const Coefficient& b);
Coefficient coeff_mul(const Coefficient& a, const Coefficient& b);
Coefficient conjugate(const Coefficient& c);
// d/d(var) over F_2: drops terms with even exponent.
Coefficient derivative(const Coefficient& c, int var);

// U_i, V_i -> U.  Strict form rejects off-diagonal terms U^a V^b with a != b.
Coefficient collapse_uv(const Coefficient& c);

struct CollapsedTerm {
    std::uint32_t u_power;   // U^min(a,b)
    std::uint32_t extra_u;   // residual U^(a-min)
    std::uint32_t extra_v;   // residual V^(b-min)
    bool operator==(const CollapsedTerm&) const = default;
};
std::vector<CollapsedTerm> collapse_uv_graded(const Coefficient& c);

std::string to_string(Mode mode, const Monomial& m);
std::string to_string(const Coefficient& c);
Coefficient parse_coefficient(std::string_view text, Mode mode);

}  // namespace ihf
