// Recursive-descent parser for the descriptor language:
//
//   lattice = summand { "+" summand } | "0" ;
//   summand = [ nat "*" ] atom ;
//   atom    = "Z" | "b(" class ")" | "c(" class ")" | "Eb(" class ")" | "Ec(" class ")"
//           | type "(" class "," class ";" nat [ "," unit ] ")" ;
//   class   = nat { ":" nat } ;
//   unit    = term { ("+" | "-") term } ;   term = nat [ "l" [ "^" nat ] ] | "l" [ "^" nat ]

#include <cctype>
#include <limits>

#include "zcp2/error.hpp"
#include "zcp2/lattice.hpp"

namespace zcp2 {

namespace {

class Parser {
public:
    Parser(std::string_view text, const ContextPtr& ctx, ParseOptions opts)
        : text_(text), ctx_(ctx), opts_(opts) {}

    LatticeDescriptor run() {
        skip_ws();
        std::vector<Summand> out;
        if (peek() == '0' && is_zero_module()) {
            ++pos_;
            expect_end();
            return LatticeDescriptor(ctx_, {});
        }
        summand(out);
        while (accept('+')) summand(out);
        expect_end();
        return LatticeDescriptor(ctx_, std::move(out));
    }

private:
    std::string_view text_;
    const ContextPtr& ctx_;
    ParseOptions opts_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }
    [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const { throw ParseError(at, msg); }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (peek() != c) return false;
        ++pos_;
        skip_ws();
        return true;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    void expect_end() {
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
    }

    bool is_zero_module() const {
        std::size_t q = pos_ + 1;
        while (q < text_.size() && std::isspace(static_cast<unsigned char>(text_[q]))) ++q;
        return q == text_.size();
    }

    std::int64_t nat() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a natural number");
        std::int64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10) fail("number too large");
            v = v * 10 + (text_[pos_++] - '0');
        }
        skip_ws();
        return v;
    }

    GroupElement group_class(const AbGroup& g, const char* which) {
        const std::size_t at = pos_;
        std::vector<std::int64_t> v{nat()};
        while (accept(':')) v.push_back(nat());
        if (v.size() == 1 && v[0] == 0) return g.zero();
        if (v.size() != g.rank())
            fail_at(at, std::string(which) + " class needs " + std::to_string(g.rank()) + " component(s)");
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] >= g.invariant_factors()[i])
                fail_at(at, std::string(which) + " class exponent " + std::to_string(v[i]) +
                                " out of range for factor " + std::to_string(g.invariant_factors()[i]));
        return GroupElement{std::move(v)};
    }

    // Coefficients indexed by degree; degree >= m is kept so strict mode can reject it.
    std::vector<std::int64_t> unit_poly() {
        std::vector<std::int64_t> coeffs;
        int sign = 1;
        do {
            skip_ws();
            std::int64_t c = 1;
            bool have_coeff = false;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                c = nat();
                have_coeff = true;
            }
            std::size_t deg = 0;
            if (peek() == 'l') {
                ++pos_;
                deg = 1;
                if (accept('^')) deg = static_cast<std::size_t>(nat());
                skip_ws();
            } else if (!have_coeff) {
                fail("expected a unit term");
            }
            if (coeffs.size() <= deg) coeffs.resize(deg + 1, 0);
            coeffs[deg] += sign * c;
            skip_ws();
            if (peek() == '+') sign = 1;
            else if (peek() == '-') sign = -1;
            else break;
            ++pos_;
        } while (true);
        return coeffs;
    }

    PolyMod make_unit(const std::vector<std::int64_t>& raw, int m, std::size_t at) {
        const int p = ctx_->p();
        bool beyond = false;
        std::vector<int> c(static_cast<std::size_t>(m), 0);
        for (std::size_t j = 0; j < raw.size(); ++j) {
            const auto v = static_cast<int>(((raw[j] % p) + p) % p);
            if (j < static_cast<std::size_t>(m)) c[j] = v;
            else if (v != 0) beyond = true;
        }
        PolyMod u(p, m, std::move(c));
        if (!u.is_unit()) fail_at(at, "unit has zero constant term");
        const UnitQuotient& q = ctx_->U(m);
        if (!opts_.lenient_units && (beyond || !q.is_canonical(u)))
            fail_at(at, "unit is not the canonical representative of its class in U_" + std::to_string(m) +
                            " (canonical: " + q.canonical(u).to_string() + ")");
        return q.canonical(u);
    }

    void summand(std::vector<Summand>& out) {
        skip_ws();
        const std::size_t at = pos_;
        std::int64_t mult = 1;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            mult = nat();
            expect('*');
            if (mult < 1) fail_at(at, "multiplicity must be positive");
        }
        Summand s = atom();
        try {
            LatticeDescriptor(ctx_, {s});
        } catch (const InvariantViolation& e) {
            fail_at(at, e.what());
        }
        for (std::int64_t i = 0; i < mult; ++i) out.push_back(s);
    }

    Summand atom() {
        skip_ws();
        const std::size_t at = pos_;
        Summand s;
        s.b = ctx_->H_p().zero();
        s.c = ctx_->H_p2().zero();
        const char c0 = peek();
        const char c1 = pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0';
        if (c0 == 'Z') {
            ++pos_;
            skip_ws();
            s.type = SummandType::Z;
            return s;
        }
        if (c0 == 'b' || c0 == 'c' || (c0 == 'E' && (c1 == 'b' || c1 == 'c'))) {
            const bool ext = c0 == 'E';
            const char which = ext ? c1 : c0;
            pos_ += ext ? 2 : 1;
            expect('(');
            if (which == 'b') {
                s.type = ext ? SummandType::ExtB : SummandType::IdealR;
                s.b = group_class(ctx_->H_p(), "R");
            } else {
                s.type = ext ? SummandType::ExtC : SummandType::IdealS;
                s.c = group_class(ctx_->H_p2(), "S");
            }
            expect(')');
            return s;
        }
        switch (c0) {
            case 'B': s.type = SummandType::B; break;
            case 'C': s.type = SummandType::C; break;
            case 'D': s.type = SummandType::D; break;
            case 'E': s.type = SummandType::E; break;
            case 'F': s.type = SummandType::F; break;
            default: fail("expected a summand (Z, b, c, Eb, Ec, B, C, D, E or F)");
        }
        ++pos_;
        expect('(');
        s.b = group_class(ctx_->H_p(), "R");
        expect(',');
        s.c = group_class(ctx_->H_p2(), "S");
        expect(';');
        const std::size_t r_at = pos_;
        const std::int64_t r = nat();
        const int p = ctx_->p();
        if (s.type == SummandType::D && p % 4 != 1)
            fail_at(at, "type D requires p = 1 mod 4 (p = " + std::to_string(p) + ")");
        const auto [lo, hi] = r_range(s.type, p);
        if (r < lo || r > hi)
            fail_at(r_at, "r = " + std::to_string(r) + " outside [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "] for type " + std::string(to_string(s.type)));
        s.r = static_cast<int>(r);
        const int m = unit_length(s.type, s.r, p);
        std::vector<std::int64_t> raw{1};
        const std::size_t u_at = pos_;
        if (accept(',')) raw = unit_poly();
        s.u = make_unit(raw, m, u_at);
        expect(')');
        return s;
    }
};

}  // namespace

LatticeDescriptor parse(std::string_view text, const ContextPtr& ctx, ParseOptions opts) {
    return Parser(text, ctx, opts).run();
}

}  // namespace zcp2
