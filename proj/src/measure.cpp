#include "hml/measure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hml/grid.hpp"
#include "hml/special.hpp"

namespace hml {

namespace {

std::string format_shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string canonical_spec(const RadialMeasure& mu) {
    if (std::holds_alternative<Lebesgue>(mu)) return "lebesgue";
    if (const auto* pw = std::get_if<PowerWeight>(&mu))
        return "powerweight:s=" + format_shortest(pw->s);
    const auto& atoms = std::get<AtomList>(mu).atoms;
    std::string out = "atoms:[";
    for (size_t i = 0; i < atoms.size(); ++i) {
        if (i) out += ',';
        out += '(' + format_shortest(atoms[i].position) + ',' + format_shortest(atoms[i].mass) + ')';
    }
    out += ']';
    return out;
}

// sum_{n > L} (n+1) r^n, the geometric tail that truncation bounds lean on.
double tail_sum(long L, double r) {
    if (r <= 0.0) return 0.0;
    double omr = 1.0 - r;
    return std::pow(r, static_cast<double>(L) + 1.0) * ((L + 2) - (L + 1) * r) / (omr * omr);
}

}  // namespace

void validate(const RadialMeasure& mu) {
    if (const auto* pw = std::get_if<PowerWeight>(&mu)) {
        if (!(pw->s > -1.0))
            throw std::domain_error("PowerWeight: requires s > -1");
    } else if (const auto* al = std::get_if<AtomList>(&mu)) {
        for (const auto& a : al->atoms) {
            if (!(a.position >= 0.0) || !(a.position < 1.0))
                throw std::domain_error("AtomList: atom position must lie in [0,1)");
            if (!(a.mass > 0.0))
                throw std::domain_error("AtomList: atom mass must be positive");
        }
    }
}

double moment(const RadialMeasure& mu, long n) {
    if (n < 0) throw std::domain_error("moment: n must be nonnegative");
    validate(mu);
    if (std::holds_alternative<Lebesgue>(mu))
        return 1.0 / (static_cast<double>(n) + 1.0);
    if (const auto* pw = std::get_if<PowerWeight>(&mu))
        return beta_moment(n, pw->s);
    const auto& atoms = std::get<AtomList>(mu).atoms;
    NeumaierSum acc;
    for (const auto& a : atoms) acc.add(a.mass * std::pow(a.position, static_cast<double>(n)));
    return acc.value();
}

MomentSequence moment_sequence(const RadialMeasure& mu, long N) {
    if (N < 0) throw std::domain_error("moment_sequence: N must be nonnegative");
    validate(mu);
    MomentSequence m;
    m.source = canonical_spec(mu);
    m.origin = mu;
    m.values.resize(static_cast<size_t>(N) + 1);
    if (std::holds_alternative<Lebesgue>(mu)) {
        for (long n = 0; n <= N; ++n)
            m.values[static_cast<size_t>(n)] = 1.0 / (static_cast<double>(n) + 1.0);
    } else if (const auto* pw = std::get_if<PowerWeight>(&mu)) {
        std::vector<double> tmp;
        beta_moment_sequence(pw->s, N, tmp);
        for (long n = 0; n <= N; ++n) m.values[static_cast<size_t>(n)] = tmp[static_cast<size_t>(n)];
    } else {
        const auto& atoms = std::get<AtomList>(mu).atoms;
        // Running powers, re-anchored so drift never exceeds ~256 ulp.
        std::vector<double> p(atoms.size(), 1.0);
        for (long n = 0; n <= N; ++n) {
            NeumaierSum acc;
            for (size_t j = 0; j < atoms.size(); ++j) {
                if (n > 0) {
                    if (n % 256 == 0)
                        p[j] = std::pow(atoms[j].position, static_cast<double>(n));
                    else
                        p[j] *= atoms[j].position;
                }
                acc.add(atoms[j].mass * p[j]);
            }
            m.values[static_cast<size_t>(n)] = acc.value();
        }
    }
    return m;
}

double tail_mass(const RadialMeasure& mu, double h) {
    if (!(h > 0.0) || !(h <= 1.0)) throw std::domain_error("tail_mass: h must lie in (0,1]");
    validate(mu);
    if (std::holds_alternative<Lebesgue>(mu)) return h;
    if (const auto* pw = std::get_if<PowerWeight>(&mu))
        return std::pow(h, pw->s + 1.0) / (pw->s + 1.0);
    const auto& atoms = std::get<AtomList>(mu).atoms;
    double s = 0.0;
    for (const auto& a : atoms)
        if (a.position > 1.0 - h) s += a.mass;
    return s;
}

double carleson_constant(const RadialMeasure& mu, int depth) {
    if (depth < 0) throw std::domain_error("carleson_constant: depth must be nonnegative");
    double best = 0.0;
    double h = 1.0;
    for (int j = 0; j <= depth; ++j, h *= 0.5) best = std::max(best, tail_mass(mu, h) / h);
    return best;
}

std::complex<double> conjugate_moment(const DiskDensityMeasure& nu, long n) {
    if (n < 0) throw std::domain_error("conjugate_moment: n must be nonnegative");
    if (static_cast<size_t>(n) >= nu.coeffs.size()) return {0.0, 0.0};
    return nu.coeffs[static_cast<size_t>(n)] / (static_cast<double>(n) + 1.0);
}

namespace {

std::complex<double> conj_moment_rule(const DiskDensityMeasure& nu, long n,
                                      const std::vector<double>& nodes,
                                      const std::vector<double>& weights, int A) {
    // Angular average of e^{-in t} f(r e^{it}) picks out indices m = n (mod A):
    //   (1/pi) int zbar^n f dA = 2 sum_i w_i sum_{m = n (A)} c_m r_i^{n+m+1}
    cplx total = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i) {
        const double r = nodes[i];
        cplx inner = 0.0;
        for (size_t m = static_cast<size_t>(n); m < nu.coeffs.size(); m += static_cast<size_t>(A))
            inner += nu.coeffs[m] * std::pow(r, static_cast<double>(n + static_cast<long>(m)) + 1.0);
        total += weights[i] * inner;
    }
    return 2.0 * total;
}

}  // namespace

QuadMoment conjugate_moment_quadrature(const DiskDensityMeasure& nu, long n,
                                       const QuadratureScheme& quad) {
    if (n < 0) throw std::domain_error("conjugate_moment_quadrature: n must be nonnegative");
    cplx full = conj_moment_rule(nu, n, quad.radial_nodes, quad.radial_weights, quad.angular);
    int halfR = std::max<int>(2, static_cast<int>(quad.radial_nodes.size()) / 2);
    int halfA = std::max(8, quad.angular / 2);
    std::vector<double> hn, hw;
    gauss_legendre_01(halfR, hn, hw);
    cplx half = conj_moment_rule(nu, n, hn, hw, halfA);
    return {full, std::abs(full - half)};
}

MomentSequence conjugate_moment_sequence(const DiskDensityMeasure& nu, long N) {
    if (N < 0) throw std::domain_error("conjugate_moment_sequence: N must be nonnegative");
    MomentSequence m;
    m.values.resize(static_cast<size_t>(N) + 1);
    for (long n = 0; n <= N; ++n) m.values[static_cast<size_t>(n)] = conjugate_moment(nu, n);
    m.complete = static_cast<size_t>(N) + 1 >= nu.coeffs.size();
    m.source = "conjugate-moments(degree " + std::to_string(static_cast<long>(nu.coeffs.size()) - 1) + ")";
    return m;
}

DiskDensityMeasure counterexample_density(int K) {
    if (K < 1 || K > 24) throw std::domain_error("counterexample_density: K must lie in 1..24");
    DiskDensityMeasure nu;
    nu.coeffs.assign((static_cast<size_t>(1) << K) + 1, cplx(0.0, 0.0));
    nu.coeffs[0] = 1.0;
    for (int k = 1; k <= K; ++k) {
        size_t idx = static_cast<size_t>(1) << k;
        nu.coeffs[idx] = 1.0 + static_cast<double>(idx);
    }
    return nu;
}

long condition2_required_length(const RadialMeasure& mu, double r) {
    if (!(r >= 0.0) || !(r < 1.0))
        throw std::domain_error("condition2_required_length: r must lie in [0,1)");
    constexpr double kBudget = 1e-12;
    auto ok = [&](long L) { return std::abs(moment(mu, L)) * tail_sum(L, r) <= kBudget; };
    long hi = 16;
    while (!ok(hi)) {
        if (hi > (1L << 40)) throw std::runtime_error("condition2_required_length: bound did not close");
        hi *= 2;
    }
    long lo = 0;
    while (lo < hi) {
        long mid = lo + (hi - lo) / 2;
        if (ok(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& str) : s(str) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw SpecParseError("measure spec parse error at position " + std::to_string(pos) +
                             ": " + what);
    }
    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    bool eat_word(const char* w) {
        skip_ws();
        size_t n = std::string_view(w).size();
        if (s.compare(pos, n, w) == 0) {
            pos += n;
            return true;
        }
        return false;
    }
    double number() {
        skip_ws();
        double v = 0.0;
        auto res = std::from_chars(s.data() + pos, s.data() + s.size(), v);
        if (res.ec != std::errc{}) fail("expected a number");
        pos = static_cast<size_t>(res.ptr - s.data());
        return v;
    }
    long integer() {
        skip_ws();
        long v = 0;
        auto res = std::from_chars(s.data() + pos, s.data() + s.size(), v);
        if (res.ec != std::errc{}) fail("expected an integer");
        pos = static_cast<size_t>(res.ptr - s.data());
        return v;
    }
    void finish() {
        skip_ws();
        if (pos != s.size()) fail("trailing characters");
    }
};

}  // namespace

ParsedMeasure parse_measure_spec(const std::string& spec) {
    Parser p(spec);
    ParsedMeasure out;
    if (p.eat_word("lebesgue")) {
        p.finish();
        out.value = RadialMeasure(Lebesgue{});
    } else if (p.eat_word("powerweight")) {
        p.expect(':');
        if (!p.eat_word("s")) p.fail("expected 's='");
        p.expect('=');
        double s = p.number();
        p.finish();
        RadialMeasure mu = PowerWeight{s};
        validate(mu);
        out.value = mu;
    } else if (p.eat_word("atoms")) {
        p.expect(':');
        p.expect('[');
        AtomList al;
        if (!p.eat(']')) {
            while (true) {
                p.expect('(');
                double t = p.number();
                p.expect(',');
                double mass = p.number();
                p.expect(')');
                al.atoms.push_back({t, mass});
                if (p.eat(']')) break;
                p.expect(',');
            }
        }
        p.finish();
        if (al.atoms.empty()) p.fail("atom list must not be empty");
        RadialMeasure mu = al;
        validate(mu);
        out.value = mu;
    } else if (p.eat_word("counterexample")) {
        p.expect(':');
        if (!p.eat_word("K")) p.fail("expected 'K='");
        p.expect('=');
        long K = p.integer();
        p.finish();
        out.value = counterexample_density(static_cast<int>(K));
        out.counterexample_K = static_cast<int>(K);
        out.canonical = "counterexample:K=" + std::to_string(K);
        return out;
    } else {
        p.fail("expected one of lebesgue, powerweight, atoms, counterexample");
    }
    out.canonical = canonical_spec(out.radial());
    return out;
}

}  // namespace hml
