#include "gevrey/nagumo.hpp"

#include <random>

#include <boost/math/constants/constants.hpp>

namespace gevrey
{

VandermondeReport check_vandermonde(std::uint32_t p, std::uint32_t q, std::size_t n_max)
{
    if (p == 0 || q == 0) {
        throw ParameterError("Vandermonde check needs p, q >= 1");
    }
    VandermondeReport rep{p, q, n_max, true, std::nullopt};
    for (std::size_t n = 0; n <= n_max; ++n) {
        Integer lhs = 0;
        for (std::size_t k = 0; k <= n; ++k) {
            lhs += binomial(static_cast<unsigned>(k + p - 1), static_cast<unsigned>(k))
                   * binomial(static_cast<unsigned>(n - k + q - 1), static_cast<unsigned>(n - k));
        }
        if (lhs != binomial(static_cast<unsigned>(n + p + q - 1), static_cast<unsigned>(n))) {
            rep.passed = false;
            rep.first_failure = n;
            break;
        }
    }
    return rep;
}

SupBoundConstant sup_bound_constant(const BigFloat &rho, const BigFloat &r, const std::vector<Rational> &s,
                                    std::optional<BigFloat> epsilon)
{
    if (rho <= 0 || rho >= r) {
        throw ParameterError("sup bound needs 0 < rho < r");
    }
    Rational s_total = 0;
    for (const auto &si : s) {
        s_total += si;
    }
    const Rational excess = s_total - Rational(static_cast<long>(s.size()));
    const BigFloat ex(excess);

    BigFloat eps;
    if (epsilon) {
        eps = *epsilon;
        if (eps <= 0) {
            throw ParameterError("sup bound needs epsilon > 0");
        }
    } else if (excess == 0) {
        eps = 1;
    } else {
        const BigFloat eps_max = boost::multiprecision::pow(r / rho, 1 / ex) - 1;
        eps = eps_max / 2;
    }
    const BigFloat gap = r - boost::multiprecision::pow(1 + eps, ex) * rho;
    if (gap <= 0) {
        throw ParameterError("epsilon is not admissible: rho (1+eps)^{|s|-N} must stay below r");
    }
    const BigFloat st(s_total);
    const BigFloat a = boost::multiprecision::pow(1 + eps, st) / (boost::multiprecision::pow(eps, st) * gap);
    return {eps, a < 1 ? BigFloat(1) : a};
}

std::vector<std::vector<BigFloat>> torus_angles(std::size_t num_vars, std::size_t count)
{
    // Weyl sequence with the fractional parts of sqrt of the first primes.
    static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    const BigFloat two_pi = 2 * boost::math::constants::pi<BigFloat>();
    std::vector<std::vector<BigFloat>> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<BigFloat> theta(num_vars);
        for (std::size_t i = 0; i < num_vars; ++i) {
            const BigFloat step = boost::multiprecision::sqrt(BigFloat(primes[i % std::size(primes)]));
            BigFloat x = step * static_cast<unsigned long>(k);
            x -= boost::multiprecision::floor(x);
            theta[i] = two_pi * x;
        }
        out.push_back(std::move(theta));
    }
    return out;
}

namespace
{

using Rng = std::mt19937_64;

std::uint64_t draw(Rng &rng, std::uint64_t n)
{
    return rng() % n;
}

Rational pick_s(Rng &rng)
{
    static const Rational choices[] = {Rational(1), Rational(3, 2), Rational(2)};
    return choices[draw(rng, 3)];
}

Rational pick_r(Rng &rng)
{
    static const Rational choices[] = {Rational(1, 4), Rational(1, 2), Rational(1)};
    return choices[draw(rng, 3)];
}

MultiIndex positive_index(Rng &rng, std::size_t nv, std::uint32_t hi)
{
    MultiIndex a(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        a[i] = 1 + static_cast<std::uint32_t>(draw(rng, hi));
    }
    return a;
}

template <Scalar T>
PolySeries<T> random_poly(Rng &rng, std::size_t nv, std::uint32_t max_degree)
{
    PolySeries<T> f(nv);
    const auto terms = 1 + draw(rng, 8);
    for (std::uint64_t k = 0; k < terms; ++k) {
        MultiIndex g(nv);
        for (std::size_t i = 0; i < nv; ++i) {
            g[i] = static_cast<std::uint32_t>(draw(rng, max_degree + 1));
        }
        const auto num = static_cast<long>(draw(rng, 19)) - 9;
        const auto den = static_cast<long>(1 + draw(rng, 5));
        f.add_to(g, from_rational<T>(Rational(num, den)));
    }
    return f;
}

// A moment sequence of order s, chosen among several kinds.
MomentSequence matched_sequence(Rng &rng, const Rational &s)
{
    switch (draw(rng, 3)) {
    case 0:
        return MomentSequence::factorial_power(s);
    case 1:
        return MomentSequence::gamma(s);
    default:
        return MomentSequence::product(MomentSequence::q_factorial(Rational(1, 2)), MomentSequence::factorial_power(s));
    }
}

void record(LemmaTally &t, std::size_t instance, bool ok)
{
    ++t.instances;
    if (ok) {
        ++t.passed;
    } else {
        t.failed_instances.push_back(instance);
    }
}

template <Scalar T>
void run_instance(Rng &rng, std::size_t instance, std::size_t nv, const std::vector<Rational> &s, const Rational &rq,
                  const LemmaBatteryConfig &cfg, LemmaBatteryReport &rep)
{
    const T r = from_rational<T>(rq);
    const auto f = random_poly<T>(rng, nv, cfg.max_degree);
    const auto g = random_poly<T>(rng, nv, cfg.max_degree);
    const MultiIndex alpha = positive_index(rng, nv, 3);
    const bool beta_zero = draw(rng, 4) == 0;
    const MultiIndex beta = beta_zero ? MultiIndex(nv) : positive_index(rng, nv, 3);
    record(rep.submultiplicative, instance, check_submultiplicative(f, g, alpha, beta, r, s));

    const std::size_t axis = draw(rng, nv);
    const auto seq = matched_sequence(rng, s[axis]);
    record(rep.derivative_bound, instance, check_derivative_bound(f, axis, alpha, r, s, seq));

    const MultiIndex shift_from = draw(rng, 4) == 0 ? MultiIndex(nv) : alpha;
    record(rep.shift_bound, instance, check_shift_bound(f, shift_from, positive_index(rng, nv, 3), r, s));

    static const Rational rho_scale[] = {Rational(1, 8), Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    const T rho = from_rational<T>(rq * rho_scale[draw(rng, 4)]);
    const MultiIndex sup_alpha = draw(rng, 4) == 0 ? MultiIndex(nv) : alpha;
    record(rep.sup_bound, instance, check_sup_bound(f, sup_alpha, rho, r, s, cfg.sup_samples));
}

template <Scalar T>
bool unit_norm_case(const MultiIndex &beta, const Rational &rq, const std::vector<Rational> &s)
{
    const T r = from_rational<T>(rq);
    const auto one = PolySeries<T>::constant(beta.size(), T(1));
    const T got = nagumo_norm(one, beta, r, s).value;
    const T want = pow_rational<T>(r, Rational(static_cast<long>(beta.total())));
    return detail::within(got, want) && detail::within(want, got);
}

bool all_integer(const std::vector<Rational> &s)
{
    for (const auto &si : s) {
        if (!is_integer(si)) {
            return false;
        }
    }
    return true;
}

} // namespace

LemmaBatteryReport run_lemma_battery(const LemmaBatteryConfig &config)
{
    if (config.max_vars == 0 || config.max_vars > 10) {
        throw ParameterError("lemma battery supports 1 to 10 variables");
    }
    LemmaBatteryReport rep;
    rep.config = config;
    rep.vandermonde.name = "vandermonde";
    rep.submultiplicative.name = "submultiplicative";
    rep.derivative_bound.name = "derivative_bound";
    rep.shift_bound.name = "shift_bound";
    rep.sup_bound.name = "sup_bound";
    rep.unit_norm.name = "unit_norm";

    PrecisionScope scope(config.precision_bits);
    Rng rng(config.seed);

    std::size_t vi = 0;
    for (std::uint32_t p = 1; p <= config.vandermonde_pq; ++p) {
        for (std::uint32_t q = 1; q <= config.vandermonde_pq; ++q) {
            record(rep.vandermonde, vi++, check_vandermonde(p, q, config.vandermonde_n).passed);
        }
    }

    for (std::size_t i = 0; i < config.instances; ++i) {
        const std::size_t nv = 1 + draw(rng, config.max_vars);
        std::vector<Rational> s(nv);
        for (auto &si : s) {
            si = pick_s(rng);
        }
        const Rational r = pick_r(rng);
        if (all_integer(s)) {
            run_instance<Rational>(rng, i, nv, s, r, config, rep);
        } else {
            run_instance<BigFloat>(rng, i, nv, s, r, config, rep);
        }
    }

    for (std::size_t i = 0; i < config.unit_norm_cases; ++i) {
        const std::size_t nv = 1 + draw(rng, config.max_vars);
        std::vector<Rational> s(nv);
        for (auto &si : s) {
            si = pick_s(rng);
        }
        const MultiIndex beta = positive_index(rng, nv, 5);
        const Rational r = pick_r(rng);
        const bool ok = all_integer(s) ? unit_norm_case<Rational>(beta, r, s) : unit_norm_case<BigFloat>(beta, r, s);
        record(rep.unit_norm, i, ok);
    }
    return rep;
}

} // namespace gevrey
