// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "builders.hpp"
#include "gevrey/estimator.hpp"
#include "oracles.hpp"
#include "random_problem.hpp"

using namespace gevrey;

namespace
{

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string &what)
    {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

bool in_range(double x, double lo, double hi)
{
    return x >= lo && x <= hi;
}

void criterion_1(Outcome &o)
{
    const auto p = build::heat_geometric<Rational>(40, 120);
    const auto sol = solve(p);
    const auto np = build_polygon(p.pde.shape());
    o.require(np.k1_inverse == 1, "k1_inverse = 1");
    bool exact = true;
    for (unsigned n = 0; n <= 40; ++n) {
        exact = exact && sol.u(n).coeff(MultiIndex{0}) == Rational(oracle::heat_at_zero(n));
    }
    o.require(exact, "u_n(0) = (2n)!/n!");
    const auto rep = verify_theorem(p, sol);
    o.require(in_range(rep.fit.s_hat, 0.9, 1.1), "s_hat in [0.9, 1.1]");
    o.require(rep.verdict, "verdict");
    o.detail << "k1_inverse=" << to_string(np.k1_inverse) << " s_hat=" << rep.fit.s_hat;
}

void criterion_2(Outcome &o)
{
    const auto p = build::heat_exp<Rational>(40, 120);
    const auto sol = solve(p);
    bool exact = true;
    for (unsigned n = 0; n <= 40; ++n) {
        const auto &un = sol.u(n);
        for (unsigned k = 0; k <= 120 - 2 * n; ++k) {
            exact = exact && un.coeff(MultiIndex{k}) == Rational(1) / Rational(oracle::fact(k) * oracle::fact(n));
        }
    }
    o.require(exact, "u_n = e^z/n!");
    const auto rep = verify_theorem(p, sol);
    o.require(in_range(rep.fit.s_hat, -0.1, 0.1), "s_hat in [-0.1, 0.1]");
    o.require(rep.verdict, "verdict");
    o.detail << "s_hat=" << rep.fit.s_hat << " (s_raw=" << rep.fit.s_raw << ")";
}

void criterion_3(Outcome &o)
{
    const auto p = build::valuation_shift<Rational>(40, 120);
    const Rational k = k1_inverse(p.pde.shape());
    o.require(k == Rational(1, 2), "k1_inverse = 1/2");
    const auto rep = verify_theorem(p, solve(p));
    o.require(in_range(rep.fit.s_hat, 0.4, 0.65), "s_hat in [0.4, 0.65]");
    o.detail << "k1_inverse=" << to_string(k) << " s_hat=" << rep.fit.s_hat;
}

void criterion_4(Outcome &o)
{
    PrecisionScope scope(256);
    const auto p = build::fractional(40, 120);
    const Rational k = k1_inverse(p.pde.shape());
    o.require(k == Rational(1, 2), "k1_inverse = 1/2");
    const auto sol = solve(p);
    BigFloat worst = 0;
    for (unsigned n = 0; n <= 30; ++n) {
        const BigFloat expect = BigFloat(oracle::fact(n)) / oracle::gamma_half_step(n);
        worst = std::max(worst, BigFloat(abs(sol.u(n).coeff(MultiIndex{0}) - expect) / expect));
    }
    o.require(worst < BigFloat("1e-20"), "u_n(0) to 1e-20");
    const auto rep = verify_theorem(p, sol);
    o.require(in_range(rep.fit.s_hat, 0.4, 0.6), "s_hat in [0.4, 0.6]");
    o.detail << "k1_inverse=" << to_string(k) << " max_rel_err=" << worst.convert_to<double>()
             << " s_hat=" << rep.fit.s_hat;
}

void criterion_5(Outcome &o)
{
    const auto p = build::q_difference(40);
    const Rational k = k1_inverse(p.pde.shape());
    o.require(k == 0, "k1_inverse = 0");
    const auto sol = solve(p);
    bool exact = true;
    for (unsigned n = 0; n <= 40; ++n) {
        exact = exact && sol.u(n) == PolySeries<Rational>::constant(1, 1 / oracle::q_fact(Rational(1, 2), n));
    }
    o.require(exact, "u_n = 1/[n]_q!");
    const auto rep = verify_theorem(p, sol);
    o.require(in_range(rep.fit.s_hat, -0.05, 0.05), "s_hat in [-0.05, 0.05]");
    o.detail << "k1_inverse=" << to_string(k) << " s_hat=" << rep.fit.s_hat << " (s_raw=" << rep.fit.s_raw << ")";
}

void criterion_6(Outcome &o)
{
    const auto rep = run_lemma_battery(LemmaBatteryConfig{});
    for (const auto *t : rep.tallies()) {
        o.require(t->ok(), t->name);
        o.detail << t->name << "=" << t->passed << "/" << t->instances << " ";
    }
}

void criterion_7(Outcome &o)
{
    std::mt19937_64 rng(2024);
    std::size_t zero = 0;
    std::size_t linear = 0;
    const std::size_t count = 200;
    for (std::size_t i = 0; i < count; ++i) {
        const auto a = build::random_problem(rng, 12);
        const auto b = build::with_random_data(rng, a);
        const Rational c = build::small_rational(rng);
        const auto sa = solve(a);
        const auto sb = solve(b);
        const auto sc = solve(build::combine(a, b, c));
        zero += sa.residual_max == 0 && residual(a, sa) == 0 ? 1 : 0;
        bool lin = true;
        for (std::size_t n = 0; n <= 12; ++n) {
            lin = lin && sc.u(n).identical(sa.u(n) + sb.u(n) * c);
        }
        linear += lin ? 1 : 0;
    }
    o.require(zero == count, "residual exactly 0");
    o.require(linear == count, "linearity");
    o.detail << "zero_residual=" << zero << "/" << count << " linear=" << linear << "/" << count;
}

void criterion_8(Outcome &o)
{
    const auto p = build::heat_geometric<Rational>(40, 120);
    const auto sol = solve(p);
    const MultiIndex a0 = alpha0(p.pde);
    o.require(a0 == MultiIndex{3}, "alpha0 = (3)");
    std::vector<Rational> v;
    for (const auto &x : nagumo_profile(sol, a0, Rational(1, 2), p.pde.s())) {
        v.push_back(x.value);
    }
    const auto fit = estimate_order(v);
    o.require(fit.s_hat <= 1 + 0.15, "fitted order <= 1.15");
    o.detail << "alpha0=" << a0.str() << " s_hat=" << fit.s_hat;
}

} // namespace

int main()
{
    const std::vector<std::pair<double, std::function<void(Outcome &)>>> criteria{
        {10, criterion_1}, {10, criterion_2}, {10, criterion_3}, {20, criterion_4},
        {5, criterion_5},  {60, criterion_6}, {60, criterion_7}, {10, criterion_8}};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception &e) {
            o.ok = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > criteria[i].first) {
            o.ok = false;
            o.detail << " [over the " << criteria[i].first << " s budget]";
        }
        failed += o.ok ? 0 : 1;
        std::printf("%s criterion %zu: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", i + 1, o.detail.str().c_str(), secs);
        std::fflush(stdout);
    }
    return failed;
}
