#include "regcert/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace regcert {

namespace {

constexpr unsigned long kMaxExactPower = 4096;

// c = prod_k beta_k^{e_k} when that number is rational; empty otherwise.
std::optional<Rational> exact_power_product(const RVector& beta, std::span<const Rational> exps) {
    mpz_class D = 1;
    for (const Rational& e : exps) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), e.denominator().get_mpz_t());
    if (!D.fits_ulong_p() || D.get_ui() > kMaxExactPower) return std::nullopt;
    const unsigned long root = D.get_ui();

    mpz_class num = 1;
    mpz_class den = 1;
    for (std::size_t k = 0; k < beta.size(); ++k) {
        const mpz_class e = exps[k].numerator() * (D / exps[k].denominator());
        if (e == 0) continue;
        mpz_class mag = abs(e);
        if (!mag.fits_ulong_p() || mag.get_ui() > kMaxExactPower) return std::nullopt;
        mpz_class bn, bd;
        mpz_pow_ui(bn.get_mpz_t(), beta[k].numerator().get_mpz_t(), mag.get_ui());
        mpz_pow_ui(bd.get_mpz_t(), beta[k].denominator().get_mpz_t(), mag.get_ui());
        if (e > 0) {
            num *= bn;
            den *= bd;
        } else {
            num *= bd;
            den *= bn;
        }
    }
    const Rational whole = Rational::from_integers(num, den);
    mpz_class rn, rd;
    if (mpz_root(rn.get_mpz_t(), whole.numerator().get_mpz_t(), root) == 0) return std::nullopt;
    if (mpz_root(rd.get_mpz_t(), whole.denominator().get_mpz_t(), root) == 0) return std::nullopt;
    return Rational::from_integers(rn, rd);
}

BigFloat pow_rational(const BigFloat& x, const Rational& e) {
    return exp(BigFloat(e, x.precision()) * log(x));
}

}  // namespace

SingularSolution construct_interior_singular(const SystemSpec& spec, const ScalingData& scaling, int digits) {
    if (spec.d < 3) throw PreconditionViolated("radial singular construction requires d >= 3");
    const StructureReport st = validate_structure(spec);
    if (!st.admissible) throw PreconditionViolated("structural assumption fails: " + (st.failures.empty() ? std::string("?") : st.failures.front()));
    const Rational limit = Rational(spec.d - 2, 2);
    if (!(scaling.max_alpha() < limit)) {
        throw PreconditionViolated("max alpha = " + scaling.max_alpha().str() + " is not < (d-2)/2 = " + limit.str());
    }
    if (digits < 1) throw std::invalid_argument("digits must be positive");

    SingularSolution sol;
    sol.d = spec.d;
    sol.P = spec.P;
    sol.alpha = scaling.alpha;
    sol.digits = digits;
    for (const Rational& a : sol.alpha) sol.beta.push_back(Rational(2) * a * (Rational(spec.d - 2) - Rational(2) * a));

    // (I-P) ln c = -ln beta, so ln c = M ln beta with M = -(I-P)^{-1}.
    const RMatrix inv = inverse(i_minus_p(spec));
    sol.log_coeffs = RMatrix(spec.n, spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        for (std::size_t k = 0; k < spec.n; ++k) sol.log_coeffs.at(i, k) = -inv.at(i, k);
    }

    const mpfr_prec_t prec = BigFloat::precision_for_digits(digits + 10);
    std::vector<BigFloat> log_beta;
    for (const Rational& b : sol.beta) log_beta.push_back(log(BigFloat(b, prec)));
    for (std::size_t i = 0; i < spec.n; ++i) {
        BigFloat acc(prec);
        for (std::size_t k = 0; k < spec.n; ++k) acc = acc + BigFloat(sol.log_coeffs.at(i, k), prec) * log_beta[k];
        sol.c_exact.push_back(exact_power_product(sol.beta, sol.log_coeffs.row(i)));
        if (sol.c_exact.back()) {
            sol.c.emplace_back(*sol.c_exact.back(), prec);
        } else {
            sol.c.push_back(exp(acc));
        }
    }
    return sol;
}

std::vector<long double> sample_radii(std::size_t count) {
    std::vector<long double> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(std::pow(10.0L, -3.0L + 3.0L * static_cast<long double>(k) / static_cast<long double>(count)));
    }
    return out;
}

VerificationReport verify_identity(const SingularSolution& sol, std::size_t sample_count) {
    const std::size_t n = sol.alpha.size();
    VerificationReport rep;
    const RMatrix A = RMatrix::identity(n) - sol.P;

    const RVector Aa = A * sol.alpha;
    rep.exponent_identity = std::all_of(Aa.begin(), Aa.end(), [](const Rational& v) { return v == Rational(-1); });
    if (!rep.exponent_identity) {
        for (std::size_t i = 0; i < n; ++i) {
            if (Aa[i] != Rational(-1)) throw IdentityViolation("exponent identity fails", i, std::nullopt);
        }
    }
    rep.log_system_identity = (A * sol.log_coeffs) == (RMatrix(n, n) - RMatrix::identity(n));
    if (!rep.log_system_identity) throw IdentityViolation("log-coefficient system does not invert I-P", std::nullopt, std::nullopt);

    // prod_j c_j^{p_ij} / (beta_i c_i) - 1, at the stored precision.
    const mpfr_prec_t prec = sol.c.empty() ? 256 : sol.c.front().precision();
    rep.coefficient_tolerance = std::pow(10.0L, -static_cast<long double>(std::max(sol.digits - 10, 1)));
    rep.max_coefficient_residual = BigFloat(prec);
    const BigFloat one(Rational(1), prec);
    for (std::size_t i = 0; i < n; ++i) {
        if (!sol.c[i].is_positive()) throw IdentityViolation("coefficient is not positive", i, std::nullopt);
        BigFloat lhs = one;
        for (std::size_t j = 0; j < n; ++j) {
            if (!sol.P.at(i, j).is_zero()) lhs = lhs * pow_rational(sol.c[j], sol.P.at(i, j));
        }
        const BigFloat rhs = BigFloat(sol.beta[i], prec) * sol.c[i];
        const BigFloat res = (lhs / rhs - one).abs();
        if (rep.max_coefficient_residual < res) rep.max_coefficient_residual = res;
        if (!(res.to_long_double() < rep.coefficient_tolerance)) {
            std::ostringstream os;
            os << "coefficient identity fails for component " << i + 1 << ": relative residual " << res.str(6);
            throw IdentityViolation(os.str(), i, std::nullopt);
        }
    }

    // Evaluated in MPFR: r^{-2 alpha} leaves the long double range once alpha is in the hundreds.
    constexpr mpfr_prec_t kNumericPrec = 160;
    std::vector<BigFloat> c, a;
    for (std::size_t i = 0; i < n; ++i) {
        c.emplace_back(sol.c[i]);
        a.emplace_back(sol.alpha[i], kNumericPrec);
    }
    const BigFloat two(2.0L, kNumericPrec), dm1(static_cast<long double>(sol.d - 1), kNumericPrec);
    const BigFloat unit(1.0L, kNumericPrec);
    const std::vector<long double> radii = sample_radii(sample_count);
    rep.radii = radii.size();
    for (long double r : radii) {
        const BigFloat R(r, kNumericPrec);
        const BigFloat logR = log(R);
        std::vector<BigFloat> power(n, BigFloat(kNumericPrec)), u(n, BigFloat(kNumericPrec));
        for (std::size_t j = 0; j < n; ++j) {
            power[j] = exp(BigFloat(-2.0L, kNumericPrec) * a[j] * logR);
            u[j] = c[j] * (power[j] - unit);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const BigFloat d1 = BigFloat(-2.0L, kNumericPrec) * a[i] * c[i] * power[i] / R;
            const BigFloat d2 = two * a[i] * (two * a[i] + unit) * c[i] * power[i] / (R * R);
            const BigFloat lhs = BigFloat(kNumericPrec) - (d2 + dm1 / R * d1);
            BigFloat rhs = unit;
            for (std::size_t j = 0; j < n; ++j) {
                const Rational& p = sol.P.at(i, j);
                if (!p.is_zero()) rhs = rhs * pow_rational(u[j] + c[j], p);
            }
            const long double res = ((lhs - rhs) / rhs).abs().to_long_double();
            if (!(res <= rep.max_numeric_residual)) {
                rep.max_numeric_residual = res;
                rep.worst_component = i;
                rep.worst_radius = r;
            }
            if (!(res < rep.numeric_tolerance)) {
                std::ostringstream os;
                os << "PDE identity fails for component " << i + 1 << " at r = " << static_cast<double>(r)
                   << ": relative residual " << static_cast<double>(res);
                throw IdentityViolation(os.str(), i, r);
            }
        }
    }
    return rep;
}

MembershipReport classify_membership(const SingularSolution& sol, SolutionKind kind,
                                     const std::vector<ExtRational>& queried_k) {
    MembershipReport rep;
    const Rational d(sol.d);
    rep.all_in_H01 = true;
    rep.all_in_L1 = true;
    for (const Rational& a : sol.alpha) {
        ComponentMembership m;
        m.in_Linf = a.sign() <= 0;
        m.in_H01 = a < (d - Rational(2)) / Rational(4);
        m.in_L1 = Rational(2) * a < d;
        m.f_in_L1 = a < (d - Rational(2)) / Rational(2);
        for (const ExtRational& k : queried_k) {
            const bool in = k.is_finite() ? Rational(2) * a * k.value() < d : a.sign() <= 0;
            m.in_Lk.emplace_back(k, in);
        }
        rep.all_in_H01 = rep.all_in_H01 && m.in_H01;
        rep.all_in_L1 = rep.all_in_L1 && m.in_L1 && m.f_in_L1;
        rep.any_in_Linf = rep.any_in_Linf || m.in_Linf;
        rep.components.push_back(std::move(m));
    }
    switch (kind) {
        case SolutionKind::H01: rep.in_kind = rep.all_in_H01; break;
        case SolutionKind::L1: rep.in_kind = rep.all_in_L1; break;
        case SolutionKind::L1delta: rep.in_kind = false; break;
    }
    return rep;
}

ConeConstructionStub very_weak_cone_stub() {
    return ConeConstructionStub{
        "very-weak-regularity(ii): boundary-cone singular solution, not constructed",
        {"Green-function estimates for the cone profiles a_i near a boundary point",
         "cone aperture and profile parameter in (-1, (d-1)/2)",
         "boundary-distance weighted integrability of the constructed right-hand side"}};
}

}  // namespace regcert
