// Small tour of the library: literals, sharp distance, inversion, a generalized
// function on a near-standard point and the incremental ratio of sin.

#include <iostream>

#include <cgn/cgn.hpp>

using namespace cgn;

int main()
{
    GenNum x = parse_gennum("3 + 2*eps^(1/2) || 3 + eps");
    std::cout << "x           = " << x.to_string() << "\n";
    std::cout << "st(x)       = " << gn_standard_part(x) << "\n";

    std::cout << "d_s(eps, 0) = " << gn_sharp_dist(GenNum::eps(Rational(1)), GenNum(0.0)).value() << "\n";
    std::cout << "1/(eps+eps^2) = " << gn_invert(parse_gennum("eps + eps^2")).to_string() << "\n";

    GenFun u{parse_expr("exp(x/eps)"), OpenSet1D::real_line()};
    std::cout << "u(-eps)     = " << gf_eval_gen(u, parse_gennum("-eps")).to_string() << "\n";

    GenFun f{parse_expr("sin(x)"), parse_openset("(-10,10)")};
    GenNum r = incremental_ratio(f, GenNum(0.0), GenNum::eps(Rational(1)));
    std::cout << "r(0, eps)   = " << r.to_string() << "\n";
    VerdictReport rep = verify_fr(f, GenNum(0.0), GenNum::eps(Rational(1)));
    std::cout << "verified    = " << (rep.passed ? "yes" : "no") << "\n";

    LittleOhPoly p = fr_extend(parse_expr("sin(x)"), parse_fermat("1.5707963267948966 + t^(1/2)"));
    std::cout << "sin(pi/2 + t^(1/2)) = " << p.to_string() << "\n";
    return rep.passed ? 0 : 1;
}
