#!/usr/bin/env python3
"""The coefficient-square / central-value identity, end to end.

For the weight-13/2 eigenform f with Shimura partner F = Delta:

    |fhat(|D|)|^2 / <f,f>  =  Gamma(k-1/2)/pi^(k-1/2) |D|^(k-1)
                               L(F, (D|.), 1/2) / <F,F>.

Every ingredient is computed by an independent route: exact coefficients,
2-d quadrature for both Petersson norms, a smoothed approximate functional
equation (root number solved, not assumed) for the central values, and an
Euler product for L(sym^2 F, 1) as a cross-check on <F,F>.
"""

from plusforms.hecke import eigenbasis_plus, eigenforms_level1
from plusforms.lfunctions import (
    central_value,
    kohnen_zagier_check,
    norm_identity_rhs,
    petersson_norm_f,
    petersson_norm_integral,
    root_number,
    sym2_at_1,
)

f = eigenbasis_plus("13/2")[0]
f.coefficients_upto(100)
F = eigenforms_level1(12, prec=100000)[0]

norm_f = petersson_norm_f(f, "quadrature", prec=700)
norm_f_spec = petersson_norm_f(f, "spectral")
norm_F = petersson_norm_integral(F)
s2 = sym2_at_1(F, prime_limit=100000)
rhs_norm = norm_identity_rhs(12, s2)

print(f"<f,f>   quadrature : {norm_f.to_float():.10e}")
print(f"<f,f>   spectral   : {norm_f_spec.to_float():.10e}")
print(f"<F,F>   quadrature : {norm_F.to_float():.10e}")
print(f"<F,F>   via sym^2  : {rhs_norm.to_float():.10e}   (Euler product to 10^5)")
print(f"L(sym^2 F, 1)      : {s2.to_float():.8f}")
print()

print(f"{'D':>3} {'L(F,chi_D,1/2)':>16} {'root':>5} {'discrepancy':>12}")
for D in (1, 5, 8, 12, 13, 17, 21, 24):
    lv = central_value(F, D)
    r = kohnen_zagier_check(f, F, D, norm_f, norm_F, lv)
    eps = root_number(F, D)
    if r.get("skipped"):
        print(f"{D:>3} {lv.to_float():>16.10f} {eps:>5} {'(skipped)':>12}")
    else:
        print(f"{D:>3} {lv.to_float():>16.10f} {eps:>5} {r['discrepancy']:>12.3e}")
