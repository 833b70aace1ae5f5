"""Derives the A3 prepotential from WDVV + quasihomogeneity and checks it
against the x^4 Landau-Ginzburg unfolding (critical values = eigenvalues of
multiplication by E). Prints the values frozen into the C++ tests."""
import itertools
import sympy as sp

t1, t2, t3, a, b = sp.symbols("t1 t2 t3 a b")
T = [t1, t2, t3]
F = sp.Rational(1, 2) * t1**2 * t3 + sp.Rational(1, 2) * t1 * t2**2 + a * t2**2 * t3**2 + b * t3**5
eta = sp.Matrix(3, 3, lambda i, j: sp.diff(F, t1, T[i], T[j]))
ei = eta.inv()
c = lambda i, j, k: sp.diff(F, T[i], T[j], T[k])
cu = lambda m, i, j: sum(ei[m, n] * c(n, i, j) for n in range(3))
eqs = set()
for al, be, ga, de in itertools.product(range(3), repeat=4):
    r = sp.expand(sum(cu(m, al, be) * c(m, ga, de) - cu(m, al, ga) * c(m, be, de) for m in range(3)))
    if r != 0:
        eqs |= set(sp.Poly(r, *T).coeffs())
sol = sp.solve(list(eqs), [b], dict=True)
print("WDVV solutions for b:", sol)
# normalization: a = -1/16 (Dubrovin)
Fs = F.subs(sol[0]).subs(a, sp.Rational(-1, 16))
print("F_A3 =", sp.expand(Fs))

E = [t1, sp.Rational(3, 4) * t2, sp.Rational(1, 2) * t3]
c3 = lambda i, j, k: sp.diff(Fs, T[i], T[j], T[k])
U = sp.Matrix(3, 3, lambda al, be: sp.expand(sum(E[e] * sum(ei[al, n] * c3(n, e, be) for n in range(3)) for e in range(3))))
lam = sp.symbols("lam")
chi = sp.expand((U - lam * sp.eye(3)).det())
disc = sp.factor(sp.discriminant(chi, lam))
print("disc(chi_U) =", disc)

# LG oracle: lambda(p) = p^4 + s2 p^2 + s1 p + s0. Find polynomial map t(s) such
# that the critical values of lambda are the eigenvalues of U.
p, s0, s1, s2 = sp.symbols("p s0 s1 s2")
al2, al1, al0, be0 = sp.symbols("al2 al1 al0 be0")
tmap = {t3: al2 * s2, t2: al1 * s1, t1: al0 * s0 + be0 * s2**2}
chiS = sp.expand(chi.subs(tmap, simultaneous=True))
lg = p**4 + s2 * p**2 + s1 * p + s0
crit_res = sp.expand(sp.resultant(sp.diff(lg, p), lam - lg, p))
crit_res = sp.expand(crit_res / sp.Poly(crit_res, lam).LC())
chiN = sp.expand(chiS / sp.Poly(chiS, lam).LC())
eqsm = sp.Poly(sp.expand(chiN - crit_res), lam, s0, s1, s2).coeffs()
msol = sp.solve(eqsm, [al2, al1, al0, be0], dict=True)
print("LG map solutions:", msol)
