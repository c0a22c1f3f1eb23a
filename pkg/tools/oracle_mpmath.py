"""Reference values at 60 digits with mpmath, used as frozen oracles in tests/oracles.py.

Every quantity is computed from the unreformulated equations (cosh forms,
numerical derivatives of H) so that it shares no code path with the package.
Run: python tools/oracle_mpmath.py
"""
from mpmath import mp, mpf, cosh, sinh, tanh, sech, acosh, sqrt, findroot, diff, log
mp.dps = 60
xi = findroot(lambda x: x*tanh(1/x)+sech(1/x)**2-x, 1.5)
omega = 1/(xi*cosh(1/xi))
beta = findroot(lambda x: x*sinh(x)-cosh(x), 1.2)
m = cosh(beta)/beta
print("xi", xi); print("omega", omega); print("beta", beta); print("m", m, "1/m", 1/m)
h, r = mpf(1), mpf('3.5')
pi0 = findroot(lambda P: P*cosh(h/P)-r, 3.3); pi1 = findroot(lambda P: P*cosh(h/P)-r, 0.33)
print("pi0", pi0); print("pi1", pi1)
H0 = lambda E: E/2*acosh((2-E**2)/(E*E))
Ebar = findroot(lambda E: diff(H0, E), 0.55); print("Ebar", Ebar, "H0(Ebar)", H0(Ebar))
def conv_eq(E, c, h=h, r=r):  # cosh(2h/E) = (2r^2-E^2+2c)/(E sqrt(E^2-4c))
    return cosh(2*h/E) - (2*r**2-E**2+2*c)/(E*sqrt(E**2-4*c))
def conc_eq(E, c, h=h, r=r):
    return cosh(2*h/E) + (2*r**2-E**2+2*c)/(E*sqrt(E**2-4*c))
for c in [1, 2]:
    print("Econvex", c, findroot(lambda E: conv_eq(E, c), 3.7))
for c, g in [(30, 12), (100, 31.3), (1000, 278.6)]:
    print("Econcave", c, findroot(lambda E: conc_eq(E, c), g))
# c*: H(E) with r=1; E*(c) from H''=0 numerically, then H'(E*)=0
def H(E, c): return E/2*acosh((2-E**2+2*c)/(E*sqrt(E**2-4*c)))
def system(c, E):
    return [diff(lambda e: H(e, c), E, 1), diff(lambda e: H(e, c), E, 2)]
cs, Es = findroot(system, (mpf('0.0257'), mpf('0.458')))
print("cstar", cs, "Estar", Es, "Hstar", H(Es, cs))
# e_F at gamma=0.002 from numeric H''=0 (r=1 so Psi=H)
for g, e0 in [(mpf('0.002'), 0.134)]:
    print("eF", g, findroot(lambda e: diff(lambda x: H(x, g), e, 2), (0.12, 0.15), solver='anderson'))
def Hc(E, c): return E/2*acosh((-2+E**2-2*c)/(E*sqrt(E**2-4*c)))
print("eF concave 2", findroot(lambda e: diff(lambda x: Hc(x, 2), e, 2), (2.9, 2.99), solver='anderson'))
print("Finf", log((sqrt(h**2+r**2)+h)/(sqrt(h**2+r**2)-h)))
