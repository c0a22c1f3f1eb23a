"""Reference values from tools/oracle_mpmath.py (mpmath, 60 digits), rounded to 17 digits.

The script solves the plain equations (cosh forms, numerically differentiated
H) and shares no code with the package.
"""

XI = 1.5643765885603998
OMEGA = 0.52769739696257153
BETA = 1.1996786402577338
M = 1.5088795615383199
INV_M = 0.66274341934918158

# h = 1, r = 3.5
PI0 = 3.3496172422333224
PI1 = 0.32645786951708488
E_CONVEX = {1.0: 3.6712752040269579, 2.0: 3.9846720175263376}
E_CONCAVE = {30.0: 11.990062870069100, 100.0: 31.322151251945244, 1000.0: 278.62855477560219}
F_INF = 0.56392647837996583

# r = 1
E_BAR = 0.55243412453088322
C_STAR = 0.025722443786280325
E_STAR = 0.45830112901846184
H_STAR = 0.73305344494708853
E_F_CONVEX_0002 = 0.13444052838537846
E_F_CONCAVE_2 = 2.9497446310444404
