"""Independent oracle for frozen expected values used in the C++ tests.

Computes series directly from their closed forms with sympy, without any of
the library's truncation machinery.  Run: python3 series_oracle.py
"""
import sympy as sp

z, x, y, s, t = sp.symbols('z x y s t')

def bern(n):
    ser = sp.series(t / (sp.exp(t) - 1), t, 0, n + 1).removeO()
    return sp.factorial(n) * ser.coeff(t, n)

print("B:", [bern(n) for n in range(0, 9)])

# b via series solution of v e^{1-v} = e^{-x^2/2} by undetermined coefficients
N = 12
bs = sp.symbols('b1:%d' % (N + 1))
v = 1 + sum(bs[i] * x ** (i + 1) for i in range(N))
expr = sp.series(sp.log(v) + 1 - v + x ** 2 / 2, x, 0, N + 2).removeO()
sol = {bs[0]: 1}
for k in range(2, N + 2):
    c = sp.expand(expr.coeff(x, k).subs(sol))
    free = [b for b in bs if b in c.free_symbols]
    if not free:
        continue
    tgt = max(free, key=lambda b: bs.index(b))
    sol[tgt] = sp.solve(c, tgt)[0]
print("b:", [sol[b] for b in bs[:N - 1]])

# C_i from e^{B(z)}; in s = 1/z
Bser = sum(bern(2 * k) / (2 * k * (2 * k - 1)) * s ** (2 * k - 1) for k in range(1, 8))
eB = sp.series(sp.exp(Bser), s, 0, 9).removeO()
print("C:", [eB.coeff(s, i) for i in range(0, 9)])

# f = (-2 log(1 - 1/(1+z)) - 2/(1+z))^{-1/2} at infinity, s = 1/z
inner = -2 * sp.log(1 - s / (1 + s)) - 2 * s / (1 + s)   # ~ s^2
fs = sp.series(inner ** sp.Rational(-1, 2), s, 0, 8).removeO()
print("f (coeff of s^k, k=-1..):", [fs.coeff(s, k) for k in range(-1, 8)])

# theta
bv = [sp.Integer(1)] + [sol[b] for b in bs[1:]]   # bv[i] = b_{i+1}
inner_t = 3 * sum(bv[2 * k] / (2 * k + 3) * s ** (2 * k + 3) for k in range(0, 5))
th = sp.series(inner_t ** sp.Rational(-1, 3), s, 0, 8).removeO()
print("theta:", [th.coeff(s, k) for k in range(-1, 8)])

# theta(f(z)) by direct substitution: theta(1/s') with s' = 1/f
tf = sp.series(th.subs(s, 1 / fs), s, 0, 6).removeO()
print("theta(f):", [sp.nsimplify(tf.coeff(s, k)) for k in range(-1, 6)])

# eta(1,z) = sqrt(2 log(1+z) - 2 + 2/(1+z))
eta = sp.series(sp.sqrt(2 * sp.log(1 + z) - 2 + 2 / (1 + z)), z, 0, 8).removeO()
print("eta1:", [eta.coeff(z, k) for k in range(1, 8)])

# h = 1/w - 1
w = 1 + sum((-1) ** (i + 1) * bv[i] * z ** (i + 1) for i in range(11))
h = sp.series(1 / w - 1, z, 0, 12).removeO()
print("h:", [h.coeff(z, k) for k in range(1, 7)])
# 1/h is known through z^(11-2) here, enough for total degree 8 below

# reversion of z + z^2
r = sp.symbols('r1:5')
rr = sum(r[i] * z ** (i + 1) for i in range(4))
eqs = sp.series(rr + rr ** 2 - z, z, 0, 5).removeO()
print("reversion z+z^2:", sp.solve([eqs.coeff(z, k) for k in range(1, 5)], r))

# Q(x,y) = log((1/h(x) - 1/h(y)) xy/(y-x)), direct from h
D = 8
hx = h.subs(z, x); hy = h.subs(z, y)
ih = sp.series(1 / h, z, 0, D).removeO()
K = sp.cancel(((ih.subs(z, x) - ih.subs(z, y)) * x * y / (y - x)))
K = sp.expand(K)
lam = sp.symbols('lam')
Kl = sp.expand(K.subs({x: lam * x, y: lam * y}))
Ql = sp.series(sp.log(Kl), lam, 0, D - 1).removeO()
Ql = sp.expand(Ql)
def Qc(i, j):
    return sp.Poly(Ql.coeff(lam, i + j), x, y).coeff_monomial(x ** i * y ** j)
print("Q11,Q12,Q13,Q22,Q33,Q15:", Qc(1, 1), Qc(1, 2), Qc(1, 3), Qc(2, 2), Qc(3, 3), Qc(1, 5))

# Q^B
BB = sum(bern(2 * k) / (2 * k * (2 * k - 1)) * (x ** (2 * k - 1) + y ** (2 * k - 1)) for k in range(1, 6))
num = sp.expand(sp.series(1 - sp.exp(lam * BB.subs({x: x, y: y}).subs({x: x, y: y})), lam, 0, 1).removeO())
BBl = BB.subs({x: lam * x, y: lam * y})
numl = sp.expand(sp.series(1 - sp.exp(BBl), lam, 0, 8).removeO())
QBl = sp.expand(sp.cancel(numl / (lam * (x + y))))
def QBc(i, j):
    return sp.Poly(sp.expand(QBl.coeff(lam, i + j)), x, y).coeff_monomial(x ** i * y ** j)
print("QB00,QB01,QB11,QB02:", QBc(0, 0), QBc(0, 1), QBc(1, 1), QBc(0, 2))
