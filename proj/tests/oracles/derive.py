"""Independent symbolic oracle for constants frozen in the C++ tests.

Run: python3 tests/oracles/derive.py
"""
import sympy as sp

x, y = sp.symbols("x y", real=True)

# RT0 on the reference triangle (0,0),(1,0),(0,1), global vertex ids 0,1,2.
P = [sp.Matrix([0, 0]), sp.Matrix([1, 0]), sp.Matrix([0, 1])]
area = sp.Rational(1, 2)
sigma = [1 if k1 < k2 else -1 for k1, k2 in [((k + 1) % 3, (k + 2) % 3) for k in range(3)]]
phi = [sigma[k] / (2 * area) * (sp.Matrix([x, y]) - P[k]) for k in range(3)]


def tri_int(f):
    return sp.integrate(sp.integrate(f, (y, 0, 1 - x)), (x, 0, 1))


M = sp.Matrix(3, 3, lambda i, j: tri_int((phi[i].T * phi[j])[0]))
print("sigma", sigma)
print("RT0 mass", M.tolist())

# flux of each basis function through its own edge along the outer normal
edges = [(P[1], P[2]), (P[2], P[0]), (P[0], P[1])]
for k, (a, b) in enumerate(edges):
    t = sp.symbols("t")
    pt = a + t * (b - a)
    tangent = b - a
    n_out = sp.Matrix([tangent[1], -tangent[0]])  # |n_out| = |e|
    flux = sp.integrate((phi[k].subs({x: pt[0], y: pt[1]}).T * n_out)[0], (t, 0, 1))
    print("edge", k, "outer flux", flux, "divergence", sp.diff(phi[k][0], x) + sp.diff(phi[k][1], y))

# manufactured fields
f = x * (x**2 - 1) ** 2
p1 = f * f.subs(x, y)
print("ex1 p(1/2,1/2)", p1.subs({x: sp.Rational(1, 2), y: sp.Rational(1, 2)}))
lap = sp.diff(p1, x, 2) + sp.diff(p1, y, 2)
print("ex1 F(1/2,1/3)", sp.nsimplify(-lap.subs({x: sp.Rational(1, 2), y: sp.Rational(1, 3)})))
print("ex1 grad p(1/2,1/3)", [sp.diff(p1, v).subs({x: sp.Rational(1, 2), y: sp.Rational(1, 3)}) for v in (x, y)])

pert = sp.Rational(1, 20) * ((x - 1) ** 2 - (y + 1) ** 2)
print("ex2 pert harmonic", sp.simplify(sp.diff(pert, x, 2) + sp.diff(pert, y, 2)))
p_q4 = p1 + pert
print("ex2 p_Q4(1/2,-1/2)", p_q4.subs({x: sp.Rational(1, 2), y: -sp.Rational(1, 2)}))
# derived interface data on (0,1)x{0}: Omega1 = Q1 above, Omega2 = Q4 below, n = (0,-1)
u1 = -sp.Matrix([sp.diff(p1, x), sp.diff(p1, y)])
u2 = -sp.Matrix([sp.diff(p_q4, x), sp.diff(p_q4, y)])
n = sp.Matrix([0, -1])
fs = sp.expand((p_q4 - p1).subs(y, 0))
fn = sp.expand(((u1 - u2).T * n)[0].subs(y, 0) - p_q4.subs(y, 0))
print("ex2 derived f_stress on (0,1)x{0}", fs, " at 1/2:", fs.subs(x, sp.Rational(1, 2)))
print("ex2 derived f_n on (0,1)x{0}", fn, " at 1/2:", fn.subs(x, sp.Rational(1, 2)))

# Example 3 derived normal flux, both halves of the horizontal axis
for xv, nn, name in [(sp.Rational(1, 2), sp.Matrix([0, -1]), "(1/2,0)"), (-sp.Rational(1, 2), sp.Matrix([0, 1]), "(-1/2,0)")]:
    g = sp.Matrix([sp.diff(p1, x), sp.diff(p1, y)])
    jump = (-g / 1 + g / 5)
    print("ex3 derived f_n at", name, ((jump.T * nn)[0]).subs({x: xv, y: 0}))

# Example 4
s = sp.sin(sp.pi / 2 * (x - 1)) ** 2
p4 = s * s.subs(x, y)
print("ex4 p(1/2,1/2)", sp.nsimplify(sp.simplify(p4.subs({x: sp.Rational(1, 2), y: sp.Rational(1, 2)}))))
print("ex4 p(1/2,0)", sp.simplify(p4.subs({x: sp.Rational(1, 2), y: 0})))
print("ex4 mean of p over Gamma", sp.integrate(s, (x, -1, 1)) / 2)

# phi = x on Omega2 with a = 5: int a |grad x|^2 over two unit squares
print("ex3 phi^T C phi for phi = x", 5 * 2)
