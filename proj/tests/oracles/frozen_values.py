"""Independent mpmath oracles for values frozen into the C++ tests."""
from fractions import Fraction
from itertools import combinations
from mpmath import mp, mpf, erfc, exp, log, sqrt, pi, quad, asin, sin, e

mp.dps = 30
G = mpf("0.2484195")


def phibar(x):
    return erfc(mpf(x) / sqrt(2)) / 2


def orth(beta, s):
    beta, s = mpf(beta), mpf(s)
    if beta == 1:
        return phibar(sqrt(2) * s)
    rho = 2 * beta - 1
    a = 2 * s * s
    # theta form of the Drezner integral
    val = quad(lambda t: exp(-a / (1 + sin(t))), [0, asin(rho)])
    return phibar(sqrt(2) * s) ** 2 + val / (2 * pi)


def f(beta, alpha, g=G):
    return orth(beta, g + mpf(alpha))


def f_beta(beta, alpha, g=G):
    rho = 2 * mpf(beta) - 1
    c = g + mpf(alpha)
    return exp(-2 * c * c / (1 + rho)) / (pi * sqrt(1 - rho * rho))


def combo(beta, alpha, g=G):
    rho = 2 * mpf(beta) - 1
    c = g + mpf(alpha)
    up = rho / (1 - rho * rho) + 2 * c * c / (1 + rho) ** 2
    fb = f_beta(beta, alpha, g)
    return beta * 2 * fb * up + 2 * fb


def grid(lo, hi, n):
    return [mpf(lo) + (mpf(hi) - mpf(lo)) * i / (n - 1) for i in range(n)]


def box_ranges():
    bs, als = grid(".495", ".505", 11), grid("-.45", "-.44", 11)
    fv = [f(b, a) for b in (bs[0], bs[-1]) for a in (als[0], als[-1])]
    fb = [f_beta(b, a) for b in bs for a in als]
    cb = [combo(b, a) for b in bs for a in als]
    print("f box", mp.nstr(min(fv), 10), mp.nstr(max(fv), 10))
    print("f_beta box", mp.nstr(min(fb), 10), mp.nstr(max(fb), 10))
    print("combo box max", mp.nstr(max(cb), 10))


def ex0_n6():
    n2, H = 6, 0
    pairs = [(i, j) for i in range(n2) for j in range(i)]
    parts = [set(c) for c in combinations(range(n2), 3)]
    total = 0
    for mask in range(1 << len(pairs)):
        adj = [[0] * n2 for _ in range(n2)]
        for b, (i, j) in enumerate(pairs):
            if mask >> b & 1:
                adj[i][j] = adj[j][i] = 1
        for A in parts:
            ok = True
            for v in range(n2):
                own = sum(adj[v][u] for u in range(n2) if u != v and ((u in A) == (v in A)))
                oth = sum(adj[v][u] for u in range(n2) if (u in A) != (v in A))
                if own - oth < H:
                    ok = False
                    break
            total += ok
    return Fraction(total, 1 << len(pairs))


if __name__ == "__main__":
    print("phibar(1)", mp.nstr(phibar(1), 25))
    print("phibar(2)", mp.nstr(phibar(2), 25))
    print("phibar(5)", mp.nstr(phibar(5), 25))
    print("1-phibar(8)", mp.nstr(1 - phibar(8), 25))
    print("int exp(-x^2) 0..1", mp.nstr(quad(lambda x: exp(-x * x), [0, 1]), 25))
    print("sqrt(pi)/2", mp.nstr(sqrt(pi) / 2, 25))
    print("f(.3,-.4)", mp.nstr(f(".3", "-.4"), 20))
    print("f(.7,-.2)", mp.nstr(f(".7", "-.2"), 20))
    print("f(.05,-.6)", mp.nstr(f(".05", "-.6"), 20))
    box_ranges()
    v = ex0_n6()
    print("EX0 n2=6", v, float(v))
