"""Named groups and actions used by the CLI demos and the test-suite."""

from fractions import Fraction
from math import lcm
from .diag import GradedAction
from .fields import QQ, CyclotomicField
from .reflection import close_group


def permutation_matrix(perm, field=QQ):
    """Matrix with x_i -> x_{perm[i]} under f(x) -> f(g x)."""
    n = len(perm)
    return tuple(tuple(field.one if perm[i] == j else field.zero for j in range(n)) for i in range(n))


def symmetric_group(n, field=QQ):
    """S_n in its n-dimensional permutation representation."""
    gens = []
    for i in range(n - 1):
        p = list(range(n))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(permutation_matrix(p, field))
    return close_group(gens, field)


def swap_group(field=QQ):
    return close_group([permutation_matrix((1, 0), field)], field)


def rotation_group(n):
    """Z/n as rotations of the plane, over Q(zeta_lcm(n, 4))."""
    m = lcm(n, 4)
    F = CyclotomicField(m)
    z = F.root_of_unity(n)
    zi = z.inverse()
    i = F.root_of_unity(4)
    c = (z + zi) * Fraction(1, 2)
    s = (z - zi) / (i * 2)
    return close_group([((c, -s), (s, c))], F)


def diagonal_cyclic(n, exponents):
    """Z/n acting by diag(zeta^e_1, ..., zeta^e_k)."""
    F = CyclotomicField(n)
    k = len(exponents)
    g = tuple(tuple(F.root_of_unity(n, e) if i == j else F.zero for j in range(k)) for i, e in enumerate(exponents))
    return close_group([g], F)


def dihedral8():
    """Symmetries of the square, order 8, over Q."""
    r = ((QQ(0), QQ(-1)), (QQ(1), QQ(0)))
    s = ((QQ(1), QQ(0)), (QQ(0), QQ(-1)))
    return close_group([r, s], QQ)


def minus_identity(n=1):
    return close_group([tuple(tuple(QQ(-1) if i == j else QQ(0) for j in range(n)) for i in range(n))], QQ)


def sign_group(n):
    """(Z/2)^n as diag(+-1, ..., +-1)."""
    gens = []
    for k in range(n):
        gens.append(tuple(tuple(QQ(-1 if i == j == k else int(i == j)) for j in range(n)) for i in range(n)))
    return close_group(gens, QQ)


def galois_swap_group():
    """Z/2 x Z/2 on K^2, K = Q(i): g1 = (a,b) -> (-b i, a i), g2 = (a,b) -> (b i, -a i).

    Complex conjugation sends g1 to g2.
    """
    F = CyclotomicField(4)
    i = F.zeta()
    z = F.zero
    g1 = ((z, -i), (i, z))
    g2 = ((z, i), (-i, z))
    return close_group([g1, g2], F)


def classical_battery():
    """(name, group) pairs covering the characteristic-zero fixture set."""
    out = [
        ("swap", swap_group()),
        ("S3 permutation", symmetric_group(3)),
        ("S4 permutation", symmetric_group(4)),
        ("dihedral order 8", dihedral8()),
        ("-I dim 1", minus_identity(1)),
        ("-I dim 2", minus_identity(2)),
        ("galois swap group", galois_swap_group()),
    ]
    for n in (3, 4, 5, 6):
        out.append((f"Z/{n} rotations", rotation_group(n)))
    return out


def abelian_battery():
    """Abelian char-0 groups for diagonalization cross-checks."""
    return [
        ("swap", swap_group()),
        ("Z/3 diag(w, w^2)", diagonal_cyclic(3, (1, 2))),
        ("Z/3 diag(w, w)", diagonal_cyclic(3, (1, 1))),
        ("Z/4 diag(i, -1)", diagonal_cyclic(4, (1, 2))),
        ("Z/4 diag(i, 1)", diagonal_cyclic(4, (1, 0))),
        ("Z/5 diag(z, 1, z^2)", diagonal_cyclic(5, (1, 0, 2))),
        ("Z/6 diag(z, z^3)", diagonal_cyclic(6, (1, 3))),
        ("(Z/2)^2 signs", sign_group(2)),
        ("(Z/2)^3 signs", sign_group(3)),
        ("-I dim 2", minus_identity(2)),
        ("-I dim 1", minus_identity(1)),
        ("galois swap group", galois_swap_group()),
    ] + [(f"Z/{n} rotations", rotation_group(n)) for n in (3, 4, 5, 6)]


def a1_action():
    return GradedAction.from_lists([2], [1, 1])


def a2_action():
    return GradedAction.from_lists([3], [1, 2])


def perm_sign(p):
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inv % 2 else 1


