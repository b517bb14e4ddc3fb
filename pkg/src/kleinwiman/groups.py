"""Finite matrix groups acting on the projective plane and on polynomials."""

from kleinwiman.errors import FieldError, GroupError
from kleinwiman.poly import Poly, normalize_point


class GroupElement:
    """3x3 invertible matrix over a field, acting on points by matrix-vector
    product and on polynomials by substituting the rows into the variables."""

    __slots__ = ("field", "m", "_key")

    def __init__(self, field, entries):
        self.field = field
        self.m = tuple(tuple(field.coerce(v) for v in row) for row in entries)
        self._key = None

    @classmethod
    def identity(cls, field):
        one, zero = field.one, field.zero
        return cls(field, ((one, zero, zero), (zero, one, zero), (zero, zero, one)))

    def key(self):
        if self._key is None:
            self._key = self.m
        return self._key

    def projective_key(self):
        """Entries scaled so the first nonzero entry is 1."""
        f = self.field
        flat = [v for row in self.m for v in row]
        for v in flat:
            if not f.is_zero(v):
                inv = f.inv(v)
                return tuple(f.mul(u, inv) for u in flat)
        raise GroupError("zero matrix")

    def matmul(self, other):
        f = self.field
        a, b = self.m, other.m
        rows = []
        for i in range(3):
            row = []
            for j in range(3):
                acc = f.mul(a[i][0], b[0][j])
                acc = f.add(acc, f.mul(a[i][1], b[1][j]))
                acc = f.add(acc, f.mul(a[i][2], b[2][j]))
                row.append(acc)
            rows.append(tuple(row))
        out = GroupElement.__new__(GroupElement)
        out.field = f
        out.m = tuple(rows)
        out._key = None
        return out

    def matvec(self, v):
        f = self.field
        v = [f.coerce(c) for c in v]
        return tuple(
            f.add(f.add(f.mul(row[0], v[0]), f.mul(row[1], v[1])), f.mul(row[2], v[2]))
            for row in self.m)

    def det(self):
        f = self.field
        m = self.m
        add, sub, mul = f.add, f.sub, f.mul
        return sub(add(add(mul(m[0][0], sub(mul(m[1][1], m[2][2]), mul(m[1][2], m[2][1]))),
                           mul(m[0][2], sub(mul(m[1][0], m[2][1]), mul(m[1][1], m[2][0])))),
                       f.zero),
                   mul(m[0][1], sub(mul(m[1][0], m[2][2]), mul(m[1][2], m[2][0]))))

    def row_forms(self, var_names=None):
        return [Poly.linear_form(self.field, row, var_names=var_names)
                for row in self.m]

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.m == other.m

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<GroupElement over {self.field.name}>"


def act_on_poly(g, f):
    """Substitute the linear forms given by g's matrix rows into f."""
    if f.field != g.field:
        raise FieldError("mismatched field specs")
    return f.substitute(g.row_forms(var_names=f.var_names))


def act_on_point(g, p):
    """Matrix-vector action with projective normalization."""
    return normalize_point(g.field, g.matvec(p))


class FiniteGroup:
    """Closure of a generator set, with optional projective identification
    (quotient by the scalar matrices the closure contains)."""

    def __init__(self, field, elements, gens, projective=False):
        self.field = field
        self.elements = elements
        self.gens = gens
        self.projective = projective
        self._proj_classes = None

    @property
    def order(self):
        return len(self.elements)

    @property
    def projective_order(self):
        if self._proj_classes is None:
            self._proj_classes = len({g.projective_key() for g in self.elements})
        return self._proj_classes

    @property
    def effective_order(self):
        """Order used for orbit-stabilizer bookkeeping on the plane."""
        return self.projective_order if self.projective else self.order

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def generate_group(gens, expected_order=None, cap=None, projective=False,
                   field=None):
    """Breadth-first closure of the generators under multiplication.

    Raises GroupError when the closure exceeds the cap (10x the expected
    order by default) or when a declared order is not matched.
    """
    if not gens:
        raise GroupError("need at least one generator")
    field = field or gens[0].field
    for g in gens:
        if field.is_zero(g.det()):
            raise GroupError("generator is not invertible")
    if cap is None:
        cap = 10 * expected_order if expected_order else 100000
    ident = GroupElement.identity(field)
    seen = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = a.matmul(g)
                k = b.key()
                if k not in seen:
                    seen[k] = b
                    new.append(b)
                    if len(seen) > cap:
                        raise GroupError(
                            f"closure exceeded cap {cap}; bad generators?")
        frontier = new
    elements = sorted(seen.values(), key=lambda e: _elem_sort_key(field, e))
    if expected_order is not None and len(elements) != expected_order:
        raise GroupError(
            f"closure has order {len(elements)}, expected {expected_order}")
    return FiniteGroup(field, elements, list(gens), projective=projective)


def _elem_sort_key(field, e):
    return tuple(field.sort_key(v) for row in e.m for v in row)


def _action_chunk_sum(args):
    chunk, f = args
    acc = Poly.zero(f.field, f.nvars, f.weights, f.var_names)
    for g in chunk:
        acc = acc + act_on_poly(g, f)
    return acc


def reynolds(group, f):
    """Group average of f; requires |G| invertible in the field.

    The summation fans out over element chunks when KLEINWIMAN_WORKERS > 1;
    exact addition commutes, so the result is identical either way.
    """
    from kleinwiman.util import parallel_map, worker_count

    n = group.order
    field = f.field
    try:
        inv_n = field.inv(field.coerce(n))
    except ZeroDivisionError:
        raise FieldError(
            f"group order {n} is not invertible in {field.name}") from None
    workers = worker_count()
    elements = list(group)
    if workers > 1:
        size = (len(elements) + workers - 1) // workers
        chunks = [elements[i: i + size] for i in range(0, len(elements), size)]
        parts = parallel_map(_action_chunk_sum, [(c, f) for c in chunks],
                             workers=workers)
    else:
        parts = [_action_chunk_sum((elements, f))]
    acc = Poly.zero(field, f.nvars, f.weights, f.var_names)
    for part in parts:
        acc = acc + part
    return acc.scale(inv_n)


def orbit(group, p):
    """Deduplicated projective orbit of a point, breadth-first over generators."""
    field = group.field
    start = normalize_point(field, p)
    seen = {start}
    frontier = [start]
    while frontier:
        new = []
        for q in frontier:
            for g in group.gens:
                r = act_on_point(g, q)
                if r not in seen:
                    seen.add(r)
                    new.append(r)
        frontier = new
    return sorted(seen, key=lambda pt: tuple(field.sort_key(c) for c in pt))


def stabilizer_order(group, p):
    """|G| / |orbit|, using the projective order when the group is projective."""
    orb = orbit(group, p)
    n = group.effective_order
    if n % len(orb):
        raise GroupError("orbit size does not divide the group order")
    return n // len(orb)


def orbit_of_poly(group, f):
    """Orbit of a polynomial under the substitution action, deduplicated
    projectively (each image scaled to leading coefficient 1)."""
    seen = {}
    frontier = [f.canonical_scale()]
    seen[frontier[0].key()] = frontier[0]
    while frontier:
        new = []
        for q in frontier:
            for g in group.gens:
                r = act_on_poly(g, q).canonical_scale()
                k = r.key()
                if k not in seen:
                    seen[k] = r
                    new.append(r)
        frontier = new
    return sorted(seen.values(), key=lambda poly: poly.key())


def gradient_identity_holds(field, samples=5, seed=0):
    """Property check: for the substitution action f -> f(Mx), the gradient
    of the image is the transpose matrix applied to the image of the
    gradient.  Exercised on random forms and random group elements."""
    import random

    from kleinwiman.poly import gradient, monomials_of_degree

    rng = random.Random(seed)
    G = klein_group(field)
    for _ in range(samples):
        g = G.elements[rng.randrange(len(G.elements))]
        terms = {e: field.coerce(rng.randrange(1, 1000))
                 for e in rng.sample(monomials_of_degree(3, 4), 6)}
        f = Poly(field, terms)
        grad_gf = gradient(act_on_poly(g, f))
        g_grad_f = [act_on_poly(g, df) for df in gradient(f)]
        m = g.m
        for i in range(3):
            acc = Poly.zero(field)
            for j in range(3):
                acc = acc + g_grad_f[j].scale(m[j][i])
            if acc != grad_gf[i]:
                return False
    return True


# -- shipped generator matrices ---------------------------------------------

def klein_generators(field):
    """The three generators of the 168-element group over a field containing
    a primitive 7th root of unity."""
    z = field.constant("zeta")
    zp = {k: field.pow(z, k) for k in range(7)}
    one, zero = field.one, field.zero
    g = GroupElement(field, ((zp[4], zero, zero),
                             (zero, zp[2], zero),
                             (zero, zero, zp[1])))
    h = GroupElement(field, ((zero, one, zero),
                             (zero, zero, one),
                             (one, zero, zero)))
    a = field.sub(zp[1], zp[6])
    b = field.sub(zp[2], zp[5])
    c = field.sub(zp[4], zp[3])
    # (a+b+c)/7 squares to -1/7, making the symmetric matrix an involution
    s = field.div(field.add(field.add(a, b), c), field.coerce(7))
    i = GroupElement(field, (
        (field.mul(s, a), field.mul(s, b), field.mul(s, c)),
        (field.mul(s, b), field.mul(s, c), field.mul(s, a)),
        (field.mul(s, c), field.mul(s, a), field.mul(s, b))))
    return [g, h, i]


def valentiner_generators(field):
    """The four generators of the 1080-element triple cover of A6 over a field
    containing sqrt(5) and a primitive cube root of unity."""
    delta = field.constant("delta")
    omega = field.constant("omega")
    mu1 = field.constant("mu1")
    mu2 = field.constant("mu2")
    one, zero = field.one, field.zero
    neg = field.neg
    half = field.inv(field.coerce(2))
    r1 = GroupElement(field, ((zero, zero, one),
                              (one, zero, zero),
                              (zero, one, zero)))
    r2 = GroupElement(field, ((one, zero, zero),
                              (zero, neg(one), zero),
                              (zero, zero, neg(one))))
    r3 = GroupElement(field, tuple(
        tuple(field.mul(half, v) for v in row)
        for row in ((neg(one), mu2, mu1),
                    (mu2, mu1, neg(one)),
                    (mu1, neg(one), mu2))))
    om2 = field.mul(omega, omega)
    r4 = GroupElement(field, ((neg(one), zero, zero),
                              (zero, zero, neg(om2)),
                              (zero, neg(omega), zero)))
    return [r1, r2, r3, r4]


def klein_group(field, expected_order=168):
    return generate_group(klein_generators(field), expected_order=expected_order)


def valentiner_group(field, expected_order=1080):
    return generate_group(valentiner_generators(field),
                          expected_order=expected_order, projective=True)
