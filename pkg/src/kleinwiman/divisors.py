"""Divisor classes on the blowups: intersection numbers, the negative-curve
search, and Waldschmidt-constant certificates."""

from dataclasses import dataclass
from fractions import Fraction

from kleinwiman.errors import EngineError
from kleinwiman.series import SeriesSpec, series_dim

# orbit sizes per class, fixing the intersection form H^2 = 1,
# E_class^2 = -(orbit size)
CLASS_SIZES = {
    "klein": (21, 28),
    "wiman": (36, 45, 120),
    "klein-char7": (21, 28),
}
CLASS_LABELS = {
    "klein": ("E4", "E3"),
    "wiman": ("E5", "E4", "E3"),
    "klein-char7": ("E4", "E3"),
}


@dataclass(frozen=True)
class DivisorClass:
    preset: str
    degree: Fraction
    mults: tuple

    @staticmethod
    def make(preset, degree, *mults):
        if len(mults) != len(CLASS_SIZES[preset]):
            raise EngineError(f"{preset} classes take {len(CLASS_SIZES[preset])} "
                              "multiplicities")
        return DivisorClass(preset, Fraction(degree),
                            tuple(Fraction(m) for m in mults))

    def scaled(self, c):
        c = Fraction(c)
        return DivisorClass(self.preset, self.degree * c,
                            tuple(m * c for m in self.mults))

    def plus(self, other):
        self._check(other)
        return DivisorClass(self.preset, self.degree + other.degree,
                            tuple(a + b for a, b in zip(self.mults, other.mults)))

    def _check(self, other):
        if self.preset != other.preset:
            raise EngineError("divisor classes live on different blowups")

    def as_text(self):
        parts = [f"{self.degree}H"]
        for m, lbl in zip(self.mults, CLASS_LABELS[self.preset]):
            if m:
                parts.append(f"{m}{lbl}")
        return " - ".join(parts) if len(parts) > 1 else parts[0]


def intersect(c, d):
    """d_C d_D - sum of (orbit size) m_C m_D over the orbit classes."""
    c._check(d)
    sizes = CLASS_SIZES[c.preset]
    acc = c.degree * d.degree
    for s, a, b in zip(sizes, c.mults, d.mults):
        acc -= s * a * b
    return acc


def self_int(c):
    return intersect(c, c)


def line_class(preset):
    """Class of the sum of the configuration lines."""
    if preset == "klein" or preset == "klein-char7":
        return DivisorClass.make(preset, 21, 4, 3)
    if preset == "wiman":
        return DivisorClass.make(preset, 45, 5, 4, 3)
    raise EngineError(f"unknown preset {preset!r}")


def combine(terms):
    """Formal sum of (coefficient, DivisorClass) pairs."""
    acc = None
    for coef, cls in terms:
        part = cls.scaled(coef)
        acc = part if acc is None else acc.plus(part)
    return acc


def verify_divisor_identity(lhs, rhs):
    """Coefficient-wise equality of two formal sums of divisor classes."""
    return combine(lhs) == combine(rhs)


def klein_dk(k):
    """The pencil (28k+2)H - 2k E4 - 5k E3 of classes behind the lower bounds."""
    k = Fraction(k)
    return DivisorClass.make("klein", 28 * k + 2, 2 * k, 5 * k)


KLEIN_LIMIT_CLASS = DivisorClass.make("klein", 28, 2, 5)
WIMAN_NEF_CANDIDATE = DivisorClass.make("wiman", 36, 1, 2, 3)
KLEIN_CURVE_42 = DivisorClass.make("klein", 42, 0, 8)
WIMAN_CURVE_90 = DivisorClass.make("wiman", 90, 0, 4, 8)

# negative classes of degree > 200 recorded from the reference search ledger;
# they are reported, never recomputed at desk scale
RECORDED_EXTENDED_LEDGER = [
    (804, 28, 150),
    (2706, 100, 504),
    (7728, 288, 1439),
    (40992, 1534, 7632),
    (135786, 5088, 25280),
    (386880, 14500, 72027),
    (2049732, 76828, 381606),
    (6787218, 254404, 1263600),
]


def negative_curve_search(preset, field, d_max, log=None, progress=None):
    """Effective invariant classes of negative self-intersection meeting all
    previously found ones nonnegatively.

    Replicates the reference loop exactly: even degrees ascending, inner
    multiplicity ascending, minimal complementary multiplicity making the
    self-intersection negative, boundary pruning, then an exact series
    computation; a nonempty series appends the class to the ledger.  The
    iteration order is normative: changing it would change which candidates
    get series computations.
    """
    if preset != "klein":
        return _negative_curve_search_wiman(field, d_max, log, progress)
    ledger = [line_class("klein")]
    for d in range(4, d_max + 1, 2):
        for m3 in range(0, d // 4 + 1):
            m4 = 0
            while self_int(DivisorClass.make("klein", d, m4, m3)) >= 0:
                m4 += 1
            cand = DivisorClass.make("klein", d, m4, m3)
            if any(intersect(cand, old) < 0 for old in ledger):
                continue
            if m3 and self_int(DivisorClass.make("klein", d, m4, m3 - 1)) < 0:
                continue
            dim = series_dim(SeriesSpec("klein", d, m4=m4, m3=m3), field)
            if log is not None:
                log.append({"candidate": (d, m4, m3), "dim": dim})
            if progress is not None:
                progress(f"candidate ({d},{m4},{m3}) dim {dim}")
            if dim > 0:
                ledger.append(cand)
    return ledger


def _negative_curve_search_wiman(field, d_max, log=None, progress=None):
    """Exploratory variant for the 45-line configuration (no reference ledger
    to compare against); multiplicities on the two triple orbits are tied."""
    ledger = [line_class("wiman")]
    for d in range(6, d_max + 1, 6):
        for m5 in range(0, d // 5 + 1):
            for m3 in range(0, d // 3 + 1):
                m4 = 0
                while self_int(DivisorClass.make("wiman", d, m5, m4, m3)) >= 0:
                    m4 += 1
                cand = DivisorClass.make("wiman", d, m5, m4, m3)
                if any(intersect(cand, old) < 0 for old in ledger):
                    continue
                if m3 and self_int(DivisorClass.make("wiman", d, m5, m4, m3 - 1)) < 0:
                    continue
                if m5 and self_int(DivisorClass.make("wiman", d, m5 - 1, m4, m3)) < 0:
                    continue
                dim = series_dim(SeriesSpec("wiman", d, m5=m5, m4=m4, m3=m3), field)
                if log is not None:
                    log.append({"candidate": (d, m5, m4, m3), "dim": dim})
                if progress is not None:
                    progress(f"candidate ({d},{m5},{m4},{m3}) dim {dim}")
                if dim > 0:
                    ledger.append(cand)
    return ledger


def _poly_in_k(*coeffs):
    """Little-endian polynomial in one variable over Q, for symbolic checks."""
    return [Fraction(c) for c in coeffs]


def _polymul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _polysub(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    out = [x - y for x, y in zip(a, b)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _binom2(poly):
    """C(f, 2) = f(f-1)/2 for a polynomial f in k."""
    half = Fraction(1, 2)
    return [c * half for c in _polymul(poly, _polysub(poly, [Fraction(1)]))]


def klein_upper_bound_identity():
    """The dimension count behind the 13/2 upper bound: the virtual dimension
    of |D_k| is 7k+6, symbolically in k."""
    lhs = _binom2(_poly_in_k(4, 28))
    lhs = _polysub(lhs, [21 * c for c in _binom2(_poly_in_k(1, 2))])
    lhs = _polysub(lhs, [28 * c for c in _binom2(_poly_in_k(1, 5))])
    return lhs == _poly_in_k(6, 7)


def wiman_upper_bound_identity():
    """The analogous count for the 45-line configuration: 27k+28."""
    lhs = _binom2(_poly_in_k(8, 36))
    lhs = _polysub(lhs, [36 * c for c in _binom2(_poly_in_k(1, 1))])
    lhs = _polysub(lhs, [45 * c for c in _binom2(_poly_in_k(1, 2))])
    lhs = _polysub(lhs, [120 * c for c in _binom2(_poly_in_k(1, 3))])
    return lhs == _poly_in_k(28, 27)


def klein_lower_bound(k):
    """(91k+24)/(14k+4): the bound certified by nefness of D_k."""
    k = Fraction(k)
    return (91 * k + 24) / (14 * k + 4)


def waldschmidt_bounds(preset, field=None, ledger=None, ledger_dmax=None,
                       curve_only=False):
    """Certified bounds on the Waldschmidt constant of the singular points.

    Klein: the upper bound 13/2 comes from the symbolic dimension count; the
    lower bound is (91k+24)/(14k+4) for the largest k whose nef certificate
    closes: either k = 16/7 from the effectivity of the degree-42 curve
    (curve_only), or the integer k with 28k+2 inside the search horizon,
    checked against the supplied ledger.  Wiman: exactly 27/2.
    """
    report = {"preset": preset, "certificates": {}}
    if preset == "klein":
        if not klein_upper_bound_identity():
            raise EngineError("upper-bound dimension count failed")
        report["upper"] = Fraction(13, 2)
        report["certificates"]["upper"] = "virtual dimension of D_k is 7k+6 > 0"
        a = line_class("klein")
        if curve_only or ledger is None:
            b = KLEIN_CURVE_42
            if field is not None:
                dim = series_dim(SeriesSpec("klein", 42, m3=8), field)
                if dim < 1:
                    raise EngineError("degree-42 curve not effective?")
                report["certificates"]["curve_dim"] = dim
            k = Fraction(16, 7)
            dk = klein_dk(k)
            identity = verify_divisor_identity(
                [(8, a), (7, b)], [(7, dk)])
            positive = intersect(a, dk) > 0 and intersect(b, dk) > 0
            if not (identity and positive):
                raise EngineError("nef certificate for D_{16/7} failed")
            report["lower"] = klein_lower_bound(k)
            report["certificates"]["lower"] = {
                "k": k, "identity": "8A + 7B = 7D_k",
                "intersections_positive": True,
                "irreducibility": "reference-constant",
            }
        else:
            horizon = ledger_dmax if ledger_dmax is not None else max(
                int(c.degree) for c in ledger)
            k = (horizon - 2) // 28
            while k > 0:
                dk = klein_dk(k)
                if all(intersect(dk, c) >= 0 for c in ledger):
                    break
                k -= 1
            if k <= 0:
                raise EngineError("no certified k in the ledger horizon")
            report["lower"] = klein_lower_bound(k)
            report["certificates"]["lower"] = {
                "k": k,
                "ledger": [c.as_text() for c in ledger],
                "ledger_horizon": horizon,
                "completeness": "reference-constant",
            }
        return report
    if preset == "wiman":
        if not wiman_upper_bound_identity():
            raise EngineError("upper-bound dimension count failed")
        a = line_class("wiman")
        b = WIMAN_CURVE_90
        d = WIMAN_NEF_CANDIDATE
        identity = verify_divisor_identity([(2, a), (3, b)], [(10, d)])
        orthogonal = (intersect(d, a) == 0 and intersect(d, b) == 0
                      and self_int(d) == 0)
        if not (identity and orthogonal):
            raise EngineError("nef certificate for the 36H class failed")
        if field is not None:
            dim = series_dim(SeriesSpec("wiman", 90, m4=4, m3=8), field)
            if dim < 1:
                raise EngineError("degree-90 curve not effective?")
            report["certificates"]["curve_dim"] = dim
        report["lower"] = Fraction(27, 2)
        report["upper"] = Fraction(27, 2)
        report["exact"] = Fraction(27, 2)
        report["certificates"]["identity"] = "2A + 3B = 10D, D.A = D.B = D^2 = 0"
        report["certificates"]["irreducibility"] = "reference-constant"
        return report
    raise EngineError(f"no Waldschmidt certificates for preset {preset!r}")
