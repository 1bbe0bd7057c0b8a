"""End-to-end classification of a stabilizer code."""
from __future__ import annotations

from .braiding import braiding_form
from .code import PauliCode, is_lagrangian
from .errors import PreconditionError
from .forms import QuadraticSpace, l_group, witt_class
from .homology import is_fully_mobile, pairing_duality_check


def braiding_quadratic_space(p, gram, theta) -> QuadraticSpace | None:
    """Quadratic form q = theta/2 on E^0 with polar form the braiding, when
    every theta is even; None otherwise."""
    if any(t % 2 for t in theta):
        return None
    n = len(theta)
    vals = [(t // 2) % p for t in theta]
    cross = [[int(gram[i][j]) for j in range(n)] for i in range(n)]
    return QuadraticSpace.from_values(p, vals, cross)


def classify_code(code: PauliCode, limits=None) -> dict:
    if not is_lagrangian(code, limits):
        raise PreconditionError("code is not Lagrangian")
    report = is_fully_mobile(code, limits)
    if not report.fully_mobile:
        bad = [c.degree for c in report.degrees if c.krull_dim > 0]
        raise PreconditionError(
            f"code is not fully mobile: charge modules in degrees {bad} have positive Krull dimension"
        )
    n = code.m + 2
    group = l_group(n, code.p)
    out = {
        "n": n,
        "p": code.p,
        "group": group.label,
        "group_structure": group.structure,
        "prime_group": group.prime_label,
        "charges": [c.summary() for c in report.degrees],
        "duality": pairing_duality_check(code, limits, report),
    }
    if code.m != 2:
        out["class"] = "0" if group.label == "0" else None
        out["note"] = "only the group label and the duality checks are computed in this dimension"
        return out
    bf = braiding_form(code, limits)
    out["braiding"] = bf.as_dict()
    out["refinement_identity"] = bf.refinement_ok()
    V = braiding_quadratic_space(code.p, bf.gram.tolist(), bf.theta)
    if V is None:
        out["class"] = None
        out["note"] = "self-statistics are not all even; reporting the braiding data only"
    else:
        c = witt_class(V)
        out["class"] = str(c.arf) if code.p == 2 else c.label
        out["witt"] = c.as_dict()
    out["caveat"] = (
        "n = 4: the classification statement is established for n > 4; the class shown is the "
        "Witt/Arf class of the braiding data"
    )
    return out

