"""JSON schemas and the textual supernumber form.

JSON shapes:
  supernumber   {"field": "R"|"C", "budget": N,
                 "terms": [{"index": [i1, ...], "re": x, "im": y}, ...]}
  supermatrix   {"p": _, "q": _, "entries": [[<supernumber>, ...], ...]}
  constants     {"p": _, "q": _, "budget": N, "field": _,
                 "f": [{"M": m, "N": n, "K": k, "value": <supernumber>}, ...]}
omitted constant entries are zero.  The text form reads like
``2 - 3*z[1] + 0.5*z[1,2]``; repeated or decreasing indices are rejected.
"""

from __future__ import annotations

import json
import re

from .errors import ParseError
from .grassmann import Supernumber
from .linalg import SuperMatrix
from .superlie import SuperLieAlgebra

# -- JSON ---------------------------------------------------------------


def sn_to_json(z):
    terms = []
    for mask, c in z.terms():
        from .blades import indices_from_mask

        cc = complex(c)
        terms.append({"index": list(indices_from_mask(mask)), "re": cc.real, "im": cc.imag})
    return {"field": z.field, "budget": z.budget, "terms": terms}


def sn_from_json(obj):
    try:
        field = obj["field"]
        budget = int(obj["budget"])
        terms = {}
        for t in obj["terms"]:
            idx = tuple(int(i) for i in t["index"])
            val = float(t.get("re", 0.0))
            im = float(t.get("im", 0.0))
            coeff = complex(val, im) if field == "C" else val
            if field == "R" and im != 0.0:
                raise ParseError(f"imaginary part {im} in a real supernumber")
            terms[idx] = terms.get(idx, 0) + coeff
        return Supernumber.from_terms(terms, budget, field)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad supernumber JSON: {exc}") from exc


def mat_to_json(M):
    return {"p": M.p, "q": M.q,
            "entries": [[sn_to_json(e) for e in row] for row in M.entries]}


def mat_from_json(obj):
    try:
        p, q = int(obj["p"]), int(obj["q"])
        ents = [[sn_from_json(e) for e in row] for row in obj["entries"]]
        return SuperMatrix(p, q, ents)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad supermatrix JSON: {exc}") from exc


def algebra_to_json(L):
    return {
        "p": L.p, "q": L.q, "budget": L.budget, "field": L.field,
        "f": [{"M": M, "N": N, "K": K, "value": sn_to_json(v)}
              for (M, N, K), v in sorted(L.f.items())],
    }


def algebra_from_json(obj, jacobi_tol=None):
    try:
        p, q = int(obj["p"]), int(obj["q"])
        entries = [(int(t["M"]), int(t["N"]), int(t["K"]), sn_from_json(t["value"]))
                   for t in obj["f"]]
        if entries:
            budget = entries[0][3].budget
            field = entries[0][3].field
        else:
            budget = int(obj.get("budget", 8))
            field = obj.get("field", "R")
        constants = {(M, N, K): v for M, N, K, v in entries}
        kwargs = {} if jacobi_tol is None else {"jacobi_tol": jacobi_tol}
        return SuperLieAlgebra(p, q, budget, field, constants, **kwargs)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad structure-constant JSON: {exc}") from exc


def dumps_report(obj):
    """Canonical, byte-stable report encoding (newline-terminated)."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- text form ----------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<sign>[+-])"
    r"|(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<mono>z\[(?P<idx>[^\]]*)\])"
    r"|(?P<star>\*))"
)


def parse_supernumber(text, budget, field="R"):
    """Parse the CLI text form, e.g. '2 - 3*z[1] + 0.5*z[1,2]'."""
    pos = 0
    terms = {}
    sign = 1.0
    sign_pending = False
    pending_coeff = None
    pending_any = False

    def flush(mono_idx, at):
        nonlocal sign, sign_pending, pending_coeff, pending_any
        coeff = sign * (1.0 if pending_coeff is None else pending_coeff)
        if mono_idx is None:
            idx = ()
        else:
            try:
                idx = tuple(int(s.strip()) for s in mono_idx.split(",")) if mono_idx.strip() else ()
            except ValueError:
                raise ParseError(f"bad index list '{mono_idx}'", pos=at)
            for a, b in zip(idx, idx[1:]):
                if b <= a:
                    raise ParseError(
                        f"indices must be strictly increasing, got {idx}", pos=at)
            for i in idx:
                if not (1 <= i <= budget):
                    raise ParseError(f"generator {i} outside budget {budget}", pos=at)
        terms[idx] = terms.get(idx, 0.0) + coeff
        sign, sign_pending, pending_coeff, pending_any = 1.0, False, None, False

    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", pos=pos)
        at = pos
        pos = m.end()
        if m.group("sign"):
            if pending_any:
                flush(None, at)
            sign *= -1.0 if m.group("sign") == "-" else 1.0
            sign_pending = True
        elif m.group("num"):
            if pending_coeff is not None:
                raise ParseError("two numbers in one term", pos=at)
            pending_coeff = float(m.group("num"))
            pending_any = True
        elif m.group("star"):
            if pending_coeff is None:
                raise ParseError("'*' without a coefficient", pos=at)
        elif m.group("mono"):
            flush(m.group("idx"), at)
    if pending_any:
        flush(None, n)
    elif sign_pending:
        raise ParseError("dangling sign", pos=n)
    if not text.strip():
        raise ParseError("empty expression", pos=0)
    try:
        return Supernumber.from_terms(terms, budget, field)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
