"""LaTeX, Graphviz DOT, and JSON renderings of characters.

Y-symbols use the shorthand Y_{i,x;j,k} whenever the argument is a weight
parameter times q1^j q2^k; coefficients are re-assembled into S-function
products by greedy pattern peeling, falling back to raw binomials.
"""

from __future__ import annotations

from .coefficient import Coefficient, s_r
from .engine import Character, WeightConfig, YMonomial
from .errors import PoleError, ValidationError
from .monomial import Monomial, Q1, Q2
from .quiver import Quiver

# ---------------------------------------------------------------------------
# naming
# ---------------------------------------------------------------------------


def default_names(ch: Character) -> dict[str, str]:
    """LaTeX names for the free weight parameters of a character."""
    from .monomial import _gen_key

    xgens = sorted(
        {g for ym in ch.terms for _, a, _ in ym.entries for g in a.gens() if g.startswith("x(")},
        key=_gen_key,
    )
    if len(xgens) == 1:
        return {xgens[0]: "x"}
    return {g: f"x_{{{k}}}" for k, g in enumerate(xgens, start=1)}


_GEN_LATEX = {"q1": "q_1", "q2": "q_2", "mu": "\\mu"}


def _gen_latex(g: str, names: dict[str, str] | None) -> str:
    if names and g in names:
        return names[g]
    if g in _GEN_LATEX:
        return _GEN_LATEX[g]
    if g.startswith("qfrak(") and g.endswith(")"):
        return f"\\mathfrak{{q}}_{{{g[6:-1]}}}"
    if g.startswith("x(") and g.endswith(")"):
        return f"x_{{{g[2:-1]}}}"
    return g


def monomial_latex(
    m: Monomial, names: dict[str, str] | None = None, ratio: bool = False
) -> str:
    if m.is_unit:
        return "1"
    if ratio and any(e < 0 for _, e in m.exps) and any(e > 0 for _, e in m.exps):
        num = [(g, e) for g, e in m.exps if e > 0]
        den = [(g, -e) for g, e in m.exps if e < 0]
        fmt = lambda gs: " ".join(
            _gen_latex(g, names) + (f"^{{{e}}}" if e != 1 else "") for g, e in gs
        )
        return f"\\frac{{{fmt(num) or '1'}}}{{{fmt(den)}}}"
    parts = []
    for g, e in m.exps:
        s = _gen_latex(g, names)
        parts.append(s if e == 1 else f"{s}^{{{e}}}")
    return " ".join(parts)


def _split_shift(arg: Monomial, names: dict[str, str]) -> tuple[str, int, int] | None:
    """Write arg as base * q1^j * q2^k for a named base parameter."""
    rest = {}
    base = None
    for g, e in arg.exps:
        if g in ("q1", "q2"):
            rest[g] = e
        elif g in names and e == 1 and base is None:
            base = g
        else:
            return None
    if base is None:
        return None
    return names[base], rest.get("q1", 0), rest.get("q2", 0)


def y_symbol_latex(
    node: str, arg: Monomial, names: dict[str, str], single_node: bool
) -> str:
    prefix = "" if single_node else f"{node},"
    split = _split_shift(arg, names)
    if split is not None:
        b, j, k = split
        inner = b if j == k == 0 else f"{b};{j},{k}"
        return f"\\mathsf{{Y}}_{{{prefix}{inner}}}"
    return f"\\mathsf{{Y}}_{{{prefix}{monomial_latex(arg, names)}}}"


# ---------------------------------------------------------------------------
# S-product reconstruction
# ---------------------------------------------------------------------------


def _mono_size(m: Monomial) -> int:
    return sum(abs(e) for _, e in m.exps)


def s_decompose(c: Coefficient, max_r: int = 3):
    """Write a factored coefficient as integer * monomial * prod S_r(z)^p.

    Returns (integer, unit, [(r, z, power), ...], leftover factors).
    """
    if c.kind != "factored":
        raise ValidationError("S-decomposition needs a factored coefficient")
    integer, unit = c.integer, c.unit
    remaining = dict(c.factors)

    def candidates():
        seen = set()
        for a, p in sorted(remaining.items(), key=lambda t: (_mono_size(t[0]), t[0].sort_key())):
            if p >= 0:
                continue
            for r in range(1, max_r + 1):
                for z in (a, a.inverse(), a * Q1**r * Q2, (a * Q1**r * Q2).inverse()):
                    if (r, z) not in seen:
                        seen.add((r, z))
                        yield r, z

    def try_peel(r, z):
        nonlocal integer, unit
        try:
            s = s_r(r, z)
        except PoleError:
            return False
        if s.is_zero or s.kind != "factored":
            return False
        sign = 1
        for a, p in s.factors:
            if p > 0 and remaining.get(a, 0) <= -1:
                return False
            if p < 0 and remaining.get(a, 0) >= 1:
                return False
            if abs(remaining.get(a, 0)) < abs(p) or remaining.get(a, 0) * p < 0:
                return False
        for a, p in s.factors:
            remaining[a] = remaining[a] - p
            if remaining[a] == 0:
                del remaining[a]
        integer //= s.integer
        unit = unit / s.unit
        return True

    found: list[tuple[int, Monomial, int]] = []
    progress = True
    while progress and remaining:
        progress = False
        ordered = sorted(
            candidates(), key=lambda t: (_mono_size(t[1]), t[0], t[1].sort_key())
        )
        for r, z in ordered:
            if try_peel(r, z):
                for k, (r0, z0, p0) in enumerate(found):
                    if (r0, z0) == (r, z):
                        found[k] = (r0, z0, p0 + 1)
                        break
                else:
                    found.append((r, z, 1))
                progress = True
                break
    return integer, unit, found, tuple(sorted(remaining.items(), key=lambda t: t[0].sort_key()))


def coeff_latex(c: Coefficient, names: dict[str, str] | None = None) -> str:
    names = names or {}
    if c.is_zero:
        return "0"
    if c.is_one:
        return "1"
    if c.kind == "general":
        num = " + ".join(
            (f"{k} " if k != 1 else "") + monomial_latex(m, names)
            for m, k in sorted(c.num.items(), key=lambda t: t[0].sort_key())
        )
        den = " ".join(
            f"(1 - {monomial_latex(a, names)})^{{{p}}}" for a, p in c.den
        )
        return f"\\frac{{{num}}}{{{den}}}" if den else num
    integer, unit, sprod, leftover = s_decompose(c)
    parts = []
    if integer == -1:
        parts.append("-")
    elif integer != 1:
        parts.append(str(integer))
    if not unit.is_unit:
        parts.append(monomial_latex(unit, names))
    for r, z, p in sprod:
        head = "\\mathscr{S}" if r == 1 else f"\\mathscr{{S}}_{{{r}}}"
        s = f"{head}\\qty({monomial_latex(z, names, ratio=True)})"
        parts.append(s if p == 1 else f"{s}^{{{p}}}")
    num, den = [], []
    for a, p in leftover:
        (num if p > 0 else den).append(f"(1 - {monomial_latex(a, names)})^{{{abs(p)}}}")
    if den:
        parts.append(f"\\frac{{{' '.join(num) or '1'}}}{{{' '.join(den)}}}")
    else:
        parts.extend(num)
    out = " ".join(p for p in parts if p)
    return out or "1"


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------


def ym_latex(ym: YMonomial, names: dict[str, str], single_node: bool) -> str:
    if ym.is_unit:
        return "1"
    num, den = [], []
    for n, a, e in ym.entries:
        s = y_symbol_latex(n, a, names, single_node)
        if abs(e) != 1:
            s = f"{s}^{{{abs(e)}}}"
        (num if e > 0 else den).append(s)
    if den:
        return f"\\frac{{{' '.join(num) or '1'}}}{{{' '.join(den)}}}"
    return " ".join(num)


def character_latex(ch: Character, names: dict[str, str] | None = None) -> str:
    names = names if names is not None else default_names(ch)
    single = len(ch.quiver.nodes) == 1
    pieces = []
    for ym, c in ch.terms.items():
        cl = coeff_latex(c, names)
        yl = ym_latex(ym, names, single)
        if yl == "1":
            pieces.append(cl)
        elif cl == "1":
            pieces.append(yl)
        else:
            pieces.append(f"{cl} {yl}")
    return " + ".join(pieces)


def edge_label(node: str, arg: Monomial, names: dict[str, str]) -> str:
    split = _split_shift(arg, names)
    if split is not None:
        b, j, k = split
        return f"{node},{b}" if j == k == 0 else f"{node},{b};{j},{k}"
    return f"{node},{monomial_latex(arg, names)}"


def hasse_dot(ch: Character, names: dict[str, str] | None = None) -> str:
    """Graphviz digraph of the reflection flow with LaTeX labels."""
    names = names if names is not None else default_names(ch)
    single = len(ch.quiver.nodes) == 1
    order = sorted(ch.terms, key=lambda y: y.sort_key())
    ids = {ym: f"n{k}" for k, ym in enumerate(order)}
    lines = ["digraph hasse {", "  rankdir=TB;", '  node [shape=box, fontname="serif"];']
    for ym in order:
        label = ym_latex(ym, names, single).replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  {ids[ym]} [label="{label}"];')
    for src, dst, (i, x) in ch.edges:
        lab = edge_label(i, x, names).replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  {ids[src]} -> {ids[dst]} [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def character_to_json(ch: Character) -> dict:
    order = sorted(ch.terms, key=lambda y: y.sort_key())
    idx = {ym: k for k, ym in enumerate(order)}
    data = {
        "quiver": ch.quiver.to_json() | ({"name": ch.quiver.name} if ch.quiver.name else {}),
        "terms": [{"ym": ym.to_json(), "coeff": ch.terms[ym].to_json()} for ym in order],
        "edges": [
            {"src": idx[s], "dst": idx[d], "label": {"node": i, "arg": x.to_json()}}
            for s, d, (i, x) in ch.edges
            if s in idx and d in idx
        ],
    }
    if ch.wc is not None:
        data["weights"] = [
            {"node": i, "alpha": a, "param": p.to_json()} for i, a, p in ch.wc.entries
        ]
    return data


def character_from_json(data: dict) -> Character:
    quiver = Quiver.from_json(data["quiver"])
    terms = {
        YMonomial.from_json(t["ym"]): Coefficient.from_json(t["coeff"]) for t in data["terms"]
    }
    order = sorted(terms, key=lambda y: y.sort_key())
    edges = tuple(
        (
            order[e["src"]],
            order[e["dst"]],
            (str(e["label"]["node"]), Monomial.from_json(e["label"]["arg"])),
        )
        for e in data.get("edges", ())
    )
    wc = None
    if "weights" in data:
        wc = WeightConfig(
            tuple(
                (str(t["node"]), int(t["alpha"]), Monomial.from_json(t["param"]))
                for t in data["weights"]
            )
        )
    return Character(quiver, wc, terms, edges)
