"""Problem files: a line-oriented block format, query dispatch and reports.

Grammar (``#`` starts a comment, blank lines are ignored)::

    file      := block+
    block     := NAME NEWLINE line* "end" NEWLINE
    ring      := "vars" NAME+ | "field" FIELD | "laurent" ("yes"|"no")
    grading   := "weights" INT+                      (one row per line)
    action    := "order" INT | NAME "->" EXPR         (EXPR a scalar times a monomial)
    define    := NAME "=" EXPR                        (later lines may use earlier names)
    toric     := "rank" INT | "normal" LABEL INT+ | "generator" NAME INT+
    primes    := "target" LABEL+
               | "link" LABEL ("maps" LABEL [INT] | "zero" | "height2")
               | "krull" ("zero"|"nonzero"|"heuristic") EXPR
    comultiplication := NAME "=" EXPR | "counit" NAME SCALAR
    queries   := OP [ARG (";" ARG)*]

Blocks other than ``queries`` may appear at most once.  ``ring`` must come
before any block that uses expressions.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from .actions import (
    CyclicAction,
    MonomialAutomorphism,
    check_cyclic,
    exponent_box,
    invariants_truncated,
    is_invariant,
    principal_invariant_contract,
    semiinvariant_weight,
    unit_group_module,
)
from .certify import (
    ComultiplicationTable,
    NotPrimeWitness,
    determinantal_dimensions,
    verify_grouplike,
    verify_not_prime,
    verify_semiinvariant_failure,
)
from .cohomology import (
    class_group_of_quotient,
    fixed_locus_codim,
    h0_lattice,
    h1_lattice,
    h1_roots_of_unity,
)
from .divisors import (
    DivisorVector,
    PrimeLink,
    PrimeTable,
    ToricRing,
    contract_divisorial,
    divisor_of_monomial,
    is_principal,
    symbolic_power,
    toric_class_group,
)
from .eqfrac import (
    HeightOnePrime,
    colon_witness_search,
    pstar_flag_heuristic,
    qf_member_finite,
    qf_member_krull,
    qf_member_torus,
)
from .errors import CriterionInapplicable, InvfactError, MalformedInput, MalformedWitness, ParseError
from .fields import FieldDescriptor
from .intlinalg import AbelianGroupPresentation, IntMatrix
from .laurent import Grading, LaurentPoly, Ring, as_fraction, homogeneous_components, laurent_membership, reduce

BLOCKS = ("ring", "grading", "action", "define", "toric", "primes", "comultiplication", "queries")


@dataclass(frozen=True)
class Query:
    op: str
    args: Tuple[str, ...]
    line: int

    @property
    def text(self) -> str:
        return " ; ".join(self.args)


@dataclass
class ProblemFile:
    name: str
    ring: Optional[Ring] = None
    grading: Optional[Grading] = None
    action: Optional[CyclicAction] = None
    defs: Dict[str, object] = field(default_factory=dict)
    toric: Optional[ToricRing] = None
    prime_table: Optional[PrimeTable] = None
    krull_primes: List[HeightOnePrime] = field(default_factory=list)
    comultiplication: Optional[ComultiplicationTable] = None
    queries: List[Query] = field(default_factory=list)
    path: Optional[str] = None


@dataclass(frozen=True)
class Settings:
    degree_bound: int = 4
    box: Optional[Tuple[int, int]] = None
    field: Optional[FieldDescriptor] = None


# ---------------------------------------------------------------------------
# parsing


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _ints(words, no, what):
    try:
        return [int(w) for w in words]
    except ValueError:
        raise ParseError(f"{what} must be integers, got {' '.join(words)!r}", line=no) from None


class _Builder:
    def __init__(self, name, path, settings: Settings):
        self.p = ProblemFile(name=name, path=path)
        self.settings = settings
        self.seen = set()
        self._ring = {}
        self._action_lines = []
        self._order = None
        self._toric = {"normals": [], "labels": [], "gens": [], "gen_names": [], "rank": None}
        self._links = []
        self._targets = []
        self._krull = []
        self._comult = {}
        self._counit = {}
        self._comult_line = None

    def need_ring(self, no):
        if self.p.ring is None:
            raise ParseError("a ring block must come first", line=no)
        return self.p.ring

    def expr(self, text, no):
        ring = self.need_ring(no)
        try:
            return ring.parse(text, self.p.defs)
        except ParseError as exc:
            raise ParseError(exc.args[0], line=no, column=exc.column) from None
        except InvfactError as exc:
            raise ParseError(str(exc), line=no) from None

    # -- blocks ------------------------------------------------------------
    def ring_line(self, no, words):
        key, rest = words[0], words[1:]
        if key == "vars":
            self._ring["vars"] = rest
        elif key == "field":
            if len(rest) != 1:
                raise ParseError("field takes one descriptor", line=no)
            self._ring["field"] = rest[0]
        elif key == "laurent":
            if rest not in (["yes"], ["no"]):
                raise ParseError("laurent takes yes or no", line=no)
            self._ring["laurent"] = rest[0] == "yes"
        else:
            raise ParseError(f"unknown ring entry {key!r}", line=no, column=1)

    def ring_end(self, no):
        if "vars" not in self._ring or not self._ring["vars"]:
            raise ParseError("ring block needs a vars line", line=no)
        try:
            fd = self.settings.field or FieldDescriptor.parse(self._ring.get("field", "Q"))
            self.p.ring = Ring(fd, tuple(self._ring["vars"]), self._ring.get("laurent", True))
        except InvfactError as exc:
            raise ParseError(str(exc), line=no) from None

    def grading_line(self, no, words):
        if words[0] != "weights":
            raise ParseError(f"unknown grading entry {words[0]!r}", line=no, column=1)
        self._ring.setdefault("weights", []).append(_ints(words[1:], no, "weights"))

    def grading_end(self, no):
        rows = self._ring.get("weights")
        ring = self.need_ring(no)
        if not rows:
            raise ParseError("grading block needs at least one weights line", line=no)
        try:
            g = Grading(IntMatrix(rows))
            g.check(ring)
        except InvfactError as exc:
            raise ParseError(str(exc), line=no) from None
        self.p.grading = g

    def action_line(self, no, words, line):
        if words[0] == "order":
            if len(words) != 2:
                raise ParseError("order takes one integer", line=no)
            self._order = _ints(words[1:], no, "order")[0]
            return
        if "->" not in line:
            raise ParseError("expected 'order N' or 'VAR -> IMAGE'", line=no)
        var, img = (s.strip() for s in line.split("->", 1))
        self._action_lines.append((no, var, img))

    def action_end(self, no):
        ring = self.need_ring(no)
        if self._order is None:
            raise ParseError("action block needs an order line", line=no)
        images = {}
        for lno, var, img in self._action_lines:
            if var not in ring.names:
                raise ParseError(f"unknown variable {var!r}", line=lno, column=1)
            if var in images:
                raise ParseError(f"image of {var} given twice", line=lno)
            f = self.expr(img, lno)
            if not isinstance(f, LaurentPoly) or len(f) != 1:
                raise ParseError(f"image of {var} must be a scalar times a monomial", line=lno)
            ((e, c),) = f.terms.items()
            images[var] = (e, c)
        missing = [v for v in ring.names if v not in images]
        if missing:
            raise ParseError(f"no image given for {', '.join(missing)}", line=no)
        cols = [images[v][0] for v in ring.names]
        try:
            phi = MonomialAutomorphism(ring, IntMatrix.from_columns(cols, ring.nvars), [images[v][1] for v in ring.names])
            self.p.action = check_cyclic(phi, self._order)
        except InvfactError as exc:
            raise ParseError(str(exc), line=no) from None

    def define_line(self, no, words, line):
        if "=" not in line:
            raise ParseError("expected NAME = EXPR", line=no)
        name, text = (s.strip() for s in line.split("=", 1))
        ring = self.need_ring(no)
        if name in ring.names or name == "theta":
            raise ParseError(f"{name!r} shadows a ring variable", line=no, column=1)
        self.p.defs[name] = self.expr(text, no)

    def toric_line(self, no, words):
        t = self._toric
        key = words[0]
        if key == "rank":
            t["rank"] = _ints(words[1:2], no, "rank")[0]
        elif key == "normal":
            if len(words) < 3:
                raise ParseError("normal needs a label and coordinates", line=no)
            t["labels"].append(words[1])
            t["normals"].append(_ints(words[2:], no, "normal coordinates"))
        elif key == "generator":
            if len(words) < 3:
                raise ParseError("generator needs a name and coordinates", line=no)
            t["gen_names"].append(words[1])
            t["gens"].append(_ints(words[2:], no, "generator coordinates"))
        else:
            raise ParseError(f"unknown toric entry {key!r}", line=no, column=1)

    def toric_end(self, no):
        t = self._toric
        try:
            R = ToricRing(t["normals"], t["gens"], t["labels"], t["gen_names"])
        except InvfactError as exc:
            raise ParseError(str(exc), line=no) from None
        if t["rank"] is not None and t["rank"] != R.rank:
            raise ParseError(f"declared rank {t['rank']} but normals have length {R.rank}", line=no)
        self.p.toric = R

    def primes_line(self, no, words, line):
        key = words[0]
        if key == "target":
            self._targets.extend(words[1:])
        elif key == "link":
            if len(words) < 3:
                raise ParseError("link needs a prime and a kind", line=no)
            P, kind = words[1], words[2]
            if kind == "maps":
                if len(words) not in (4, 5):
                    raise ParseError("link P maps TARGET [m]", line=no)
                m = _ints(words[4:5], no, "m(P)")[0] if len(words) == 5 else 1
                self._links.append((no, P, ("maps", words[3], m)))
            elif kind in ("zero", "height2") and len(words) == 3:
                self._links.append((no, P, (kind,)))
            else:
                raise ParseError(f"unknown link kind {kind!r}", line=no)
        elif key == "krull":
            if len(words) < 3 or words[1] not in ("zero", "nonzero", "heuristic"):
                raise ParseError("krull (zero|nonzero|heuristic) EXPR", line=no)
            text = line.split(None, 2)[2]
            self._krull.append((no, words[1], text))
        else:
            raise ParseError(f"unknown primes entry {key!r}", line=no, column=1)

    def primes_end(self, no):
        if self._links:
            try:
                links = []
                for lno, P, spec in self._links:
                    links.append((P, PrimeLink.maps(spec[1], spec[2]) if spec[0] == "maps" else PrimeLink(spec[0])))
                self.p.prime_table = PrimeTable(tuple(links), tuple(self._targets))
            except InvfactError as exc:
                raise ParseError(str(exc), line=no) from None
        for lno, flag, text in self._krull:
            gen = self.expr(text, lno)
            if not isinstance(gen, LaurentPoly):
                raise ParseError("a krull prime needs a polynomial generator", line=lno)
            try:
                if flag == "heuristic":
                    if self.p.grading is None:
                        raise ParseError("heuristic flags need a grading block", line=lno)
                    P = pstar_flag_heuristic(gen, self.p.grading, self.settings.degree_bound, text)
                else:
                    P = HeightOnePrime(gen, flag == "nonzero", "trusted", text)
            except MalformedInput as exc:
                raise ParseError(str(exc), line=lno) from None
            self.p.krull_primes.append(P)

    def comult_line(self, no, words, line):
        if words[0] == "counit":
            if len(words) != 3:
                raise ParseError("counit NAME VALUE", line=no)
            self._counit[words[1]] = words[2]
            return
        if "=" not in line:
            raise ParseError("expected NAME = EXPR or counit NAME VALUE", line=no)
        name, text = (s.strip() for s in line.split("=", 1))
        self._comult[name] = text
        self._comult_line = no

    def comult_end(self, no):
        ring = self.need_ring(no)
        try:
            counit = {}
            for k, v in self._counit.items():
                c = ring.parse(v)
                if not isinstance(c, LaurentPoly) or any(c.terms.keys() - {(0,) * ring.nvars}):
                    raise MalformedInput(f"counit of {k} must be a scalar")
                counit[k] = c.coefficient((0,) * ring.nvars)
            missing = [n for n in ring.names if n not in counit]
            if missing:
                raise MalformedInput(f"no counit value for {', '.join(missing)}")
            self.p.comultiplication = ComultiplicationTable.from_strings(ring, self._comult, counit)
        except InvfactError as exc:
            raise ParseError(str(exc), line=no) from None

    def query_line(self, no, words, line):
        op = words[0]
        if op not in QUERY_OPS:
            raise ParseError(f"unknown query {op!r}", line=no, column=1)
        rest = line[len(op):].strip()
        args = tuple(a.strip() for a in rest.split(";")) if rest else ()
        if any(not a for a in args):
            raise ParseError("empty query argument", line=no)
        self.p.queries.append(Query(op, args, no))


def parse_text(text: str, name: str = "<string>", path: str = None, settings: Settings = Settings()) -> ProblemFile:
    b = _Builder(name, path, settings)
    block = None
    start = None
    any_block = False
    for no, line in _lines(text):
        words = line.split()
        if block is None:
            if len(words) != 1 or words[0] not in BLOCKS:
                raise ParseError(f"expected a block name ({', '.join(BLOCKS)}), got {line!r}", line=no, column=1)
            block = words[0]
            if block != "queries" and block in b.seen:
                raise ParseError(f"duplicate {block} block", line=no, column=1)
            b.seen.add(block)
            start = no
            any_block = True
            continue
        if words == ["end"]:
            end = getattr(b, f"{_short(block)}_end", None)
            if end:
                end(no)
            block = None
            continue
        handler = getattr(b, f"{_short(block)}_line")
        try:
            if block in ("ring", "grading", "toric"):
                handler(no, words)
            else:
                handler(no, words, line)
        except ParseError:
            raise
        except InvfactError as exc:
            raise ParseError(str(exc), line=no) from None
    if block is not None:
        raise ParseError(f"{block} block opened here is never closed", line=start)
    if not any_block:
        raise ParseError("empty problem file", line=1, column=1)
    return b.p


def _short(block):
    return {"comultiplication": "comult", "queries": "query"}.get(block, block)


def parse_problem(path, settings: Settings = Settings()) -> ProblemFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise MalformedInput(f"cannot read problem file {path}: {exc.strerror}") from None
    return parse_text(text, name=path.stem, path=str(path), settings=settings)


# ---------------------------------------------------------------------------
# results


@dataclass
class QueryResult:
    op: str
    input: str
    status: str  # ok | inconclusive | inapplicable | error
    result: object = None
    notes: List[str] = field(default_factory=list)
    seconds: float = 0.0

    def as_dict(self, timings=False):
        d = {"op": self.op, "input": self.input, "status": self.status, "result": self.result, "notes": list(self.notes)}
        if timings:
            d["seconds"] = round(self.seconds, 6)
        return d


@dataclass
class Report:
    problem: str
    results: List[QueryResult]

    def as_dict(self, timings=False):
        return {"problem": self.problem, "queries": [r.as_dict(timings) for r in self.results]}

    def to_json(self, timings=False) -> str:
        return json.dumps(self.as_dict(timings), indent=2, ensure_ascii=False) + "\n"

    def to_text(self, timings=False) -> str:
        out = [f"problem {self.problem}"]
        for r in self.results:
            head = f"  {r.op}" + (f" {r.input}" if r.input else "")
            out.append(f"{head}: [{r.status}] {_summary(r.result)}")
            for n in r.notes:
                out.append(f"      note: {n}")
            if timings:
                out.append(f"      time: {r.seconds:.4f}s")
        return "\n".join(out) + "\n"

    def exit_code(self, strict=False) -> int:
        if any(r.status == "error" for r in self.results):
            return 1
        if strict and any(r.status in ("inconclusive", "inapplicable") for r in self.results):
            return 3
        return 0


def _summary(result) -> str:
    if isinstance(result, dict):
        if "verdict" in result:
            return f"{result.get('display', '')} ({result['verdict']})".strip()
        if "display" in result:
            return result["display"]
        return ", ".join(f"{k}={_summary(v)}" for k, v in result.items())
    if isinstance(result, list):
        return "[" + ", ".join(_summary(v) for v in result) + "]"
    return str(result)


def group_result(G: AbelianGroupPresentation, verdict=False):
    d = G.as_dict()
    if verdict:
        d["verdict"] = "UFD" if G.is_trivial() else f"not UFD (Cl = {G})"
    return d


# ---------------------------------------------------------------------------
# query handlers; each returns (status, result, notes)


class _Ctx:
    def __init__(self, p: ProblemFile, settings: Settings):
        self.p = p
        self.settings = settings

    def ring(self):
        if self.p.ring is None:
            raise MalformedInput("this query needs a ring block")
        return self.p.ring

    def action(self):
        if self.p.action is None:
            raise MalformedInput("this query needs an action block")
        return self.p.action

    def grading(self):
        if self.p.grading is None:
            raise MalformedInput("this query needs a grading block")
        return self.p.grading

    def group(self):
        if self.p.action is not None:
            return self.p.action
        if self.p.grading is not None:
            return self.p.grading
        raise MalformedInput("this query needs an action or grading block")

    def toric(self):
        if self.p.toric is None:
            raise MalformedInput("this query needs a toric block")
        return self.p.toric

    def expr(self, text):
        return self.ring().parse(text, self.p.defs)

    def nargs(self, q: Query, lo, hi=None):
        hi = lo if hi is None else hi
        if not lo <= len(q.args) <= hi:
            want = str(lo) if lo == hi else f"{lo} to {hi}"
            raise MalformedInput(f"{q.op} takes {want} argument(s), got {len(q.args)}")


def _divisor(text: str, labels) -> DivisorVector:
    coeffs = {}
    for item in text.split():
        if "=" not in item:
            raise MalformedInput(f"expected LABEL=INT, got {item!r}")
        k, v = item.split("=", 1)
        try:
            coeffs[k] = int(v)
        except ValueError:
            raise MalformedInput(f"coefficient of {k} must be an integer") from None
    return DivisorVector.from_mapping(labels, coeffs)


def _q_check_cyclic(c, q):
    a = c.action()
    return "ok", {"order": a.order, "valid": True}, []


def _q_fixed_locus_codim(c, q):
    d = fixed_locus_codim(c.action())
    return "ok", {"codim": d, "unramified_in_codim_one": d >= 2}, []


def _q_h1_lattice(c, q):
    return "ok", group_result(h1_lattice(unit_group_module(c.action()).lattice_part)), []


def _q_h0_lattice(c, q):
    return "ok", group_result(h0_lattice(unit_group_module(c.action()).lattice_part)), []


def _q_h1_roots(c, q):
    a = c.action()
    fd = c.ring().field
    notes = [f"{'algebraically closed' if fd.closed else 'not algebraically closed'} field {fd.label}"]
    return "ok", group_result(h1_roots_of_unity(fd, a.order)), notes


def _q_unit_group(c, q):
    m = unit_group_module(c.action())
    return "ok", {"lattice_rank": m.lattice_part.rank, "matrix": m.lattice_part.matrix.tolist(), "field": m.field_part.label}, []


def _q_class_group(c, q):
    if c.p.action is not None:
        try:
            return "ok", group_result(class_group_of_quotient(c.p.action), verdict=True), ["via H^1(G, S^x)"]
        except CriterionInapplicable as exc:
            return "inapplicable", {"verdict": "inconclusive"}, [str(exc)]
    if c.p.toric is not None:
        return "ok", group_result(toric_class_group(c.p.toric), verdict=True), ["cokernel of the facet pairing"]
    raise MalformedInput("class_group needs an action or toric block")


def _q_toric_class_group(c, q):
    return "ok", group_result(toric_class_group(c.toric()), verdict=True), []


def _q_invariants(c, q):
    c.nargs(q, 0, 1)
    a = c.action()
    ring = c.ring()
    if q.args:
        lo, hi = parse_box(q.args[0])
    else:
        lo, hi = c.settings.box or ((-2, 2) if ring.laurent else (0, 2))
    if not ring.laurent:
        lo = max(lo, 0)
    res = invariants_truncated(a, exponent_box(ring.nvars, lo, hi))
    notes = []
    if res.dropped_orbits:
        notes.append(f"{len(res.dropped_orbits)} orbit(s) leave the box and were dropped")
    return "ok", {"box": [lo, hi], "dimension": len(res), "basis": [str(b) for b in res.basis]}, notes


def _q_is_invariant(c, q):
    c.nargs(q, 1)
    return "ok", is_invariant(c.expr(q.args[0]), c.group()), []


def _q_membership(c, q):
    c.nargs(q, 1)
    return "ok", laurent_membership(c.expr(q.args[0])), []


def _q_reduce(c, q):
    c.nargs(q, 1)
    r = reduce(as_fraction(c.expr(q.args[0])))
    return "ok", {"numerator": str(r.num), "denominator": str(r.den), "display": str(r)}, []


def _q_principal(c, q):
    c.nargs(q, 2)
    return "ok", principal_invariant_contract(c.expr(q.args[0]), c.expr(q.args[1]), c.group()), []


def _q_not_prime(c, q):
    c.nargs(q, 3)
    w = NotPrimeWitness(*(c.expr(a) for a in q.args))
    ok = verify_not_prime(w, c.group())
    return "ok", {"certified": ok}, [] if ok else ["witness is well formed but does not certify"]


def _q_semiinvariant_weight(c, q):
    c.nargs(q, 1)
    f = c.expr(q.args[0])
    if not isinstance(f, LaurentPoly):
        raise MalformedInput("semiinvariant_weight needs a Laurent polynomial")
    w = semiinvariant_weight(f, c.grading())
    return "ok", None if w is None else list(w), []


def _q_components(c, q):
    c.nargs(q, 1)
    f = c.expr(q.args[0])
    if not isinstance(f, LaurentPoly):
        raise MalformedInput("homogeneous_components needs a Laurent polynomial")
    parts = homogeneous_components(f, c.grading())
    return "ok", [{"degree": list(d), "component": str(g)} for d, g in parts.items()], []


def _q_divisor_of_monomial(c, q):
    c.nargs(q, 1)
    R = c.toric()
    words = q.args[0].split()
    if len(words) == 1 and words[0] in R.generator_names:
        m = R.generators[R.generator_names.index(words[0])]
    else:
        m = tuple(int(w) for w in words)
    return "ok", divisor_of_monomial(m, R).as_dict(), []


def _q_is_principal(c, q):
    c.nargs(q, 1)
    R = c.toric()
    w = is_principal(_divisor(q.args[0], R.labels), R)
    return "ok", {"principal": w is not None, "witness": None if w is None else list(w)}, []


def _q_symbolic_power(c, q):
    c.nargs(q, 2)
    labels = c.toric().labels if c.p.toric else c.p.prime_table.source_labels if c.p.prime_table else None
    if labels is None:
        raise MalformedInput("symbolic_power needs a toric or primes block")
    return "ok", symbolic_power(q.args[0], int(q.args[1]), labels).as_dict(), []


def _q_contract(c, q):
    c.nargs(q, 1)
    tbl = c.p.prime_table
    if tbl is None:
        raise MalformedInput("contract needs a primes block with links")
    return "ok", contract_divisorial(_divisor(q.args[0], tbl.source_labels), tbl).as_dict(), []


def _q_qf_torus(c, q):
    c.nargs(q, 1)
    return "ok", qf_member_torus(c.expr(q.args[0]), c.grading()), []


def _q_qf_finite(c, q):
    c.nargs(q, 1)
    return "ok", qf_member_finite(c.expr(q.args[0]), c.p.action), ["finite group: Q_F(S) = Q(S)"]


def _q_qf_krull(c, q):
    c.nargs(q, 1)
    primes = c.p.krull_primes
    if not primes:
        raise MalformedInput("qf_krull needs krull primes in a primes block")
    notes = []
    if any(P.source == "heuristic" for P in primes):
        notes.append("heuristic flag")
    return "ok", qf_member_krull(c.expr(q.args[0]), primes), notes


def _q_colon(c, q):
    c.nargs(q, 1, 2)
    bound = int(q.args[1]) if len(q.args) == 2 else c.settings.degree_bound
    h = colon_witness_search(c.expr(q.args[0]), c.grading(), bound)
    if h is None:
        return "inconclusive", {"witness": None, "degree_bound": bound}, ["inconclusive search"]
    return "ok", {"witness": str(h), "degree_bound": bound}, []


def _q_pstar(c, q):
    c.nargs(q, 1)
    P = pstar_flag_heuristic(c.expr(q.args[0]), c.grading(), c.settings.degree_bound)
    if P.pstar_nonzero is None:
        return "inconclusive", {"pstar_nonzero": None}, ["heuristic flag", "inconclusive search"]
    return "ok", {"pstar_nonzero": True}, ["heuristic flag"]


def _comult(c):
    if c.p.comultiplication is None:
        raise MalformedInput("this query needs a comultiplication block")
    return c.p.comultiplication


def _q_grouplike(c, q):
    c.nargs(q, 1)
    return "ok", verify_grouplike(_comult(c), c.expr(q.args[0])), []


def _q_semiinvariant_failure(c, q):
    c.nargs(q, 1, 2)
    over = q.args[1] if len(q.args) == 2 else "base"
    rep = verify_semiinvariant_failure(c.expr(q.args[0]), _comult(c), over)
    return "ok", rep.as_dict(), []


def _q_dimensions(c, q):
    c.nargs(q, 1)
    m, n, t = (int(x) for x in q.args[0].split())
    return "ok", determinantal_dimensions(m, n, t).as_dict(), ["formula evaluation"]


QUERY_OPS: Dict[str, Callable] = {
    "check_cyclic": _q_check_cyclic,
    "fixed_locus_codim": _q_fixed_locus_codim,
    "h1_lattice": _q_h1_lattice,
    "h0_lattice": _q_h0_lattice,
    "h1_roots_of_unity": _q_h1_roots,
    "unit_group_module": _q_unit_group,
    "class_group": _q_class_group,
    "toric_class_group": _q_toric_class_group,
    "invariants": _q_invariants,
    "is_invariant": _q_is_invariant,
    "laurent_membership": _q_membership,
    "reduce": _q_reduce,
    "principal_contract": _q_principal,
    "not_prime": _q_not_prime,
    "semiinvariant_weight": _q_semiinvariant_weight,
    "homogeneous_components": _q_components,
    "divisor_of_monomial": _q_divisor_of_monomial,
    "is_principal": _q_is_principal,
    "symbolic_power": _q_symbolic_power,
    "contract": _q_contract,
    "qf_torus": _q_qf_torus,
    "qf_finite": _q_qf_finite,
    "qf_krull": _q_qf_krull,
    "colon_witness": _q_colon,
    "pstar_flag": _q_pstar,
    "grouplike": _q_grouplike,
    "semiinvariant_failure": _q_semiinvariant_failure,
    "dimensions": _q_dimensions,
}

CLASS_GROUP_OPS = ("class_group", "toric_class_group")
QF_OPS = ("qf_torus", "qf_finite", "qf_krull", "colon_witness", "pstar_flag")


def parse_box(text: str) -> Tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise MalformedInput(f"box must look like LO:HI, got {text!r}") from None
    if lo > hi:
        raise MalformedInput(f"empty box {text!r}")
    return lo, hi


def run_query(p: ProblemFile, q: Query, settings: Settings = Settings()) -> QueryResult:
    t0 = time.perf_counter()
    try:
        status, result, notes = QUERY_OPS[q.op](_Ctx(p, settings), q)
    except MalformedWitness as exc:
        status, result, notes = "error", None, [f"malformed witness: {exc}"]
    except (InvfactError, ValueError, ZeroDivisionError) as exc:
        status, result, notes = "error", None, [f"{type(exc).__name__}: {exc}"]
    return QueryResult(q.op, q.text, status, result, notes, time.perf_counter() - t0)


def run(p: ProblemFile, settings: Settings = Settings(), ops=None) -> Report:
    """Answer every query in declared order; errors are captured per query."""
    results = [run_query(p, q, settings) for q in p.queries if ops is None or q.op in ops]
    return Report(p.name, results)


# ---------------------------------------------------------------------------
# golden files


def first_difference(expected, actual, path="") -> Optional[str]:
    """Path and values of the first field where two JSON-like values differ, or None."""
    if isinstance(expected, dict) and isinstance(actual, dict):
        for k in list(expected) + [k for k in actual if k not in expected]:
            sub = f"{path}.{k}" if path else k
            if k not in actual:
                return f"{sub}: missing in report"
            if k not in expected:
                return f"{sub}: unexpected field"
            d = first_difference(expected[k], actual[k], sub)
            if d:
                return d
        return None
    if isinstance(expected, list) and isinstance(actual, list):
        for i, (e, a) in enumerate(zip(expected, actual)):
            d = first_difference(e, a, f"{path}[{i}]")
            if d:
                return d
        if len(expected) != len(actual):
            return f"{path}: expected {len(expected)} entries, got {len(actual)}"
        return None
    if expected != actual:
        return f"{path}: expected {expected!r}, got {actual!r}"
    return None
