"""Identity suites over seeded sample points, and their reports."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from typing import Iterable

from moufang import loopgeom as lg
from moufang import malcev as mc
from moufang.loopgeom import ChartSingularityError, LocalLoop
from moufang.octonion import OCTONION_LOOP, derive_structure_constants
from moufang.sampling import SampleConfig, in_mode, sample_points, sample_vectors
from moufang.scalars import EXACT, FLOAT, abs_max, check_mode, format_scalar

FLOAT_TOL = 1e-9
SUITES = ("gle", "mc", "yamaguti", "integrability", "reductivity", "prop11", "hidden", "sy")


@dataclass
class Record:
    suite: str
    identity: str
    point_index: int | None
    defect: str
    status: str
    witness: dict | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["witness"] is None:
            del d["witness"]
        return d


@dataclass
class SuiteReport:
    suite: str
    mode: str
    seed: int
    points: int
    records: list = field(default_factory=list)
    resampled: int = 0
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.records)

    def summary(self) -> dict:
        """Per identity: status, largest defect seen, first failing witness."""
        out = {}
        for r in self.records:
            s = out.setdefault(r.identity, {"status": "pass", "checks": 0, "max_defect": "0", "witness": None})
            s["checks"] += 1
            if r.status == "info":
                s["status"] = "info"
            if _defect_value(r.defect) > _defect_value(s["max_defect"]):
                s["max_defect"] = r.defect
            if r.status == "fail" and s["status"] != "fail":
                s["status"] = "fail"
                s["witness"] = {"point_index": r.point_index, **(r.witness or {})}
        return out

    def verdicts(self) -> list:
        return [(r.suite, r.identity, r.point_index, r.status) for r in self.records]

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r.to_dict(), sort_keys=True) + "\n" for r in self.records)

    def human(self) -> str:
        lines = [
            f"suite={self.suite} mode={self.mode} seed={self.seed} points={self.points} "
            f"resampled={self.resampled} wall={self.wall_time:.2f}s -> {'PASS' if self.passed else 'FAIL'}"
        ]
        for ident, s in self.summary().items():
            line = f"  {ident:<14} {s['status']:<5} checks={s['checks']:<5} max|defect|={s['max_defect']}"
            if s["witness"]:
                line += f" witness={json.dumps(s['witness'], sort_keys=True)}"
            lines.append(line)
        return "\n".join(lines)


def _defect_value(text: str) -> float:
    from fractions import Fraction

    try:
        return float(Fraction(text))
    except ValueError:
        return float(text)


def _flatten(obj) -> Iterable:
    if isinstance(obj, lg.FieldValue):
        yield from obj.coeffs
    elif isinstance(obj, (tuple, list)):
        for item in obj:
            yield from _flatten(item)
    else:
        yield obj


def _fmt_vec(v) -> list:
    return [format_scalar(c) for c in v]


class Checker:
    """Runs identity suites for one loop, mode and sampling configuration."""

    def __init__(self, loop: LocalLoop = OCTONION_LOOP, mode: str = EXACT, cfg: SampleConfig | None = None,
                 C: mc.StructureConstants | None = None, per_point: int = 1):
        self.loop = loop
        self.mode = check_mode(mode)
        self.cfg = cfg or SampleConfig()
        exact_C = C.to_mode(EXACT) if C is not None else derive_structure_constants(loop, EXACT)
        self.C_exact = exact_C
        self.C = exact_C.to_mode(mode)
        self.table = mc.ternary_table(exact_C).to_mode(mode)
        self.per_point = per_point
        self.resampled = 0

    # helpers -----------------------------------------------------------
    def _status(self, defect) -> str:
        if self.mode == EXACT:
            return "pass" if not defect else "fail"
        return "pass" if defect <= FLOAT_TOL else "fail"

    def record(self, suite, identity, index, value, witness=None, info=False) -> Record:
        d = abs_max(_flatten(value))
        status = "info" if info else self._status(d)
        if self.mode == FLOAT:
            d = float(d)
        return Record(suite, identity, index, format_scalar(d), status, witness if status == "fail" else None)

    def points(self, n, stream="g", support=None) -> list:
        return in_mode(sample_points(n, self.cfg, stream, self.loop.dim, support), self.mode)

    def vectors(self, n, stream, support=None) -> list:
        return in_mode(sample_vectors(n, self.cfg, stream, self.loop.dim, support), self.mode)

    def pairs(self, n) -> list:
        """``n`` pairs ``(g, h)`` whose product stays in the chart; others are resampled."""
        gs = sample_points(4 * n + 8, self.cfg, "g", self.loop.dim)
        hs = sample_points(4 * n + 8, self.cfg, "h", self.loop.dim)
        out = []
        for g, h in zip(gs, hs):
            if len(out) == n:
                break
            try:
                self.loop(g, h)
            except (ChartSingularityError, ZeroDivisionError):
                self.resampled += 1
                continue
            out.append((in_mode(g, self.mode), in_mode(h, self.mode)))
        return out

    # suites --------------------------------------------------------------
    def gle(self, n):
        for idx, (g, h) in enumerate(self.pairs(n)):
            wit = {"g": _fmt_vec(g), "h": _fmt_vec(h)}
            for key, mat in zip(("1a", "1b", "1c"), lg.gle_defect(self.loop, g, h, self.mode)):
                yield self.record("gle", key, idx, mat, wit)
            gh = tuple(self.loop(g, h))
            sums = []
            for p in (g, h, gh):
                F = lg.aux_frames(self.loop, p, self.mode)
                sums.append([[a + b + c for a, b, c in zip(ru, rv, rw)] for ru, rv, rw in zip(F.u, F.v, F.w)])
            yield self.record("gle", "2", idx, sums, wit)

    def mc(self, n):
        xs, ys = self.vectors(n, "x"), self.vectors(n, "y")
        for idx, g in enumerate(self.points(n)):
            x, y = xs[idx], ys[idx]
            wit = {"g": _fmt_vec(g), "x": _fmt_vec(x), "y": _fmt_vec(y)}
            for key, val in lg.maurer_cartan_defect(self.loop, g, x, y, self.C).items():
                yield self.record("mc", key, idx, val, wit)

    def yamaguti(self, n):
        lin, via = lg.yamaguti_constants_routes(self.loop, self.C, self.mode)
        yield self.record("yamaguti", "7", None, _diff(lin, via))
        direct = mc.ternary_table(self.C).Y
        yield self.record("yamaguti", "7-ternary", None, _diff(lin, direct))
        xs, ys = self.vectors(n, "x"), self.vectors(n, "y")
        n_ = self.loop.dim
        for idx, g in enumerate(self.points(n)):
            x, y = xs[idx], ys[idx]
            wit = {"g": _fmt_vec(g), "x": _fmt_vec(x), "y": _fmt_vec(y)}
            yield self.record("yamaguti", "6", idx, lg.lemma6_defect(self.loop, g, self.C), {"g": _fmt_vec(g)})
            Yt = lg.yamaguti_functions(self.loop, g)
            Yxy = lg.yamagutian_field(self.loop, g, x, y)
            Yyx = lg.yamagutian_field(self.loop, g, y, x)
            contracted = [sum(Yt[s][j][k] * x[j] * y[k] for j in range(n_) for k in range(n_)) for s in range(n_)]
            yield self.record("yamaguti", "Y-routes", idx, [a - b for a, b in zip(Yxy.coeffs, contracted)], wit)
            yield self.record("yamaguti", "Y-antisym", idx, Yxy + Yyx, wit)

    def integrability(self, n):
        for idx, (g, h) in enumerate(self.pairs(n)):
            wit = {"g": _fmt_vec(g), "h": _fmt_vec(h)}
            yield self.record("integrability", "5", idx, lg.integrability_defect(self.loop, g, h), wit)
            yield self.record(
                "integrability", "5-printed", idx, lg.integrability_defect(self.loop, g, h, printed=True), info=True
            )

    def reductivity(self, n):
        m = n * self.per_point
        xs, ys, zs = self.vectors(m, "x"), self.vectors(m, "y"), self.vectors(m, "z")
        for idx, g in enumerate(self.points(n)):
            for t in range(self.per_point):
                x, y, z = xs[idx * self.per_point + t], ys[idx * self.per_point + t], zs[idx * self.per_point + t]
                wit = {"g": _fmt_vec(g), "x": _fmt_vec(x), "y": _fmt_vec(y), "z": _fmt_vec(z)}
                vals = lg.reductivity_defect(self.loop, g, x, y, z, self.table)
                for key, val in vals.items():
                    yield self.record("reductivity", key, idx, val, wit)
                yield self.record("reductivity", "9c=9a+9b", idx, vals["9c"] - (vals["9a"] + vals["9b"]), wit)

    def prop11(self, n):
        xs, ys = self.vectors(n, "x"), self.vectors(n, "y")
        for idx, g in enumerate(self.points(n)):
            x, y = xs[idx], ys[idx]
            wit = {"g": _fmt_vec(g), "x": _fmt_vec(x), "y": _fmt_vec(y)}
            for key, val in lg.prop11_defect(self.loop, g, x, y, self.C).items():
                yield self.record("prop11", key, idx, val, wit)
            F = lg.aux_frames(self.loop, g, self.mode)
            lp, rp, mp = lg.conjugated_frames(F)
            inv = [
                [[3 * F.w[s][j] - (rp[s][j] - lp[s][j]) for j in range(len(g))] for s in range(len(g))],
                [[3 * F.u[s][j] - (mp[s][j] - rp[s][j]) for j in range(len(g))] for s in range(len(g))],
                [[3 * F.v[s][j] - (lp[s][j] - mp[s][j]) for j in range(len(g))] for s in range(len(g))],
            ]
            yield self.record("prop11", "conj-inverse", idx, inv, {"g": _fmt_vec(g)})

    def hidden(self, n, routes=("Y",)):
        m = n * self.per_point
        vs = {k: self.vectors(m, k) for k in "xyzw"}
        for idx, g in enumerate(self.points(n)):
            for t in range(self.per_point):
                x, y, z, w = (vs[k][idx * self.per_point + t] for k in "xyzw")
                wit = {"g": _fmt_vec(g), "x": _fmt_vec(x), "y": _fmt_vec(y), "z": _fmt_vec(z), "w": _fmt_vec(w)}
                for route in routes:
                    val = lg.hidden_assoc_defect(self.loop, g, x, y, z, w, self.table, self.C, route)
                    yield self.record("hidden", "12" if route == "Y" else f"12[{route}]", idx, val, wit)

    def sy(self, n):
        found = mc.sagle_yamaguti_scan(self.C, self.table)
        if found is None:
            yield self.record("sy", "13", None, [0])
        else:
            quad, val = found
            yield self.record("sy", "13", None, val, {"basis_quadruple": list(quad)})
        xs = {k: self.vectors(n, "sy-" + k) for k in "xyzw"}
        for idx in range(n):
            x, y, z, w = (xs[k][idx] for k in "xyzw")
            val = mc.rep_commutator_defect(self.C, x, y, z, w, self.table)
            yield self.record("sy", "rep", idx, val, {k: _fmt_vec(xs[k][idx]) for k in "xyzw"})

    def run(self, suite: str, n: int) -> list:
        if suite == "all":
            return [r for s in SUITES for r in self.run(s, n)]
        if suite not in SUITES:
            raise ValueError(f"unknown suite {suite!r}")
        if suite == "hidden":
            return list(self.hidden(n, routes=("Y", "L+", "R+", "M+")))
        return list(getattr(self, suite)(n))


def _diff(a, b):
    if isinstance(a, (tuple, list)):
        return [_diff(x, y) for x, y in zip(a, b)]
    return a - b


def run_suite(suite: str, points: int, seed: int = 0, mode: str = EXACT, C=None, per_point: int = 1,
              include_origin: bool = True) -> SuiteReport:
    """Run one suite (or ``"all"``) and time it."""
    if points < 1:
        raise ValueError("points must be >= 1")
    start = time.perf_counter()
    checker = Checker(mode=mode, cfg=SampleConfig(seed=seed, include_origin=include_origin), C=C, per_point=per_point)
    records = checker.run(suite, points)
    return SuiteReport(suite, mode, seed, points, records, checker.resampled, time.perf_counter() - start)
