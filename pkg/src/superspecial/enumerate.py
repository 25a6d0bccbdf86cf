"""The cell sweep: for each cell of a case, specialise the Hasse-Witt system,
solve it over F_q and keep the smooth solutions.

The generic coefficient system (all a_i and b_j symbolic) is expanded once
per case.  Each of its 16 polynomials is stored split by the exponents of the
per-cell parameters (loop variables and b's), so specialising a cell is a
handful of table multiplications.
"""

import csv
import hashlib
import json
import os
import random
import time
from dataclasses import dataclass, field as dc_field
from importlib import resources

from .groebner import solve_codes
from .hasse_witt import is_hw_zero, symbolic_hw_coefficients
from .smoothness import NONSINGULAR, determine_nonsingularity, projective_dimension

REPORT_VERSION = 1
DEBUG_STRIDE = 100
CSV_COLUMNS = ("case", "cell", "b", "a", "cubic")


class CheckpointError(ValueError):
    pass


class CellSystem:
    """The per-case generic system, ready to be specialised cell by cell."""

    def __init__(self, spec):
        self.spec = spec
        t = time.perf_counter()
        coeffs = symbolic_hw_coefficients(spec.generic_P(), spec.Q)
        self.setup_s = time.perf_counter() - t
        R = coeffs[0].ring
        S = spec.solver_ring()
        self.ring = S
        self.params = list(spec.loop_vars) + list(spec.b_names)
        pidx = [R.index[v] for v in self.params]
        sidx = [R.index[v] for v in S.names]
        self.split = []
        for c in coeffs:
            d = {}
            for m, code in c.terms.items():
                e = R.decode(m)
                pe = tuple(e[i] for i in pidx)
                d.setdefault(pe, {})[S.encode([e[i] for i in sidx])] = code
            self.split.append(d)
        F = spec.field
        self._pow = [[F.cpow(c, e) for e in range(F.q)] for c in range(F.q)]

    def specialize(self, bvals, loop):
        """The 16 coefficient polynomials of the cell, as term dicts."""
        F = self.spec.field
        add, mul, q = F.add_table, F.mul_table, F.q
        vals = {**loop, **bvals}
        vals = [vals[v] for v in self.params]
        pw = self._pow
        cache = {}
        out = []
        for d in self.split:
            acc = {}
            for pe, terms in d.items():
                v = cache.get(pe)
                if v is None:
                    v = 1
                    for x, e in zip(vals, pe):
                        if e:
                            v = mul[v * q + pw[x][e]]
                    cache[pe] = v
                if not v:
                    continue
                row = v * q
                for m, c in terms.items():
                    r = add[acc.get(m, 0) * q + mul[row + c]]
                    if r:
                        acc[m] = r
                    else:
                        acc.pop(m, None)
            out.append(acc)
        return out


@dataclass
class CellResult:
    index: int
    b: tuple
    a: tuple
    solutions: list
    survivors: list
    t_mlt: float = 0.0
    t_gbslv: float = 0.0
    t_sing: float = 0.0


def _inconsistent(system):
    # a non-zero constant among the equations
    return any(len(t) == 1 and 0 in t for t in system)


def run_cell(cs, index, verify_dim=False):
    spec = cs.spec
    bvals, loop = spec.cell(index)
    t0 = time.perf_counter()
    system = cs.specialize(bvals, loop)
    t1 = time.perf_counter()
    sols = [] if _inconsistent(system) else solve_codes(cs.ring, system)
    t2 = time.perf_counter()
    survivors = []
    names = cs.ring.names
    for sol in sols:
        values = {**bvals, **loop, **dict(zip(names, sol))}
        P = spec.cubic(values)
        verdict = determine_nonsingularity([spec.Q, P], expected_dim=1, verify_dim=verify_dim)
        if verdict == NONSINGULAR:
            survivors.append({
                "cell": index,
                "b": [values[n] for n in spec.b_names],
                "a": [values[n] for n in spec.a_names],
                "cubic": str(P),
            })
    t3 = time.perf_counter()
    return CellResult(index, tuple(bvals[n] for n in spec.b_names),
                      tuple(loop[n] for n in spec.loop_vars), sols, survivors,
                      t1 - t0, t2 - t1, t3 - t2)


@dataclass
class EnumReport:
    case: str
    q: int
    p: int
    cells_total: int
    cells: list = dc_field(default_factory=list, repr=False)   # the swept cell indices, in order
    cursor: int = 0
    solutions: int = 0
    cells_with_solutions: int = 0
    survivors: list = dc_field(default_factory=list, repr=False)
    t_mlt: float = 0.0
    t_gbslv: float = 0.0
    t_sing: float = 0.0
    total_s: float = 0.0
    setup_s: float = 0.0
    mode: str = "full"
    seed: object = None

    @property
    def cells_done(self):
        return self.cursor

    @property
    def complete(self):
        return self.cursor == len(self.cells)

    def add(self, res):
        self.cursor += 1
        self.solutions += len(res.solutions)
        self.cells_with_solutions += bool(res.solutions)
        self.survivors.extend(res.survivors)
        self.t_mlt += res.t_mlt
        self.t_gbslv += res.t_gbslv
        self.t_sing += res.t_sing

    def merge(self, other):
        """Order-insensitive union of two reports over disjoint cell sets."""
        if (self.case, self.q) != (other.case, other.q):
            raise ValueError("cannot merge reports of different cases")
        out = EnumReport(self.case, self.q, self.p, self.cells_total,
                         self.cells[:self.cursor] + other.cells[:other.cursor],
                         self.cursor + other.cursor, self.solutions + other.solutions,
                         self.cells_with_solutions + other.cells_with_solutions,
                         sorted(self.survivors + other.survivors, key=_survivor_key),
                         self.t_mlt + other.t_mlt, self.t_gbslv + other.t_gbslv,
                         self.t_sing + other.t_sing, self.total_s + other.total_s,
                         max(self.setup_s, other.setup_s), self.mode, self.seed)
        return out

    def survivor_set(self):
        return {(s["cell"], tuple(s["a"])) for s in self.survivors}

    def to_json(self, field=None):
        n = max(self.cursor, 1)
        fmt = field.format_code if field is not None else str
        return {
            "version": REPORT_VERSION,
            "case": self.case,
            "q": self.q,
            "p": self.p,
            "mode": self.mode,
            "seed": self.seed,
            "cells_total": self.cells_total,
            "cells_swept": len(self.cells),
            "cells_done": self.cursor,
            "cells_digest": _digest(self.cells),
            "solutions": self.solutions,
            "cells_with_solutions": self.cells_with_solutions,
            "survivors": [{"cell": s["cell"], "b": [fmt(c) for c in s["b"]],
                           "a": [fmt(c) for c in s["a"]], "cubic": s["cubic"]}
                          for s in self.survivors],
            "timings": {
                "setup_s": self.setup_s,
                "t_mlt_avg": self.t_mlt / n,
                "t_gbslv_avg": self.t_gbslv / n,
                "t_sing_avg": self.t_sing / n,
                "total_s": self.total_s,
            },
        }


def _survivor_key(s):
    return (s["cell"], tuple(s["a"]))


def _digest(cells):
    h = hashlib.sha256()
    for c in cells:
        h.update(c.to_bytes(4, "little"))
    return h.hexdigest()[:16]


def report_schema():
    text = resources.files("superspecial").joinpath("report.schema.json").read_text()
    return json.loads(text)


def validate_report(data):
    import jsonschema
    jsonschema.validate(data, report_schema())


def write_report(report, path, field=None):
    data = report.to_json(field)
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(data, fh, indent=1)
    os.replace(tmp, path)
    return data


def write_csv(report, path, field=None):
    data = report.to_json(field)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for s in data["survivors"]:
            w.writerow([report.case, s["cell"], " ".join(s["b"]), " ".join(s["a"]), s["cubic"]])


def _save_checkpoint(report, path):
    data = {
        "version": REPORT_VERSION, "case": report.case, "q": report.q,
        "cells": report.cells, "cursor": report.cursor, "solutions": report.solutions,
        "cells_with_solutions": report.cells_with_solutions, "survivors": report.survivors,
        "t": [report.t_mlt, report.t_gbslv, report.t_sing, report.total_s, report.setup_s],
        "mode": report.mode, "seed": report.seed,
    }
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(data, fh)
    os.replace(tmp, path)


def _load_checkpoint(path, spec, cells):
    with open(path) as fh:
        data = json.load(fh)
    if data.get("version") != REPORT_VERSION:
        raise CheckpointError(f"checkpoint {path} has an unknown format version")
    if data["case"] != spec.case_id or data["q"] != spec.q:
        raise CheckpointError(f"checkpoint {path} belongs to case {data['case']}")
    if data["cells"] != cells:
        raise CheckpointError(f"checkpoint {path} was written for a different cell list")
    rep = EnumReport(spec.case_id, spec.q, spec.p, spec.cell_count, cells, data["cursor"],
                     data["solutions"], data["cells_with_solutions"], data["survivors"],
                     *data["t"], mode=data["mode"], seed=data["seed"])
    return rep


# worker-side state for the process pool
_WORKER = {}


def _debug_cell(index, debug):
    # debug mode re-checks the curve dimension on 1% of the cells
    return debug and index % DEBUG_STRIDE == 0


def _init_worker(case_id, debug=False):
    from .families import case_spec
    _WORKER["cs"] = CellSystem(case_spec(case_id))
    _WORKER["debug"] = debug


def _work(index):
    return run_cell(_WORKER["cs"], index, _debug_cell(index, _WORKER["debug"]))


def enumerate_case(spec, cells=None, jobs=1, checkpoint=None, checkpoint_every=256,
                   progress=None, mode="full", seed=None, system=None, debug=False):
    """Sweep ``cells`` (default: every cell of the case) and aggregate.

    With ``checkpoint`` set, the partial report is persisted every
    ``checkpoint_every`` cells and an existing checkpoint is resumed.
    ``progress(report, elapsed)`` is called at each checkpoint.  With
    ``debug`` the dimension of each survivor is re-verified on 1% of the cells.
    """
    cells = list(range(spec.cell_count)) if cells is None else sorted(set(int(c) for c in cells))
    for c in cells:
        if not 0 <= c < spec.cell_count:
            raise IndexError(f"cell {c} outside [0, {spec.cell_count})")
    report = None
    if checkpoint and os.path.exists(checkpoint):
        report = _load_checkpoint(checkpoint, spec, cells)
    if report is None:
        report = EnumReport(spec.case_id, spec.q, spec.p, spec.cell_count, cells, mode=mode, seed=seed)
    todo = cells[report.cursor:]
    if not todo:
        return report
    t_start = time.perf_counter()
    base_total = report.total_s

    def tick(res):
        report.add(res)
        report.total_s = base_total + time.perf_counter() - t_start
        if report.cursor % checkpoint_every == 0 or report.complete:
            if checkpoint:
                _save_checkpoint(report, checkpoint)
            if progress:
                progress(report, report.total_s)

    if jobs and jobs > 1:
        import multiprocessing as mp
        with mp.get_context("fork").Pool(jobs, _init_worker, (spec.case_id, debug)) as pool:
            report.setup_s = report.setup_s or 0.0
            for res in pool.imap(_work, todo, chunksize=4):
                tick(res)
    else:
        cs = system or CellSystem(spec)
        report.setup_s = cs.setup_s
        for index in todo:
            tick(run_cell(cs, index, _debug_cell(index, debug)))
    report.survivors.sort(key=_survivor_key)
    return report


def sample_cells(spec, size, seed):
    if size > spec.cell_count:
        raise ValueError(f"sample of {size} exceeds the {spec.cell_count} cells of {spec.case_id}")
    return sorted(random.Random(seed).sample(range(spec.cell_count), size))


def sample_sweep(spec, size, seed, **kwargs):
    """Seeded uniform sample of cells, run through the same pipeline."""
    return enumerate_case(spec, sample_cells(spec, size, seed), mode="sample", seed=seed, **kwargs)


def verify_survivor(P, Q, p=None):
    """Superspecial and non-singular, recomputed from scratch."""
    if P.degree() != 3 or Q.degree() != 2:
        raise ValueError("expected a cubic P and a quadric Q")
    if not is_hw_zero(P, Q, p):
        return False
    if projective_dimension([Q, P]) != 1:
        return False
    return determine_nonsingularity([Q, P], expected_dim=1) == NONSINGULAR
