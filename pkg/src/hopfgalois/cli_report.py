"""Command line front end: Lie algebra files, the full pipeline, and xi scans.

Input files are TOML (or JSON with the same keys)::

    p = 3
    dim = 2
    basis = ["e0", "e1"]
    bracket = [{ i = 0, j = 1, coeffs = [0, 1] }]
    pmap = [[1, 0], [0, 0]]
    xi = [0, 1]
    parameters = { family = "example1" }

Only entries with ``i < j`` are listed; antisymmetry is filled in.  Reports
are plain dictionaries, rendered as JSON or as text tables; they are
byte-for-byte deterministic unless ``--timings`` is given.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import endo_transform as et
from . import fp_linalg as fl
from . import galois as ga
from . import hopf_core as hc
from . import quantum_lie as ql
from . import restricted_lie as rl
from . import worked_examples as wx
from .checks import CheckReport

EXIT_OK = 0
EXIT_NOT_GALOIS = 1
EXIT_ASSERTION = 2
EXIT_INPUT = 3

SCAN_GATE = 2**16
GROUPLIKE_GATE = 2**20
FIXTURES = ("example1", "example2", "abelian", "zero")


class InputError(ValueError):
    """Malformed or inconsistent input; maps to exit code 3."""


# ---------------------------------------------------------------------------
# Lie algebra files


@dataclass
class LieSpec:
    p: int
    dim: int
    basis: list[str]
    bracket: list[dict]
    pmap: list[list[int]]
    xi: list[int] | None = None
    parameters: dict = field(default_factory=dict)

    def lie(self) -> rl.RestrictedLie:
        entries = {(e["i"], e["j"]): e["coeffs"] for e in self.bracket}
        return rl.RestrictedLie.from_brackets(self.p, self.dim, entries, np.array(self.pmap, dtype=np.int64).reshape(self.dim, self.dim), self.basis)

    def as_dict(self) -> dict:
        out = {"p": self.p, "dim": self.dim, "basis": self.basis, "bracket": self.bracket, "pmap": self.pmap}
        if self.xi is not None:
            out["xi"] = self.xi
        if self.parameters:
            out["parameters"] = self.parameters
        return out


def _int_vector(value, length: int, where: str, p: int) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise InputError(f"{where}: expected a list of integers")
    if len(value) != length:
        raise InputError(f"{where}: expected {length} entries, got {len(value)}")
    return [v % p for v in value]


def parse_spec(data: dict, source: str = "<input>") -> LieSpec:
    """Validate a decoded document; messages name the offending field."""
    if not isinstance(data, dict):
        raise InputError(f"{source}: top level must be a table")
    for key in ("p", "dim", "pmap"):
        if key not in data:
            raise InputError(f"{source}: missing field '{key}'")
    p, dim = data["p"], data["dim"]
    if not isinstance(p, int) or not fl.is_prime(p) or p > fl.MAX_PRIME:
        raise InputError(f"{source}: field 'p': {p!r} is not a prime <= {fl.MAX_PRIME}")
    if not isinstance(dim, int) or dim < 0:
        raise InputError(f"{source}: field 'dim': expected a nonnegative integer")
    basis = data.get("basis", [f"e{i}" for i in range(dim)])
    if not isinstance(basis, list) or len(basis) != dim or not all(isinstance(b, str) for b in basis):
        raise InputError(f"{source}: field 'basis': expected {dim} names")
    if len(set(basis)) != dim:
        raise InputError(f"{source}: field 'basis': names must be distinct")
    bracket = []
    seen = set()
    for k, entry in enumerate(data.get("bracket", [])):
        where = f"{source}: field 'bracket[{k}]'"
        if not isinstance(entry, dict) or not {"i", "j", "coeffs"} <= entry.keys():
            raise InputError(f"{where}: expected keys i, j, coeffs")
        i, j = entry["i"], entry["j"]
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < j < dim):
            raise InputError(f"{where}: need 0 <= i < j < {dim}, got i={i!r}, j={j!r}")
        if (i, j) in seen:
            raise InputError(f"{where}: duplicate entry for ({i}, {j})")
        seen.add((i, j))
        bracket.append({"i": i, "j": j, "coeffs": _int_vector(entry["coeffs"], dim, f"{where}.coeffs", p)})
    rows = data["pmap"]
    if not isinstance(rows, list) or len(rows) != dim:
        got = len(rows) if isinstance(rows, list) else type(rows).__name__
        raise InputError(f"{source}: field 'pmap': expected {dim} rows, got {got}")
    pmap = [_int_vector(r, dim, f"{source}: field 'pmap[{k}]'", p) for k, r in enumerate(rows)]
    xi = data.get("xi")
    if xi is not None:
        xi = _int_vector(xi, dim, f"{source}: field 'xi'", p)
    params = data.get("parameters", {})
    if not isinstance(params, dict):
        raise InputError(f"{source}: field 'parameters': expected a table")
    return LieSpec(p, dim, list(basis), bracket, pmap, xi, dict(params))


def load_spec(path: str | Path) -> LieSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        if path.suffix == ".json":
            data = json.loads(text)
        else:
            data = tomllib.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise InputError(f"{path}: {exc}") from exc
    return parse_spec(data, str(path))


def _toml_value(v) -> str:
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, list):
        return "[" + ", ".join(_toml_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{ " + ", ".join(f"{k} = {_toml_value(x)}" for k, x in v.items()) + " }"
    return str(v)


def render_toml(spec: LieSpec) -> str:
    lines = [f"p = {spec.p}", f"dim = {spec.dim}", f"basis = {_toml_value(spec.basis)}"]
    if spec.bracket:
        lines.append("bracket = [")
        lines += [f"  {_toml_value(e)}," for e in spec.bracket]
        lines.append("]")
    else:
        lines.append("bracket = []")
    lines.append("pmap = [")
    lines += [f"  {_toml_value(r)}," for r in spec.pmap]
    lines.append("]")
    if spec.xi is not None:
        lines.append(f"xi = {_toml_value(spec.xi)}")
    if spec.parameters:
        lines.append(f"parameters = {_toml_value(spec.parameters)}")
    return "\n".join(lines) + "\n"


def spec_from_lie(g: rl.RestrictedLie, xi=None, parameters=None) -> LieSpec:
    n = g.n
    bracket = [
        {"i": i, "j": j, "coeffs": g.bracket[i, j].tolist()}
        for i, j in itertools.combinations(range(n), 2)
        if g.bracket[i, j].any()
    ]
    xi = None if xi is None else [int(v) % g.p for v in xi]
    return LieSpec(g.p, n, list(g.names), bracket, g.pmap.tolist(), xi, dict(parameters or {}))


def fixture_spec(name: str, p: int = 3, a: int = 1, b: int = 1, n: int = 2) -> LieSpec:
    if not fl.is_prime(p):
        raise InputError(f"p = {p} is not prime")
    if name == "example1":
        return spec_from_lie(wx.example1(p), wx.XI_EXAMPLE1, {"family": "example1"})
    if name == "example2":
        try:
            g = wx.example2(p, a, b)
        except wx.ParameterError as exc:
            raise InputError(str(exc)) from exc
        return spec_from_lie(g, wx.XI_EXAMPLE2, {"family": "example2", "a": a % p, "b": b % p})
    if name == "abelian":
        return spec_from_lie(wx.abelian(p, n), [0] * n, {"family": "abelian"})
    if name == "zero":
        return spec_from_lie(wx.zero(p), [], {"family": "zero"})
    raise InputError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")


def bundled_fixture(name: str) -> str:
    """Text of a fixture file shipped with the package."""
    return resources.files("hopfgalois").joinpath("fixtures", f"{name}.toml").read_text(encoding="utf-8")


# ---------------------------------------------------------------------------
# formatting helpers


def signed(c: int, p: int) -> int:
    """Balanced representative of ``c`` mod ``p``."""
    c %= p
    return c - p if c > p // 2 else c


def linear_combination(coeffs, names, p: int) -> str:
    terms = []
    for c, name in zip(coeffs, names):
        c = signed(int(c), p)
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        terms.append(("-" if c < 0 else "+", mag + name))
    if not terms:
        return "0"
    head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    return head + "".join(f" {s} {t}" for s, t in terms[1:])


def _named(prefix: str, m: int) -> list[str]:
    return [f"{prefix}{i}" for i in range(m)]


class Stopwatch:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.laps: dict[str, float] = {}
        self._t = time.perf_counter()

    def lap(self, name: str) -> None:
        now = time.perf_counter()
        self.laps[name] = round(now - self._t, 3)
        self._t = now


# ---------------------------------------------------------------------------
# the pipeline


class Assertions:
    """Named pass/fail results of every suite that ran, grouped by suite."""

    def __init__(self):
        self.suites: dict[str, dict[str, bool]] = {}

    def add(self, rep: CheckReport, name: str | None = None) -> bool:
        self.suites[name or rep.title] = {k: bool(v) for k, v in rep.checks.items()}
        return rep.ok

    def single(self, suite: str, check: str, ok: bool) -> bool:
        self.suites.setdefault(suite, {})[check] = bool(ok)
        return bool(ok)

    @property
    def failures(self) -> list[str]:
        return [f"{s}.{c}" for s, checks in self.suites.items() for c, ok in checks.items() if not ok]


def expected_antipode_order(g: rl.RestrictedLie) -> int:
    if g.n == 0:
        return 1
    return 2 if rl.is_unimodular(g) else 2 * g.p


def _paper_pair(spec: LieSpec, g, xi, ctx, Ux, adg):
    """Dual bases from the worked tables when the input is one of the worked examples."""
    fam = spec.parameters.get("family")
    if fam == "example1" and g.n == 2 and list(xi) == list(wx.XI_EXAMPLE1):
        tau, sigma = wx.example1_tables(Ux)
    elif fam == "example2" and g.n == 4 and list(xi) == list(wx.XI_EXAMPLE2):
        tau, sigma = wx.example2_tables(Ux, spec.parameters["a"], spec.parameters["b"])
    else:
        return None
    pair = ql.pair_from_maps(ctx, adg, sigma, tau)
    return pair if pair.report.ok else None


def build_report(spec: LieSpec, xi=None, verify: str = "full", timings: bool = False) -> tuple[dict, int]:
    """Run the whole construction for ``U_xi(g)``; returns ``(report, exit code)``."""
    full = verify == "full"
    clock = Stopwatch(timings)
    g = spec.lie()
    p, n = g.p, g.n
    xi = list(xi if xi is not None else (spec.xi if spec.xi is not None else [0] * n))
    if len(xi) != n:
        raise InputError(f"xi has {len(xi)} entries, expected {n}")
    xi = [v % p for v in xi]
    checks = Assertions()
    if not checks.add(rl.check_restricted(g)):
        raise InputError(f"restricted Lie axioms fail: {', '.join(checks.failures)}")
    beta, beta_nd = rl.beta_form(g, xi)
    unimodular = rl.is_unimodular(g)
    report: dict = {
        "command": "build",
        "input": {"p": p, "dim_g": n, "basis": list(g.names), "xi": xi},
        "lie": {
            "unimodular": unimodular,
            "alpha_on_basis": rl.modular_character(g).tolist(),
            "beta_nondegenerate": beta_nd,
            "derived_p_nilpotent": rl.derived_pnilpotent(g),
        },
    }
    act, U0, Ux = ga.enveloping_action(g, xi)
    H, A = act.hopf, Ux.algebra
    ctx = ga.build_context(act, all_ranks=full)
    cs = A.is_central_simple()
    clock.lap("galois")
    report["dims"] = {"A": A.dim, "H": H.dim}
    report["galois"] = {"galois": ctx.galois, "central_simple": cs, "ranks": dict(ctx.ranks)}
    checks.single("theorems", "galois_iff_central_simple", ctx.galois == cs)
    report["observed"] = {"central_simple_iff_beta_nondegenerate": cs == beta_nd}
    if p**H.dim <= GROUPLIKE_GATE:
        report["grouplikes_H"] = len(hc.grouplikes(H))
        checks.single("theorems", "H_has_one_grouplike", report["grouplikes_H"] == 1)
    if not ctx.galois:
        report["not_galois"] = {"beta": beta.tolist(), "beta_nondegenerate": beta_nd}
        report["checks"] = checks.suites
        report["failures"] = checks.failures
        if timings:
            report["timings"] = clock.laps
        return report, EXIT_ASSERTION if checks.failures else EXIT_NOT_GALOIS
    if full:
        checks.add(hc.check_module_algebra(act))
        checks.add(ga.check_mu(ctx))
        checks.add(ga.check_prop33(ctx))

    E = et.compute_E(ctx, verify=full)
    clock.lap("endomorphisms")
    R = hc.tensor_unit(H.algebra)
    Rt, qrep = et.corresponding_R(E, R, verify=full)
    checks.add(qrep, "corresponding_R")
    rank_rt = hc.rank_of(Rt, p)
    order = et.antipode_order(E)
    report["hopf"] = {"dim_E": E.dim, "antipode_order": order, "rank_R_tilde": rank_rt}
    checks.single("theorems", "rank_R_tilde_is_dim_A", rank_rt == A.dim)
    checks.single("theorems", "antipode_order", order == expected_antipode_order(g))
    checks.single("theorems", "S_squared_trivial_iff_unimodular", (order <= 2) == unimodular or n == 0)
    ft = rl.frobenius_trace(g, xi)
    if ft is not None:
        report["frobenius"] = ft
        checks.single("theorems", "trace_of_ad_x_is_half_dim", ft["trace_is_half_dim"])
        checks.single("theorems", "unimodular_frobenius_dim_congruence", ft["congruence_if_unimodular"])
    F, frep = et.f_map(E, Rt)
    checks.add(frep)
    tc = et.theta_checks(E, R, Rt)
    checks.add(tc)
    report["hopf"]["alpha_order"] = tc.details["alpha_order"]
    report["hopf"]["theta_order"] = tc.details["theta_order"]
    if p**E.dim <= GROUPLIKE_GATE:
        report["grouplikes_E"] = len(hc.grouplikes(E.hopf, E.ops, A))
    clock.lap("hopf_structure")
    if full:
        checks.add(et.roundtrip(E, R, Rt))
        checks.add(et.double_twist_check(E, R, Rt))
        checks.add(et.check_dual_action_formula(E, Rt))

    # quantum Lie data on D(g*)
    if n:
        adg = np.stack([g.ad(i) for i in range(n)])
        pair = _paper_pair(spec, g, xi, ctx, Ux, adg) or ql.dual_pair(ctx, adg)
        checks.add(pair.report)
        P = ql.phi_table(E, pair)
        braid, brep = ql.braiding_on_D(E, pair, Rt, P)
        checks.add(brep)
        q, axioms = ql.quantum_bracket(E, pair, g.bracket, Rt, braid)
        checks.add(axioms)
        iota = Ux.generators.T
        phis = E.coords(np.array([ql.phi_operator(A, t, iota) for t in pair.tau.ops]))
        psi = ql.psi_elements(E, pair)
        checks.single("quadratic_relations", "phi_images", ql.quadratic_relations(E, q, phis))
        checks.single("quadratic_relations", "psi_images", ql.quadratic_relations(E, q, psi))
        checks.single("quadratic_relations", "psi_is_pairing_minus_phi", ql.psi_phi_identity(E, pair, iota, psi))
        ups = np.array([fl.solve(F, v, p) for v in phis])
        checks.add(ql.generation_checks(E, psi, phis, ups))
        if full:
            ucalc = ql.verify_upsilon_calculus(E, pair, Rt, F)
            checks.add(ucalc)
            checks.add(ql.harpoon_checks(E, pair, F, ucalc.details["P"]))
            checks.add(ql.commutator_checks(E, q, Rt, F, psi, phis))
        ordinary = ql.ordinary_lie_check(q)
        taus, fnames = _named("tau", n), _named("phi", n)
        M = ql.action_matrices(E, pair.tau)
        acting = np.remainder(np.tensordot(phis, M, axes=([1], [0])), p)
        report["quantum_lie"] = {
            "tau_basis": "worked_tables" if pair.raw_pairing is None else "computed",
            "observed_ordinary_lie": ordinary.ok,
            "bracket_grid": q.gamma.tolist(),
            "bracket": {f"[{taus[i]},{taus[j]}]": linear_combination(q.gamma[i, j], taus, p) for i in range(n) for j in range(n)},
            "braiding_grid": braid.tolist(),
            "braiding": {
                f"{taus[a]} x {taus[b]}": _tensor_string(braid[:, a * n + b], taus, p)
                for a in range(n) for b in range(n)
            },
            "action_grid": acting.tolist(),
            "action": {f"{fnames[s]} {taus[b]}": linear_combination(acting[s][:, b], taus, p) for s in range(n) for b in range(n)},
        }
        fam = spec.parameters.get("family")
        if fam == "example1" and report["quantum_lie"]["tau_basis"] == "worked_tables":
            checks.add(wx.example1_relations(E.hopf, phis), "worked_relations")
        elif fam == "example2" and report["quantum_lie"]["tau_basis"] == "worked_tables":
            checks.add(wx.example2_relations(E.hopf, phis, spec.parameters["a"], spec.parameters["b"]), "worked_relations")
    clock.lap("quantum_lie")
    report["checks"] = checks.suites
    report["failures"] = checks.failures
    if timings:
        report["timings"] = clock.laps
    return report, EXIT_ASSERTION if checks.failures else EXIT_OK


def _tensor_string(col, names, p: int) -> str:
    m = len(names)
    parts = [f"{names[a]} x {names[b]}" for a in range(m) for b in range(m)]
    return linear_combination(col, parts, p)


def check_report(spec: LieSpec) -> tuple[dict, int]:
    g = spec.lie()
    rep = rl.check_restricted(g)
    out = {
        "command": "check",
        "input": {"p": g.p, "dim_g": g.n, "basis": list(g.names)},
        "checks": {rep.title: {k: bool(v) for k, v in rep.checks.items()}},
        "unimodular": rl.is_unimodular(g),
    }
    return out, EXIT_OK if rep.ok else EXIT_ASSERTION


# ---------------------------------------------------------------------------
# xi scans


def scan_one(g: rl.RestrictedLie, H: hc.HopfData, U0, xi, fingerprints: bool = False) -> dict:
    """Beta nondegeneracy, central simplicity and the Galois decision for one form."""
    _, beta_nd = rl.beta_form(g, xi)
    Ux = rl.reduced_enveloping(g, xi, check=False)
    act = hc.adjoint_module(H, U0, Ux.algebra, rl.adjoint_action(Ux, check=False))
    ctx = ga.build_context(act, all_ranks=True)
    row = {"xi": [int(v) for v in xi], "beta_nondegenerate": beta_nd,
           "central_simple": Ux.algebra.is_central_simple(), "galois": ctx.galois}
    if fingerprints and ctx.galois:
        row["fingerprint"] = fingerprint(g, ctx)
    return row


def derived_dims(gamma: np.ndarray, p: int) -> list[int]:
    """Dimensions along the derived series of the bilinear bracket ``gamma``."""
    m = gamma.shape[0]
    cur = fl.Subspace.span(np.eye(m, dtype=np.int64), p, m) if m else None
    dims = [m]
    while cur is not None and cur.dim:
        B = cur.basis
        prods = np.einsum("ia,jb,abl->ijl", B, B, gamma).reshape(-1, m) % p
        nxt = fl.Subspace.span(prods, p, m)
        if nxt.dim == cur.dim:
            break
        dims.append(nxt.dim)
        cur = nxt
    return dims


def fingerprint(g: rl.RestrictedLie, ctx) -> dict:
    """Isomorphism invariants of ``E_xi`` used to compare forms; equal prints do not prove isomorphism."""
    E = et.compute_E(ctx, verify=False)
    out = {"dim_E": E.dim, "antipode_order": et.antipode_order(E)}
    if E.p**E.dim <= GROUPLIKE_GATE:
        out["grouplikes"] = len(hc.grouplikes(E.hopf))
    if g.n:
        Rt, _ = et.corresponding_R(E, hc.tensor_unit(ctx.act.hopf.algebra), verify=False)
        pair = ql.dual_pair(ctx, np.stack([g.ad(i) for i in range(g.n)]))
        q, _ = ql.quantum_bracket(E, pair, g.bracket, Rt)
        out["bracket_derived_dims"] = derived_dims(q.gamma, g.p)
    return out


def scan_forms(g: rl.RestrictedLie, forms: list, jobs: int = 1, fingerprints: bool = False) -> list[dict]:
    """Evaluate every form; partitions run on worker threads and merge in input order."""
    H, U0 = hc.u0_hopf(g)
    jobs = max(1, int(jobs))
    chunks = [forms[k::jobs] for k in range(jobs)]

    def work(chunk):
        return [scan_one(g, H, U0, xi, fingerprints) for xi in chunk]

    if jobs == 1:
        parts = [work(forms)]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(work, chunks))
    rows = [r for part in parts for r in part]
    return sorted(rows, key=lambda r: r["xi"])


def scan_report(spec: LieSpec, exhaustive: bool = True, samples: int = 0, seed: int = 0, jobs: int = 1,
                fingerprints: bool = False) -> tuple[dict, int]:
    g = spec.lie()
    p, n = g.p, g.n
    if exhaustive:
        if p**n > SCAN_GATE:
            raise InputError(f"exhaustive scan needs p^n <= {SCAN_GATE}, got {p}^{n}")
        forms = [list(x) for x in itertools.product(range(p), repeat=n)]
    else:
        rng = np.random.default_rng(seed)
        forms = sorted({tuple(int(v) for v in rng.integers(0, p, n)) for _ in range(samples)})
        forms = [list(x) for x in forms]
    rows = scan_forms(g, forms, jobs, fingerprints)
    total = len(rows)
    cs = sum(r["central_simple"] for r in rows)
    agree_galois = sum(r["central_simple"] == r["galois"] for r in rows)
    agree_beta = sum(r["central_simple"] == r["beta_nondegenerate"] for r in rows)
    out = {
        "command": "scan",
        "input": {"p": p, "dim_g": n, "mode": "exhaustive" if exhaustive else f"sample {samples}", "seed": None if exhaustive else seed},
        "forms": total,
        "central_simple": cs,
        "galois": sum(r["galois"] for r in rows),
        "beta_nondegenerate": sum(r["beta_nondegenerate"] for r in rows),
        "agreement_galois_central_simple": _percent(agree_galois, total),
        "observed_agreement_beta_central_simple": _percent(agree_beta, total),
        "rows": rows,
    }
    if fingerprints:
        prints = {json.dumps(r["fingerprint"], sort_keys=True) for r in rows if "fingerprint" in r}
        out["observed_distinct_fingerprints"] = len(prints)
    out["checks"] = {"theorems": {"galois_iff_central_simple": agree_galois == total}}
    return out, EXIT_OK if agree_galois == total else EXIT_ASSERTION


def _percent(k: int, total: int) -> float:
    return 100.0 if total == 0 else round(100.0 * k / total, 2)


# ---------------------------------------------------------------------------
# text rendering


def render_text(report: dict) -> str:
    lines = []

    def walk(obj, indent=0):
        pad = "  " * indent
        for key, val in obj.items():
            if isinstance(val, dict):
                lines.append(f"{pad}{key}:")
                walk(val, indent + 1)
            elif key == "rows":
                lines.append(f"{pad}{key}:")
                for r in val:
                    lines.append(f"{pad}  xi={r['xi']} beta={int(r['beta_nondegenerate'])} "
                                 f"cs={int(r['central_simple'])} galois={int(r['galois'])}")
            else:
                lines.append(f"{pad}{key}: {json.dumps(val)}")

    walk(report)
    return "\n".join(lines) + "\n"


def emit(report: dict, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(report, indent=2) + "\n")
    else:
        stream.write(render_text(report))


# ---------------------------------------------------------------------------
# argument parsing


def _xi_arg(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad xi {text!r}: expected comma-separated integers") from exc


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    parser = argparse.ArgumentParser(prog="hopfgalois", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="validate a Lie algebra file")
    c.add_argument("file")
    b = sub.add_parser("build", parents=[common], help="run the full pipeline for one form xi")
    b.add_argument("file")
    b.add_argument("--xi", type=_xi_arg)
    b.add_argument("--verify", choices=("full", "fast"), default="full")
    b.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte determinism)")
    s = sub.add_parser("scan", parents=[common], help="decide central simplicity over many forms xi")
    s.add_argument("file")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--samples", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--fingerprints", action="store_true", help="isomorphism invariants of E for each Galois form")
    f = sub.add_parser("fixture", parents=[common], help="print a bundled Lie algebra file")
    f.add_argument("name", choices=FIXTURES)
    f.add_argument("--p", type=int, default=3)
    f.add_argument("--a", type=int, default=1)
    f.add_argument("--b", type=int, default=1)
    f.add_argument("--n", type=int, default=2, help="dimension of the abelian fixture")
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.command == "fixture":
            spec = fixture_spec(args.name, args.p, args.a, args.b, args.n)
            if args.format == "json":
                sys.stdout.write(json.dumps(spec.as_dict(), indent=2) + "\n")
            else:
                sys.stdout.write(render_toml(spec))
            return EXIT_OK
        spec = load_spec(args.file)
        if args.command == "check":
            report, code = check_report(spec)
        elif args.command == "build":
            report, code = build_report(spec, args.xi, args.verify, args.timings)
        else:
            report, code = scan_report(spec, exhaustive=args.samples is None, samples=args.samples or 0,
                                       seed=args.seed, jobs=args.jobs, fingerprints=args.fingerprints)
    except InputError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    emit(report, args.format)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
